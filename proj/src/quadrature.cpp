#include "bergman/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/parallel.hpp"
#include "bergman/sampling.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radical-inverse of index in the given base.
double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, value = 0.0;
  while (index > 0) {
    f /= base;
    value += f * static_cast<double>(index % base);
    index /= base;
  }
  return value;
}

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

std::string format_node(const CVector& z) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (i) os << ", ";
    os << z(i).real() << (z(i).imag() < 0 ? "" : "+") << z(i).imag() << "i";
  }
  os << ")";
  return os.str();
}

void require_spec(const RuleSpec& spec) {
  if (spec.dim < 1) throw DomainError("quadrature dimension must be >= 1");
  if (spec.radial_points < 1) throw DomainError("radial_points must be >= 1");
  if (spec.angular_points < 1) throw DomainError("angular_points must be >= 1");
}

}  // namespace

GaussLegendre gauss_legendre(int points, double lo, double hi) {
  if (points < 1) throw DomainError("Gauss-Legendre needs at least one point");
  GaussLegendre g;
  g.nodes.assign(points, 0.0);
  g.weights.assign(points, 0.0);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const int m = (points + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = points * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = mid - half * x;
    g.nodes[points - 1 - i] = mid + half * x;
    g.weights[i] = g.weights[points - 1 - i] = half * w;
  }
  return g;
}

QuadratureRule build_rule(const RuleSpec& spec) {
  require_spec(spec);
  const int n = spec.dim;
  QuadratureRule rule;
  rule.spec = spec;
  rule.dim = n;

  // Radial part in t = |z|^2: d nu = n t^{n-1} dt d sigma.
  const GaussLegendre radial = gauss_legendre(spec.radial_points);
  std::vector<double> rw(radial.weights.size());
  for (std::size_t i = 0; i < rw.size(); ++i)
    rw[i] = radial.weights[i] * n * std::pow(radial.nodes[i], n - 1);

  const int K = spec.angular_points;
  if (n == 1) {
    const Eigen::Index count = static_cast<Eigen::Index>(rw.size()) * K;
    rule.nodes.resize(1, count);
    rule.weights.resize(count);
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) {
      const double rho = std::sqrt(radial.nodes[i]);
      for (int k = 0; k < K; ++k, ++c) {
        rule.nodes(0, c) = std::polar(rho, kTwoPi * k / K);
        rule.weights(c) = rw[i] / K;
      }
    }
    rule.exactness_degree = std::min(2 * spec.radial_points - 1, K - 1);
    rule.construction = "gauss-legendre(t) x uniform-angle";
  } else if (n == 2) {
    const GaussLegendre hopf = gauss_legendre(spec.radial_points);
    const Eigen::Index count = static_cast<Eigen::Index>(rw.size() * hopf.nodes.size()) * K * K;
    rule.nodes.resize(2, count);
    rule.weights.resize(count);
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) {
      const double rho = std::sqrt(radial.nodes[i]);
      for (std::size_t j = 0; j < hopf.nodes.size(); ++j) {
        const double a = rho * std::sqrt(hopf.nodes[j]);
        const double b = rho * std::sqrt(1.0 - hopf.nodes[j]);
        const double w = rw[i] * hopf.weights[j] / (static_cast<double>(K) * K);
        for (int k1 = 0; k1 < K; ++k1) {
          const cplx p1 = std::polar(a, kTwoPi * k1 / K);
          for (int k2 = 0; k2 < K; ++k2, ++c) {
            rule.nodes(0, c) = p1;
            rule.nodes(1, c) = std::polar(b, kTwoPi * k2 / K);
            rule.weights(c) = w;
          }
        }
      }
    }
    // t^{|a|} carries the extra factor t from the weight, hence 2p - 2.
    rule.exactness_degree = std::min({2 * spec.radial_points - 2, 2 * spec.radial_points - 1, K - 1});
    rule.construction = "gauss-legendre(t) x hopf(gauss-legendre(|xi1|^2) x uniform phases)";
  } else {
    if (n > static_cast<int>(std::size(kPrimes)) / 2)
      throw DomainError("sampled sphere rule supports n <= 15");
    Rng shift_rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> shift(2 * n);
    for (double& s : shift) s = unif(shift_rng);

    CMatrix sphere(n, K);
    for (int k = 0; k < K; ++k) {
      std::vector<double> e(n);
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        double u = std::fmod(halton(k + 1, kPrimes[i]) + shift[i], 1.0);
        u = std::max(u, 1e-300);
        e[i] = -std::log(u);
        total += e[i];
      }
      for (int i = 0; i < n; ++i) {
        const double phase = std::fmod(halton(k + 1, kPrimes[n + i]) + shift[n + i], 1.0);
        sphere(i, k) = std::polar(std::sqrt(e[i] / total), kTwoPi * phase);
      }
    }
    const Eigen::Index count = static_cast<Eigen::Index>(rw.size()) * K;
    rule.nodes.resize(n, count);
    rule.weights.resize(count);
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < rw.size(); ++i) {
      const double rho = std::sqrt(radial.nodes[i]);
      for (int k = 0; k < K; ++k, ++c) {
        rule.nodes.col(c) = rho * sphere.col(k);
        rule.weights(c) = rw[i] / K;
      }
    }
    rule.exactness_degree = 0;
    rule.sampled = true;
    rule.construction = "gauss-legendre(t) x shifted-halton sphere";
    rule.warnings.push_back("no deterministic sphere rule for n >= 3; sphere part is quasi-random");
  }
  return rule;
}

QuadratureRule restrict_to_ball(const QuadratureRule& rule, double radius) {
  if (!(radius > 0.0 && radius <= 1.0)) throw DomainError("restriction radius must lie in (0,1]");
  if (rule.pullback_center || rule.radius != 1.0)
    throw DomainError("restrict_to_ball expects a full-ball rule");
  QuadratureRule out = rule;
  out.nodes *= radius;
  out.weights *= std::pow(radius, 2 * rule.dim);
  out.radius = radius;
  return out;
}

QuadratureRule pullback(const QuadratureRule& rule, const BallPoint& a) {
  if (a.dim() != rule.dim) throw DomainError("pullback point has wrong dimension");
  if (rule.pullback_center) throw DomainError("rule is already pulled back");
  QuadratureRule out = rule;
  const CVector& ac = a.coords();
  const double one_minus = 1.0 - a.norm2();
  parallel_for(static_cast<std::size_t>(rule.size()), [&](std::size_t i) {
    const auto c = static_cast<Eigen::Index>(i);
    const CVector u = rule.nodes.col(c);
    const double jac = std::pow(one_minus / std::norm(1.0 - inner(u, ac)), rule.dim + 1);
    out.nodes.col(c) = moebius_raw(ac, u);
    out.weights(c) = rule.weights(c) * jac;
  });
  out.pullback_center = ac;
  out.exactness_degree = 0;
  return out;
}

CVector evaluate_at_nodes(const BallFunction& f, const QuadratureRule& rule) {
  CVector values(rule.size());
  parallel_for(static_cast<std::size_t>(rule.size()), [&](std::size_t i) {
    const auto c = static_cast<Eigen::Index>(i);
    values(c) = f(rule.nodes.col(c));
  });
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values(i).real()) || !std::isfinite(values(i).imag()))
      throw NumericalError("non-finite integrand value at node " + std::to_string(i) + " " +
                           format_node(rule.nodes.col(i)));
  }
  return values;
}

cplx weighted_sum(const CVector& values, const QuadratureRule& rule) {
  if (values.size() != rule.size()) throw DomainError("value count does not match rule size");
  std::vector<cplx> terms(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i)
    terms[static_cast<std::size_t>(i)] = rule.weights(i) * values(i);
  return pairwise_sum(std::span<const cplx>(terms));
}

cplx integrate(const BallFunction& f, const QuadratureRule& rule) {
  return weighted_sum(evaluate_at_nodes(f, rule), rule);
}

nlohmann::json rule_metadata(const QuadratureRule& rule) {
  nlohmann::json j;
  j["dimension"] = rule.dim;
  j["radial_points"] = rule.spec.radial_points;
  j["angular_points"] = rule.spec.angular_points;
  j["seed"] = rule.spec.seed;
  j["node_count"] = rule.size();
  j["exactness_degree"] = rule.exactness_degree;
  j["sampled"] = rule.sampled;
  j["radius"] = rule.radius;
  j["pulled_back"] = rule.pullback_center.has_value();
  j["construction"] = rule.construction;
  j["warnings"] = rule.warnings;
  return j;
}

}  // namespace bergman
