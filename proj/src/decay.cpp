#include <cmath>
#include <limits>

#include "bergman/ideal_witness.hpp"

namespace bergman {

double Prop1Config::cutoff(const CVector& z) const {
  if (F.empty()) return 0.0;
  const double dist = distance_to_set(F, z);
  const double inner_r = eps / 3.0, outer_r = eps / 2.0;
  if (dist <= inner_r) return 1.0;
  if (dist >= outer_r) return 0.0;
  return (outer_r - dist) / (outer_r - inner_r);
}

Prop1Config make_prop1_config(const SphereSet& F, double eps, const QuadratureRule& rule, std::uint64_t seed,
                              int pairs) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive");
  if (pairs < 1) throw DomainError("delta sampling needs at least one pair");
  Prop1Config cfg;
  cfg.F = F;
  cfg.eps = eps;
  if (F.empty()) return cfg;  // V_2 is empty: eta = 0 and the bound vanishes.

  double nu = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i)
    if (distance_to_set(F, rule.nodes.col(i)) < eps / 2.0) nu += rule.weights(i);
  cfg.nu_V2 = nu;

  // z in V_2, w in the closed ball outside V_3; half of the w on the sphere.
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    const SpherePoint& p = F.points[static_cast<std::size_t>(i) % F.points.size()];
    const CVector z = sample_near(rng, p.coords(), eps / 2.0).coords();
    CVector w;
    do {
      w = (i % 2 == 0) ? sample_sphere(rng, F.dim) : sample_ball(rng, F.dim);
    } while (distance_to_set(F, w) < eps);
    best = std::min(best, std::abs(1.0 - inner(z, w)));
  }
  cfg.delta = 0.5 * best;
  cfg.delta_floor = eps * eps / 8.0;
  cfg.delta_pairs = pairs;
  return cfg;
}

IdealPanel ideal_panel(const SphereSet& F, double r) {
  IdealPanel panel;
  RadialProfile ind;
  ind.value = [](double) { return 1.0; };
  ind.support = r;
  ind.sup = 1.0;
  panel.symbols.push_back(Symbol::radial(ind, "indicator(|z|<r)"));
  panel.symbols.push_back(Symbol::radial(witness_profile(r), "(1-|z|^2/r^2)+"));
  panel.symbols.push_back(witness_symbol(r));
  if (!F.empty()) {
    panel.symbols.push_back(
        Symbol::region([F, r](const CVector& z) { return in_region_W_raw(F, r, z); }, "indicator(W_F)"));
    panel.symbols.push_back(Symbol::sampled(
        [F, r](const CVector& z) { return cplx(std::max(0.0, 1.0 - region_distance(F, z) / r)); }, 1.0,
        "(1-D_F(z)/r)+"));
  }
  const int count = static_cast<int>(panel.symbols.size());
  for (int len = 1; len <= 3; ++len)
    for (int i = 0; i + len <= count; ++i) {
      std::vector<int> chain;
      for (int j = 0; j < len; ++j) chain.push_back(i + j);
      panel.products.push_back(chain);
    }
  return panel;
}

double ideal_action_norm(const std::vector<OperatorMatrix>& factors, const CVector& symbol_values,
                         const QuadratureRule& inner_rule, const CMatrix& inner_basis_values,
                         const BallFunction& uh) {
  const CVector values = symbol_values.cwiseProduct(evaluate_at_nodes(uh, inner_rule));
  CVector v = project_values(values, inner_basis_values, inner_rule);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) v = it->m * v;
  return v.norm();
}

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t N = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < N; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= N;
  my /= N;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

std::string product_label(const IdealPanel& panel, const std::vector<int>& chain) {
  std::string s;
  for (int i : chain) s += (s.empty() ? "T[" : " T[") + panel.symbols[static_cast<std::size_t>(i)].name() + "]";
  return s;
}

}  // namespace

Prop1Report prop1_decay(const IdealPanel& panel, const SeparatedSequence& seq, const Expansion& h,
                        const Prop1Config& cfg, const BasisPtr& basis, const QuadratureRule& rule,
                        double decay_target, double slope_tolerance) {
  const int n = basis->dim();
  if (rule.dim != n || seq.zeta.dim() != n || cfg.F.dim != n) throw DomainError("dimension mismatch");
  const int M = seq.size();
  for (int m = 0; m < M; ++m) {
    if (distance_to_set(cfg.F, seq.point(m).coords()) < cfg.eps)
      throw DomainError("sequence point " + std::to_string(m + 1) + " lies within eps of F");
  }

  Prop1Report rep;
  rep.h_sup = expansion_sup_bound(h);
  rep.slope_target = 0.5 * (n + 1);

  const std::size_t P = panel.symbols.size();
  std::vector<OperatorMatrix> mats;
  std::vector<QuadratureRule> rules;
  std::vector<CMatrix> values;
  std::vector<CVector> symbol_values;
  for (std::size_t i = 0; i < P; ++i) {
    const Symbol& g = panel.symbols[i];
    mats.push_back(toeplitz_matrix(g, basis, rule));
    rules.push_back(adapted_rule(g, rule));
    values.push_back(basis->evaluate_at_nodes(rules.back()));
    symbol_values.push_back(evaluate_at_nodes([&g](const CVector& z) { return g(z); }, rules.back()));
  }
  CVector cutoff_values = CVector::Zero(rule.size());
  if (!cfg.F.empty())
    cutoff_values = evaluate_at_nodes([&cfg](const CVector& z) { return cplx(cfg.cutoff(z)); }, rule);
  const CMatrix full_values = basis->evaluate_at_nodes(rule);

  for (const auto& chain : panel.products) {
    DecayCurve c;
    c.label = product_label(panel, chain);
    c.factors = chain;
    CMatrix prod = CMatrix::Identity(basis->size(), basis->size());
    for (int i : chain) prod = prod * mats[static_cast<std::size_t>(i)].m;
    c.op_norm = op_norm(prod);
    rep.curves.push_back(std::move(c));
  }

  for (int m = 0; m < M; ++m) {
    const double omn2 = seq.gaps[static_cast<std::size_t>(m)] * (2.0 - seq.gaps[static_cast<std::size_t>(m)]);
    const CVector a = seq.point(m).coords();
    const BallFunction uh = unitary_image(h, a, omn2);
    rep.one_minus_norm2.push_back(omn2);
    for (auto& c : rep.curves) {
      std::vector<OperatorMatrix> outer;
      for (std::size_t j = 0; j + 1 < c.factors.size(); ++j) outer.push_back(mats[static_cast<std::size_t>(c.factors[j])]);
      const auto last = static_cast<std::size_t>(c.factors.back());
      c.norms.push_back(ideal_action_norm(outer, symbol_values[last], rules[last], values[last], uh));
    }
    double cut = 0.0;
    if (!cfg.F.empty()) {
      const CVector vals = cutoff_values.cwiseProduct(evaluate_at_nodes(uh, rule));
      cut = project_values(vals, full_values, rule).norm();
    }
    rep.cutoff_norms.push_back(cut);
    rep.bound_factor.push_back(std::pow(omn2, 0.5 * (n + 1)));
    rep.cutoff_bounds.push_back(rep.h_sup * std::sqrt(cfg.nu_V2) * rep.bound_factor.back() /
                                std::pow(cfg.delta, n + 1));
  }

  rep.decay_ok = true;
  for (auto& c : rep.curves) {
    c.final_ratio = c.norms.front() > 0.0 ? c.norms.back() / c.norms.front() : 0.0;
    c.decays = c.final_ratio < decay_target;
    if (!c.decays) {
      rep.decay_ok = false;
      rep.failures.push_back(c.label + ": final/initial = " + std::to_string(c.final_ratio));
    }
  }
  rep.bound_ok = true;
  for (int m = 0; m < M; ++m) {
    const double slack = 1e-14 + 1e-8 * rep.cutoff_bounds[static_cast<std::size_t>(m)];
    if (rep.cutoff_norms[static_cast<std::size_t>(m)] > rep.cutoff_bounds[static_cast<std::size_t>(m)] + slack) {
      rep.bound_ok = false;
      rep.failures.push_back("cutoff bound violated at m=" + std::to_string(m + 1));
    }
  }
  rep.slope = M >= 2 ? loglog_slope(rep.one_minus_norm2, rep.bound_factor) : rep.slope_target;
  rep.slope_ok = std::abs(rep.slope - rep.slope_target) <= slope_tolerance * rep.slope_target;
  if (!rep.slope_ok) rep.failures.push_back("bound slope " + std::to_string(rep.slope) + " off target");
  return rep;
}

}  // namespace bergman
