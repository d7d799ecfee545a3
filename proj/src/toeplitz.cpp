#include "bergman/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/parallel.hpp"

namespace bergman {

namespace {

constexpr int kMomentPoints = 64;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_profile(const RadialProfile& g) {
  if (!g.value) throw DomainError("radial profile has no value function");
  if (!(g.support > 0.0 && g.support <= 1.0)) throw DomainError("profile support must lie in (0,1]");
  if (!(g.sup >= 0.0) || !std::isfinite(g.sup)) throw DomainError("profile sup bound must be finite");
}

void require_same_basis(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.basis != b.basis || a.m.rows() != b.m.rows()) throw DomainError("operators on different bases");
}

}  // namespace

Symbol Symbol::constant(cplx c) {
  std::ostringstream os;
  os << "const(" << c.real() << "," << c.imag() << ")";
  return Symbol(Const{c}, std::abs(c), os.str(), std::nullopt);
}

Symbol Symbol::radial(RadialProfile g, std::string name) {
  require_profile(g);
  const double sup = g.sup;
  std::optional<double> support;
  if (g.support < 1.0) support = g.support;
  return Symbol(Rad{std::move(g)}, sup, std::move(name), support);
}

Symbol Symbol::monomial_radial(int coordinate, RadialProfile g, std::string name) {
  require_profile(g);
  if (coordinate < 0) throw DomainError("coordinate index must be >= 0");
  // |z_j| < support on the support of g.
  const double sup = g.sup * g.support;
  std::optional<double> support;
  if (g.support < 1.0) support = g.support;
  return Symbol(MonoRad{coordinate, std::move(g)}, sup, std::move(name), support);
}

Symbol Symbol::region(std::function<bool(const CVector&)> member, std::string name,
                      std::optional<double> support_radius) {
  if (!member) throw DomainError("region symbol needs a membership test");
  return Symbol(Region{std::move(member)}, 1.0, std::move(name), support_radius);
}

Symbol Symbol::sampled(BallFunction f, double sup_bound, std::string name,
                       std::optional<double> support_radius) {
  if (!f) throw DomainError("sampled symbol needs an evaluation function");
  if (!(sup_bound >= 0.0) || !std::isfinite(sup_bound))
    throw DomainError("sampled symbol needs a finite sup bound");
  return Symbol(Samp{std::move(f)}, sup_bound, std::move(name), support_radius);
}

Symbol::Kind Symbol::kind() const {
  return std::visit(overloaded{[](const Const&) { return Kind::Constant; },
                               [](const Rad&) { return Kind::Radial; },
                               [](const MonoRad&) { return Kind::MonomialRadial; },
                               [](const Region&) { return Kind::Region; },
                               [](const Samp&) { return Kind::Sampled; }},
                    repr_);
}

cplx Symbol::base(const CVector& z) const {
  return std::visit(
      overloaded{[](const Const& c) { return c.c; },
                 [&](const Rad& r) {
                   const double rho = z.norm();
                   return rho < r.g.support ? cplx(r.g.value(rho)) : cplx(0.0);
                 },
                 [&](const MonoRad& r) {
                   if (r.j >= z.size()) throw DomainError("monomial coordinate exceeds dimension");
                   const double rho = z.norm();
                   return rho < r.g.support ? z(r.j) * r.g.value(rho) : cplx(0.0);
                 },
                 [&](const Region& r) { return r.member(z) ? cplx(1.0) : cplx(0.0); },
                 [&](const Samp& s) { return s.f(z); }},
      repr_);
}

cplx Symbol::operator()(const CVector& z) const {
  const cplx v = compose_ ? base(moebius_raw(*compose_, z)) : base(z);
  return conj_ ? std::conj(v) : v;
}

Symbol Symbol::conj() const {
  Symbol s = *this;
  s.conj_ = !conj_;
  return s;
}

Symbol Symbol::composed_with(const BallPoint& a) const {
  if (compose_) throw DomainError("symbol is already composed with an automorphism");
  Symbol s = *this;
  s.compose_ = a.coords();
  return s;
}

std::string Symbol::name() const {
  std::string out = compose_ ? name_ + " o phi" : name_;
  return conj_ ? "conj(" + out + ")" : out;
}

const RadialProfile* Symbol::profile() const {
  if (auto* r = std::get_if<Rad>(&repr_)) return &r->g;
  if (auto* r = std::get_if<MonoRad>(&repr_)) return &r->g;
  return nullptr;
}

int Symbol::coordinate() const {
  if (auto* r = std::get_if<MonoRad>(&repr_)) return r->j;
  throw DomainError("symbol is not of monomial-times-radial type");
}

double radial_moment(const RadialProfile& g, int n, int k) {
  require_profile(g);
  // Integrated in rho rather than t = rho^2: g(sqrt t) is not smooth at t = 0
  // unless g is even. Pieces split where the profile is not smooth.
  std::vector<double> cuts{0.0};
  for (double b : g.breakpoints)
    if (b > 0.0 && b < g.support) cuts.push_back(b);
  cuts.push_back(g.support);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> terms;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const GaussLegendre gl = gauss_legendre(kMomentPoints, cuts[p], cuts[p + 1]);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double rho = gl.nodes[i];
      terms.push_back(2.0 * gl.weights[i] * std::pow(rho, 2 * (n + k) - 1) * g.value(rho));
    }
  }
  const double v = (n + k) * pairwise_sum(std::span<const double>(terms));
  if (!std::isfinite(v)) throw NumericalError("non-finite radial moment at degree " + std::to_string(k));
  return v;
}

QuadratureRule adapted_rule(const Symbol& f, const QuadratureRule& rule) {
  QuadratureRule out = rule;
  if (f.support_radius() && *f.support_radius() < 1.0) out = restrict_to_ball(rule, *f.support_radius());
  if (f.composition_point()) out = pullback(out, BallPoint::from(*f.composition_point()));
  return out;
}

OperatorMatrix toeplitz_on_nodes(const Symbol& f, const BasisPtr& basis, const QuadratureRule& rule,
                                 const CMatrix& E) {
  CVector values = evaluate_at_nodes([&f](const CVector& z) { return f(z); }, rule);
  const double limit = f.sup_norm_bound() * (1.0 + 1e-12) + 1e-300;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i)) > limit)
      throw DomainError("symbol '" + f.name() + "' exceeds its declared sup bound at node " +
                        std::to_string(i));
  }
  const CVector wf = rule.weights.cast<cplx>().cwiseProduct(values);
  OperatorMatrix out{basis, E.conjugate() * wf.asDiagonal() * E.transpose(), {}};
  if (rule.exactness_degree < basis->degree() && !rule.pullback_center)
    out.warnings.push_back("rule exactness " + std::to_string(rule.exactness_degree) +
                           " is below the basis degree " + std::to_string(basis->degree()));
  return out;
}

OperatorMatrix toeplitz_generic(const Symbol& f, const BasisPtr& basis, const QuadratureRule& rule) {
  const QuadratureRule adapted = adapted_rule(f, rule);
  return toeplitz_on_nodes(f, basis, adapted, basis->evaluate_at_nodes(adapted));
}

OperatorMatrix toeplitz_radial(const RadialProfile& g, const BasisPtr& basis) {
  const int n = basis->dim();
  std::vector<double> moments(basis->degree() + 1);
  for (int k = 0; k <= basis->degree(); ++k) moments[k] = radial_moment(g, n, k);
  CMatrix m = CMatrix::Zero(basis->size(), basis->size());
  for (Eigen::Index k = 0; k < basis->size(); ++k) m(k, k) = moments[basis->degree_of(k)];
  return {basis, std::move(m), {}};
}

OperatorMatrix toeplitz_monomial_radial(int j, bool conjugate, const RadialProfile& g,
                                        const BasisPtr& basis) {
  const int n = basis->dim();
  if (j < 0 || j >= n) throw DomainError("monomial coordinate exceeds dimension");
  std::vector<double> moments(basis->degree() + 1);
  for (int k = 1; k <= basis->degree(); ++k) moments[k] = radial_moment(g, n, k);
  CMatrix m = CMatrix::Zero(basis->size(), basis->size());
  for (Eigen::Index a = 0; a < basis->size(); ++a) {
    MultiIndex beta = basis->index(a);
    beta[j] += 1;
    const auto b = basis->position(beta);
    if (!b) continue;
    // <z_j g e_alpha, e_beta> with beta = alpha + e_j.
    const double v = moments[basis->degree_of(*b)] * basis->norm(*b) / basis->norm(a);
    if (conjugate)
      m(a, *b) = v;
    else
      m(*b, a) = v;
  }
  return {basis, std::move(m), {}};
}

OperatorMatrix toeplitz_matrix(const Symbol& f, const BasisPtr& basis, const QuadratureRule& rule) {
  if (rule.dim != basis->dim()) throw DomainError("rule dimension does not match basis");
  if (!f.composition_point()) {
    switch (f.kind()) {
      case Symbol::Kind::Constant: {
        const cplx c = f(CVector::Zero(basis->dim()));
        return {basis, c * CMatrix::Identity(basis->size(), basis->size()), {}};
      }
      case Symbol::Kind::Radial:
        return toeplitz_radial(*f.profile(), basis);
      case Symbol::Kind::MonomialRadial:
        return toeplitz_monomial_radial(f.coordinate(), f.conjugated(), *f.profile(), basis);
      default:
        break;
    }
  }
  return toeplitz_generic(f, basis, rule);
}

OperatorMatrix identity_operator(const BasisPtr& basis) {
  return {basis, CMatrix::Identity(basis->size(), basis->size()), {}};
}

OperatorMatrix product(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a, b);
  return {a.basis, a.m * b.m, {}};
}

OperatorMatrix adjoint(const OperatorMatrix& a) { return {a.basis, a.m.adjoint(), {}}; }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_basis(a, b);
  return {a.basis, a.m * b.m - b.m * a.m, {}};
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (!a.allFinite()) throw NumericalError("operator norm of a matrix with non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double op_norm(const OperatorMatrix& a) { return op_norm(a.m); }

std::string to_csv(const OperatorMatrix& a) {
  std::ostringstream os;
  os.precision(17);
  os << "row";
  for (Eigen::Index c = 0; c < a.m.cols(); ++c) os << ",re_" << c << ",im_" << c;
  os << "\n";
  for (Eigen::Index r = 0; r < a.m.rows(); ++r) {
    os << r;
    for (Eigen::Index c = 0; c < a.m.cols(); ++c) os << "," << a.m(r, c).real() << "," << a.m(r, c).imag();
    os << "\n";
  }
  return os.str();
}

nlohmann::json to_json(const OperatorMatrix& a) {
  nlohmann::json j;
  j["rows"] = a.m.rows();
  j["cols"] = a.m.cols();
  auto& e = j["entries"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < a.m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < a.m.cols(); ++c) row.push_back({a.m(r, c).real(), a.m(r, c).imag()});
    e.push_back(std::move(row));
  }
  if (!a.warnings.empty()) j["warnings"] = a.warnings;
  return j;
}

}  // namespace bergman
