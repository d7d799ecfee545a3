#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bergman/bergman_space.hpp"

namespace bergman {

/// g(|z|) for a radial symbol.
struct RadialProfile {
  std::function<double(double)> value;
  double support = 1.0;             ///< g vanishes for |z| >= support
  std::vector<double> breakpoints;  ///< radii inside the support where g is not smooth
  double sup = 1.0;                 ///< declared bound for |g|
};

/// A bounded symbol on the ball. Every symbol may be conjugated and composed
/// with a Möbius involution; evaluation applies phi_a first, then conjugation.
class Symbol {
 public:
  enum class Kind { Constant, Radial, MonomialRadial, Region, Sampled };

  static Symbol constant(cplx c);
  static Symbol radial(RadialProfile g, std::string name);
  /// z_j g(|z|)
  static Symbol monomial_radial(int coordinate, RadialProfile g, std::string name);
  /// Indicator of a region given by a membership test.
  static Symbol region(std::function<bool(const CVector&)> member, std::string name,
                       std::optional<double> support_radius = std::nullopt);
  static Symbol sampled(BallFunction f, double sup_bound, std::string name,
                        std::optional<double> support_radius = std::nullopt);

  Kind kind() const;
  cplx operator()(const CVector& z) const;
  Symbol conj() const;
  /// f o phi_a. Composition is only allowed once.
  Symbol composed_with(const BallPoint& a) const;

  double sup_norm_bound() const { return sup_; }
  std::string name() const;
  /// Radius R with f = 0 off B(0, R) before composition, when known.
  std::optional<double> support_radius() const { return support_; }
  const std::optional<CVector>& composition_point() const { return compose_; }
  bool conjugated() const { return conj_; }
  /// Radial profile for Radial and MonomialRadial symbols.
  const RadialProfile* profile() const;
  /// Coordinate j of a MonomialRadial symbol.
  int coordinate() const;

 private:
  struct Const {
    cplx c;
  };
  struct Rad {
    RadialProfile g;
  };
  struct MonoRad {
    int j;
    RadialProfile g;
  };
  struct Region {
    std::function<bool(const CVector&)> member;
  };
  struct Samp {
    BallFunction f;
  };
  using Repr = std::variant<Const, Rad, MonoRad, Region, Samp>;

  Symbol(Repr repr, double sup, std::string name, std::optional<double> support)
      : repr_(std::move(repr)), sup_(sup), name_(std::move(name)), support_(support) {}

  cplx base(const CVector& z) const;

  Repr repr_;
  double sup_;
  std::string name_;
  std::optional<double> support_;
  std::optional<CVector> compose_;
  bool conj_ = false;
};

/// Dense compression of an operator to a truncated basis.
struct OperatorMatrix {
  BasisPtr basis;
  CMatrix m;
  std::vector<std::string> warnings;
};

/// (n + k) * integral_0^1 t^{n-1+k} g(sqrt t) dt: the diagonal entry of T_g on
/// a monomial of degree k. Evaluated in rho = sqrt t.
double radial_moment(const RadialProfile& g, int n, int k);

/// The rule restricted (and pulled back) to the known support of the symbol.
QuadratureRule adapted_rule(const Symbol& f, const QuadratureRule& rule);

/// Entries <f e_alpha, e_beta>; uses the closed forms for uncomposed radial and
/// monomial-times-radial symbols and quadrature otherwise.
OperatorMatrix toeplitz_matrix(const Symbol& f, const BasisPtr& basis, const QuadratureRule& rule);
/// Always quadrature, on the support-adapted rule.
OperatorMatrix toeplitz_generic(const Symbol& f, const BasisPtr& basis, const QuadratureRule& rule);
/// Generic path with precomputed basis values at the rule nodes (rule unchanged).
OperatorMatrix toeplitz_on_nodes(const Symbol& f, const BasisPtr& basis, const QuadratureRule& rule,
                                 const CMatrix& basis_at_nodes);
OperatorMatrix toeplitz_radial(const RadialProfile& g, const BasisPtr& basis);
/// z_j g(|z|), or its conjugate, as a single off-diagonal band.
OperatorMatrix toeplitz_monomial_radial(int j, bool conjugate, const RadialProfile& g,
                                        const BasisPtr& basis);

OperatorMatrix identity_operator(const BasisPtr& basis);
OperatorMatrix product(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix adjoint(const OperatorMatrix& a);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Largest singular value.
double op_norm(const CMatrix& a);
double op_norm(const OperatorMatrix& a);

/// Rows of "re,im" pairs, full precision.
std::string to_csv(const OperatorMatrix& a);
nlohmann::json to_json(const OperatorMatrix& a);

}  // namespace bergman
