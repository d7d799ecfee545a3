#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/sampling.hpp"
#include "bergman/unitaries.hpp"

namespace bergman {

// ---------------------------------------------------------------- regions

/// A finite (hence closed) subset of the sphere; may be empty.
struct SphereSet {
  int dim = 1;
  std::vector<SpherePoint> points;

  bool empty() const { return points.empty(); }
};

/// Euclidean distance from z to the set (infinity for the empty set).
double distance_to_set(const SphereSet& F, const CVector& z);

/// inf over t in [0, 1) of rho(z, t zeta), by golden-section search.
double ray_infimum(const CVector& z, const SpherePoint& zeta);

/// min over zeta in F of ray_infimum; |z| = rho(z, 0) for the empty set.
double region_distance(const SphereSet& F, const CVector& z);

/// Membership in W_F, the union of E(t zeta, r) over t in (0,1) and zeta in F;
/// W of the empty set is E(0, r).
bool in_region_W(const SphereSet& F, double r, const BallPoint& z);
bool in_region_W_raw(const SphereSet& F, double r, const CVector& z);

struct BoundaryTraceReport {
  double approach = 0.0;
  double tolerance_eps = 0.0;  ///< points at distance >= 2 * tolerance_eps from F are tested
  int inside_confirmed = 0;    ///< approach * zeta in W_F for zeta in F
  int inside_violations = 0;
  int outside_confirmed = 0;   ///< far sphere points whose approach-scaled copy is outside W_F
  int outside_violations = 0;
  int skipped = 0;             ///< samples too close to F to be decided
  int violations() const { return inside_violations + outside_violations; }
};

/// Smallest eps (to bisection accuracy) with delta_for(r, eps) > 1 - approach.
double trace_tolerance(double r, double approach);

BoundaryTraceReport boundary_trace_check(const SphereSet& F, double r, int samples, double approach,
                                         std::uint64_t seed);

// ---------------------------------------------------------------- witness

/// eta(|z| / r) with eta(t) = max(0, 1 - t^2).
RadialProfile witness_profile(double r);
/// f(z) = z_1 eta(|z| / r).
Symbol witness_symbol(double r);

struct WitnessOperator {
  SeparatedSequence seq;
  OperatorMatrix commutator;  ///< [T_f, T_conj(f)]
  OperatorMatrix S;           ///< commutator squared
  OperatorMatrix T;           ///< sum over m of U_m S U_m, series compressions
  std::vector<std::string> warnings;
};

WitnessOperator witness_operator(const SpherePoint& zeta, double r, int M, const BasisPtr& basis);

struct TwoRouteRow {
  int m = 0;
  double defect = 0.0;     ///< ||U_m S U_m - [T_{f o phi}, T_{conj f o phi}]^2||
  double magnitude = 0.0;  ///< ||[T_{f o phi}, T_{conj f o phi}]^2||
};

/// Per-term comparison of the two routes to U_m S U_m^*.
std::vector<TwoRouteRow> witness_two_routes(const WitnessOperator& w, double r, const BasisPtr& basis,
                                            const QuadratureRule& rule);

// ---------------------------------------------------------------- lower bound

struct Lemma3Row {
  int m = 0;
  double value = 0.0;        ///< <T U_m f, U_m f>
  double margin = 0.0;       ///< value - <S f, f>
  double norm = 0.0;         ///< ||T U_m f||
  double captured_mass = 0.0;  ///< ||P U_m f||^2 for the plain compression of U_m
  double compressed_value = 0.0;  ///< <T P U_m f, P U_m f> with plain compressions
};

struct Lemma3Report {
  int degree = 0;
  double top_eigenvalue = 0.0;  ///< <S f, f> for the top eigenvector f of S
  CVector fhat;
  std::vector<Lemma3Row> rows;
  double floor_c = 0.0;  ///< min over m of value
};

/// Values through U_{z_k} U_{z_m} = U_{c zeta} R, so each term is a compression
/// of a single unitary applied to the fixed vector f.
Lemma3Report lemma3_lower_bound(const WitnessOperator& w, const BasisPtr& basis);

struct Lemma3Sweep {
  std::vector<Lemma3Report> reports;  ///< one per degree, ascending
  std::vector<double> tol;            ///< tol(d) from consecutive degrees
  bool values_ok = false;             ///< value_m >= <Sf,f> - tol(d) for all m, d
  bool norms_ok = false;              ///< norm_m >= c > 0 at every degree
  bool margin_improving = false;      ///< min margin >= 0 or nondecreasing in d
  std::vector<std::string> failures;
};

Lemma3Sweep lemma3_sweep(const SpherePoint& zeta, double r, int M, const std::vector<int>& degrees);

// ---------------------------------------------------------------- decay

struct Prop1Config {
  SphereSet F;
  double eps = 0.0;
  double delta = 1.0;        ///< half the sampled minimum of |1 - <z,w>|
  double delta_floor = 0.0;  ///< eps^2 / 8, a proven lower bound for the same minimum
  double nu_V2 = 0.0;        ///< quadrature of the indicator of V_2
  int delta_pairs = 0;

  /// 1 within eps/3 of F, 0 beyond eps/2, linear in the distance between.
  double cutoff(const CVector& z) const;
};

Prop1Config make_prop1_config(const SphereSet& F, double eps, const QuadratureRule& rule, std::uint64_t seed,
                              int pairs = 10000);

struct DecayCurve {
  std::string label;
  std::vector<int> factors;   ///< panel indices, leftmost operator first
  std::vector<double> norms;  ///< ||A U_m h|| for m = 1..M
  double op_norm = 0.0;       ///< norm of the compressed product
  double final_ratio = 0.0;   ///< norms.back() / norms.front()
  bool decays = false;        ///< final_ratio < decay_target
};

struct Prop1Report {
  std::vector<double> one_minus_norm2;  ///< 1 - |z_m|^2
  std::vector<DecayCurve> curves;
  std::vector<double> cutoff_norms;   ///< ||T_eta U_m h||
  std::vector<double> cutoff_bounds;  ///< ||h||_inf sqrt(nu(V2)) (1-|z_m|^2)^{(n+1)/2} / delta^{n+1}
  std::vector<double> bound_factor;   ///< (1-|z_m|^2)^{(n+1)/2}
  double h_sup = 0.0;
  double slope = 0.0;                 ///< log-log slope of bound_factor vs 1 - |z_m|^2
  double slope_target = 0.0;
  bool bound_ok = false;
  bool slope_ok = false;
  bool decay_ok = false;
  std::vector<std::string> failures;
};

/// A panel of symbols from G_F and a list of products (index chains).
struct IdealPanel {
  std::vector<Symbol> symbols;
  std::vector<std::vector<int>> products;
};

/// Indicator and bump of E(0, r), the witness-type symbol, and for nonempty F
/// the indicator of W_F and max(0, 1 - D(z)/r) with D the region distance.
/// Products are the singles and consecutive chains of length 2 and 3.
IdealPanel ideal_panel(const SphereSet& F, double r);

Prop1Report prop1_decay(const IdealPanel& panel, const SeparatedSequence& seq, const Expansion& h,
                        const Prop1Config& cfg, const BasisPtr& basis, const QuadratureRule& rule,
                        double decay_target = 0.05, double slope_tolerance = 0.10);

/// ||A U_{z_m} h|| for A = T_{g_1} ... T_{g_k}; the innermost factor is applied by
/// projecting g_k (U_{z_m} h) with quadrature, the rest as compressions.
/// symbol_values holds g_k at the nodes of inner_rule.
double ideal_action_norm(const std::vector<OperatorMatrix>& factors, const CVector& symbol_values,
                         const QuadratureRule& inner_rule, const CMatrix& inner_basis_values,
                         const BallFunction& uh);

// ---------------------------------------------------------------- separation

struct SeparationOptions {
  double r = 0.5;
  int M = 5;
  double eps = 0.5;
  double factor = 10.0;
  double approach = 0.999;
  int trace_samples = 1000;
  int region_samples = 2000;
  int delta_pairs = 10000;
  std::uint64_t seed = 1;
};

struct SeparationReport {
  SpherePoint zeta = SpherePoint::axis(1, 0);
  double zeta_distance = 0.0;
  Lemma3Report lemma3;
  Prop1Report prop1;
  Prop1Config prop1_config;
  double S_norm = 0.0;
  double witness_floor = 0.0;      ///< c / (M ||S||), a lower bound for c / ||T_M||
  double ideal_ceiling = 0.0;      ///< max over products of ||A U_{z_M} h|| / ||A||
  double ratio = 0.0;
  int panel_violations = 0;        ///< panel symbols nonzero at sampled points outside W_F1
  int panel_points = 0;
  int monotone_violations = 0;
  int monotone_points = 0;
  BoundaryTraceReport trace_F1;
  BoundaryTraceReport trace_F2;
  bool pass = false;
  std::vector<std::string> failures;
};

/// The point of F2 farthest from F1; throws when F2 has no point at distance >= 2 eps.
std::pair<SpherePoint, double> select_zeta(const SphereSet& F1, const SphereSet& F2, double eps);

SeparationReport separation_experiment(const SphereSet& F1, const SphereSet& F2, const SeparationOptions& opt,
                                       const BasisPtr& basis, const QuadratureRule& rule);

}  // namespace bergman
