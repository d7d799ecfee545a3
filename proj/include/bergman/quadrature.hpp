#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/ball_geometry.hpp"

namespace bergman {

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with the given number of points on [lo, hi].
GaussLegendre gauss_legendre(int points, double lo = 0.0, double hi = 1.0);

struct RuleSpec {
  int dim = 1;
  int radial_points = 24;
  /// Angles per phase (n = 1, 2) or number of sphere samples (n >= 3).
  int angular_points = 48;
  std::uint64_t seed = 0;
};

/// Nodes and positive weights for integration against the normalized volume
/// measure nu of the unit ball. Full-ball rules have weights summing to 1;
/// restricted and pulled-back rules integrate over the image region only.
struct QuadratureRule {
  RuleSpec spec;
  int dim = 1;
  CMatrix nodes;  ///< dim x count, one node per column
  Eigen::VectorXd weights;
  /// z^a conj(z)^b is integrated exactly (to rounding) for |a|,|b| <= this.
  int exactness_degree = 0;
  bool sampled = false;
  double radius = 1.0;
  std::optional<CVector> pullback_center;
  std::string construction;
  std::vector<std::string> warnings;

  Eigen::Index size() const { return weights.size(); }
};

/// n = 1: Gauss-Legendre in t = |z|^2 times equally spaced angles.
/// n = 2: Gauss-Legendre in t, Gauss-Legendre in |xi_1|^2 and equally spaced
///        phases on the Hopf coordinates of the 3-sphere.
/// n >= 3: Gauss-Legendre in t times a seeded, shifted Halton point set on the
///        sphere (flagged as sampled).
QuadratureRule build_rule(const RuleSpec& spec);

/// Rule for B(0, radius): nodes scaled by radius, weights by radius^{2n}.
QuadratureRule restrict_to_ball(const QuadratureRule& rule, double radius);

/// Rule for the image phi_a(region of rule): nodes phi_a(u), weights
/// multiplied by the real Jacobian |k_a(u)|^2.
QuadratureRule pullback(const QuadratureRule& rule, const BallPoint& a);

/// f at every node; throws NumericalError naming the first non-finite node.
CVector evaluate_at_nodes(const BallFunction& f, const QuadratureRule& rule);

/// sum_i w_i v_i with a fixed pairwise reduction order.
cplx weighted_sum(const CVector& values, const QuadratureRule& rule);

cplx integrate(const BallFunction& f, const QuadratureRule& rule);

nlohmann::json rule_metadata(const QuadratureRule& rule);

}  // namespace bergman
