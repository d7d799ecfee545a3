#pragma once

#include <initializer_list>
#include <optional>

#include "bergman/types.hpp"

namespace bergman {

/// A point of the open unit ball in C^n. Construction validates |z| < 1.
class BallPoint {
 public:
  static BallPoint from(CVector coords);
  static BallPoint origin(int n);
  BallPoint(std::initializer_list<cplx> coords);

  int dim() const { return static_cast<int>(z_.size()); }
  const CVector& coords() const { return z_; }
  cplx operator[](int i) const { return z_(i); }
  double norm() const { return z_.norm(); }
  double norm2() const { return z_.squaredNorm(); }

 private:
  explicit BallPoint(CVector z) : z_(std::move(z)) {}
  CVector z_;
};

/// A unit vector of C^n (a point of the sphere). Inputs within 1e-12 of the
/// sphere are accepted and renormalized.
class SpherePoint {
 public:
  static SpherePoint from(CVector coords);
  /// The coordinate vector e_j of C^n.
  static SpherePoint axis(int n, int j);

  int dim() const { return static_cast<int>(v_.size()); }
  const CVector& coords() const { return v_; }
  cplx operator[](int i) const { return v_(i); }

  /// t * zeta for t in [0, 1).
  BallPoint scaled(double t) const;

 private:
  explicit SpherePoint(CVector v) : v_(std::move(v)) {}
  CVector v_;
};

// Möbius involutions. The convention is phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>)
// with s_a = sqrt(1 - |a|^2), P_a the orthogonal projection onto C·a and P_0 = 0,
// so phi_0 = -identity.

/// Unchecked form for inner loops: a and z must lie in the ball, same size.
CVector moebius_raw(const CVector& a, const CVector& z);

BallPoint moebius(const BallPoint& a, const BallPoint& z);

/// rho(z, w) = |phi_z(w)|.
double pseudo_metric(const BallPoint& z, const BallPoint& w);
double pseudo_metric_raw(const CVector& z, const CVector& w);

struct CombinedBound {
  double lhs = 0.0;  ///< rho(z, w)
  double rhs = 0.0;  ///< (rho(z,u) + rho(u,w)) / (1 + rho(z,u) rho(u,w))
};

CombinedBound metric_combined_bound(const BallPoint& z, const BallPoint& w, const BallPoint& u);

/// (r1 + r2) / (1 + r1 r2): pseudo-hyperbolic balls whose centers are at
/// least this far apart do not meet.
double disjoint_threshold(double r1, double r2);

/// Euclidean description of E(a, r) as an ellipsoid.
struct EllipsoidParams {
  CVector center;
  double s = 1.0;
  double radial_semiaxis = 0.0;      ///< r s, along a
  double transverse_semiaxis = 0.0;  ///< r sqrt(s), orthogonal to a
  std::optional<CVector> axis_direction;  ///< a / |a|; empty when a = 0
};

EllipsoidParams ellipsoid_params(const BallPoint& a, double r);

/// rho(z, a) < r.
bool in_metric_ball(const BallPoint& a, double r, const BallPoint& z);

/// |Pz - c|^2 / (r^2 s^2) + |Qz|^2 / (r^2 s) < 1, with P the projection onto C·a.
bool in_ellipsoid(const EllipsoidParams& e, double r, const BallPoint& z);

/// Value of the ellipsoid quadratic form (the test is "< 1").
double ellipsoid_form(const EllipsoidParams& e, double r, const CVector& z);

/// A radius delta such that every E(a, r) with |a - zeta| < delta, zeta on the
/// sphere, lies inside the Euclidean ball B(zeta, eps). Guarantees
/// 2 r sqrt(2 delta / (1 - r^2)) + delta < eps.
double delta_for(double r, double eps);

/// 2 r sqrt(2 delta / (1 - r^2)) + delta, the radius bound that delta_for controls.
double inclusion_radius(double r, double delta);

}  // namespace bergman
