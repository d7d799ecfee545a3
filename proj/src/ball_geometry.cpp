#include "bergman/ball_geometry.hpp"

#include <cmath>
#include <string>

namespace bergman {

namespace {

constexpr double kSphereTolerance = 1e-12;

void require_same_dim(const CVector& a, const CVector& b) {
  if (a.size() != b.size())
    throw DomainError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()));
}

void require_radius(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0))
    throw DomainError(std::string(what) + " must lie in (0,1), got " + std::to_string(r));
}

}  // namespace

BallPoint BallPoint::from(CVector coords) {
  if (coords.size() < 1) throw DomainError("ball point needs dimension >= 1");
  if (!coords.allFinite()) throw DomainError("ball point has non-finite coordinates");
  if (!(coords.squaredNorm() < 1.0))
    throw DomainError("ball point outside the open unit ball (|z| = " +
                      std::to_string(coords.norm()) + ")");
  return BallPoint(std::move(coords));
}

BallPoint BallPoint::origin(int n) {
  if (n < 1) throw DomainError("ball point needs dimension >= 1");
  return BallPoint(CVector::Zero(n));
}

BallPoint::BallPoint(std::initializer_list<cplx> coords) {
  CVector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const cplx& c : coords) v(i++) = c;
  *this = from(std::move(v));
}

SpherePoint SpherePoint::from(CVector coords) {
  if (coords.size() < 1) throw DomainError("sphere point needs dimension >= 1");
  if (!coords.allFinite()) throw DomainError("sphere point has non-finite coordinates");
  const double nrm = coords.norm();
  if (std::abs(nrm - 1.0) > kSphereTolerance)
    throw DomainError("not a unit vector (|zeta| = " + std::to_string(nrm) + ")");
  coords /= nrm;
  return SpherePoint(std::move(coords));
}

SpherePoint SpherePoint::axis(int n, int j) {
  if (n < 1 || j < 0 || j >= n) throw DomainError("axis index out of range");
  CVector v = CVector::Zero(n);
  v(j) = 1.0;
  return SpherePoint(std::move(v));
}

BallPoint SpherePoint::scaled(double t) const {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("ray parameter must lie in [0,1)");
  return BallPoint::from(t * v_);
}

CVector moebius_raw(const CVector& a, const CVector& z) {
  const double a2 = a.squaredNorm();
  const cplx za = inner(z, a);
  CVector pz = CVector::Zero(z.size());
  if (a2 > 0.0) pz = (za / a2) * a;
  const double s = std::sqrt(1.0 - a2);
  return (a - pz - s * (z - pz)) / (1.0 - za);
}

BallPoint moebius(const BallPoint& a, const BallPoint& z) {
  require_same_dim(a.coords(), z.coords());
  CVector w = moebius_raw(a.coords(), z.coords());
  // Rounding can push |w| onto the sphere for points extremely close to it.
  const double n2 = w.squaredNorm();
  if (!(n2 < 1.0)) w *= std::nextafter(1.0, 0.0) / std::sqrt(n2);
  return BallPoint::from(std::move(w));
}

double pseudo_metric_raw(const CVector& z, const CVector& w) {
  return std::min(moebius_raw(z, w).norm(), std::nextafter(1.0, 0.0));
}

double pseudo_metric(const BallPoint& z, const BallPoint& w) {
  require_same_dim(z.coords(), w.coords());
  return pseudo_metric_raw(z.coords(), w.coords());
}

CombinedBound metric_combined_bound(const BallPoint& z, const BallPoint& w, const BallPoint& u) {
  require_same_dim(z.coords(), w.coords());
  require_same_dim(z.coords(), u.coords());
  const double zu = pseudo_metric(z, u);
  const double uw = pseudo_metric(u, w);
  return {pseudo_metric(z, w), (zu + uw) / (1.0 + zu * uw)};
}

double disjoint_threshold(double r1, double r2) {
  require_radius(r1, "r1");
  require_radius(r2, "r2");
  return (r1 + r2) / (1.0 + r1 * r2);
}

EllipsoidParams ellipsoid_params(const BallPoint& a, double r) {
  require_radius(r, "r");
  const double a2 = a.norm2();
  const double denom = 1.0 - r * r * a2;
  EllipsoidParams e;
  e.s = (1.0 - a2) / denom;
  e.center = ((1.0 - r * r) / denom) * a.coords();
  e.radial_semiaxis = r * e.s;
  e.transverse_semiaxis = r * std::sqrt(e.s);
  if (a2 > 0.0) e.axis_direction = a.coords() / std::sqrt(a2);
  return e;
}

double ellipsoid_form(const EllipsoidParams& e, double r, const CVector& z) {
  CVector pz = CVector::Zero(z.size());
  if (e.axis_direction) {
    const CVector& u = *e.axis_direction;
    pz = inner(z, u) * u;
  }
  const double along = (pz - e.center).squaredNorm();
  const double across = (z - pz).squaredNorm();
  return along / (r * r * e.s * e.s) + across / (r * r * e.s);
}

bool in_ellipsoid(const EllipsoidParams& e, double r, const BallPoint& z) {
  require_radius(r, "r");
  if (e.center.size() != z.coords().size()) throw DomainError("dimension mismatch");
  return ellipsoid_form(e, r, z.coords()) < 1.0;
}

bool in_metric_ball(const BallPoint& a, double r, const BallPoint& z) {
  require_radius(r, "r");
  return pseudo_metric(z, a) < r;
}

double inclusion_radius(double r, double delta) {
  return 2.0 * r * std::sqrt(2.0 * delta / (1.0 - r * r)) + delta;
}

double delta_for(double r, double eps) {
  require_radius(r, "r");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive and finite");
  double delta = std::min(eps / 2.0, (1.0 - r * r) * eps * eps / (32.0 * r * r));
  // Both terms can equal eps/2 at once (eps = 16 r^2 / (1 - r^2)); nudge below the tie.
  for (int i = 0; i < 64 && !(inclusion_radius(r, delta) < eps); ++i) delta *= 1.0 - 1e-12;
  return delta;
}

}  // namespace bergman
