#include <cmath>
#include <limits>

#include "bergman/ideal_witness.hpp"

namespace bergman {

namespace {
constexpr double kRayEnd = 1.0 - 1e-9;
constexpr double kRayTol = 1e-10;
}  // namespace

double distance_to_set(const SphereSet& F, const CVector& z) {
  double best = std::numeric_limits<double>::infinity();
  for (const SpherePoint& p : F.points) best = std::min(best, (z - p.coords()).norm());
  return best;
}

double ray_infimum(const CVector& z, const SpherePoint& zeta) {
  if (z.size() != zeta.dim()) throw DomainError("dimension mismatch");
  const CVector& v = zeta.coords();
  auto f = [&](double t) { return pseudo_metric_raw(z, CVector(t * v)); };
  // rho(z, t zeta) is unimodal in t, so golden-section search finds the infimum.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = kRayEnd;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > kRayTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f1, f2, f(0.0), f(kRayEnd)});
}

double region_distance(const SphereSet& F, const CVector& z) {
  if (F.empty()) return z.norm();
  double best = 1.0;
  for (const SpherePoint& p : F.points) best = std::min(best, ray_infimum(z, p));
  return best;
}

bool in_region_W_raw(const SphereSet& F, double r, const CVector& z) {
  if (F.empty()) return z.norm() < r;
  for (const SpherePoint& p : F.points)
    if (ray_infimum(z, p) < r) return true;
  return false;
}

bool in_region_W(const SphereSet& F, double r, const BallPoint& z) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
  if (z.dim() != F.dim) throw DomainError("dimension mismatch");
  return in_region_W_raw(F, r, z.coords());
}

double trace_tolerance(double r, double approach) {
  if (!(approach > 0.0 && approach < 1.0)) throw DomainError("approach must lie in (0,1)");
  const double gap = 1.0 - approach;
  double hi = 1.0;
  while (!(delta_for(r, hi) > gap)) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (delta_for(r, mid) > gap ? hi : lo) = mid;
  }
  return hi;
}

BoundaryTraceReport boundary_trace_check(const SphereSet& F, double r, int samples, double approach,
                                         std::uint64_t seed) {
  if (samples < 0) throw DomainError("sample count must be >= 0");
  BoundaryTraceReport rep;
  rep.approach = approach;
  rep.tolerance_eps = trace_tolerance(r, approach);
  for (const SpherePoint& p : F.points) {
    const bool in = in_region_W_raw(F, r, approach * p.coords());
    (in ? rep.inside_confirmed : rep.inside_violations) += 1;
  }
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const CVector xi = sample_sphere(rng, F.dim);
    if (distance_to_set(F, xi) < 2.0 * rep.tolerance_eps) {
      ++rep.skipped;
      continue;
    }
    const bool in = in_region_W_raw(F, r, approach * xi);
    (in ? rep.outside_violations : rep.outside_confirmed) += 1;
  }
  return rep;
}

}  // namespace bergman
