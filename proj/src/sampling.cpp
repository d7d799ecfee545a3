#include "bergman/sampling.hpp"

#include <cmath>

namespace bergman {

CVector sample_sphere(Rng& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(n);
  double nrm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    nrm = v.norm();
  } while (nrm < 1e-300);
  return v / nrm;
}

CVector sample_ball(Rng& rng, int n, double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Real dimension is 2n, so the radial law is U^{1/(2n)}.
  const double rho = radius * std::pow(unif(rng), 1.0 / (2.0 * n));
  return rho * sample_sphere(rng, n);
}

BallPoint sample_metric_ball(Rng& rng, const BallPoint& a, double r) {
  const CVector u = sample_ball(rng, a.dim(), r);
  return moebius(a, BallPoint::from(u));
}

BallPoint sample_near(Rng& rng, const CVector& center, double radius) {
  const int n = static_cast<int>(center.size());
  for (int attempt = 0; attempt < 100000; ++attempt) {
    CVector z = center + sample_ball(rng, n, radius);
    if (z.squaredNorm() < 1.0 && (z - center).norm() < radius) return BallPoint::from(std::move(z));
  }
  throw NumericalError("sample_near: no admissible point found");
}

}  // namespace bergman
