#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bergman/sampling.hpp"

namespace testing {

using bergman::cplx;
using bergman::CVector;

// Small property harness: runs pred on `count` generated cases and reports the
// first failing case index (or -1).
template <class Gen, class Pred>
int first_counterexample(std::uint64_t seed, int count, Gen gen, Pred pred) {
  bergman::Rng rng(seed);
  for (int i = 0; i < count; ++i)
    if (!pred(gen(rng))) return i;
  return -1;
}

inline CVector vec(std::initializer_list<cplx> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (cplx c : v) out(i++) = c;
  return out;
}

// Independent closed forms used as oracles.

// One-variable pseudo-hyperbolic distance |z - w| / |1 - z conj(w)|.
inline double rho_disc(cplx z, cplx w) { return std::abs(z - w) / std::abs(1.0 - z * std::conj(w)); }

// 1 - rho(a, b)^2 = (1 - |a|^2)(1 - |b|^2) / |1 - <a,b>|^2.
inline double rho_from_identity(const CVector& a, const CVector& b) {
  const double q = (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm()) / std::norm(1.0 - b.dot(a));
  return std::sqrt(std::max(0.0, 1.0 - q));
}

inline double factorial(int k) { return std::tgamma(k + 1.0); }

// Simpson's rule on [lo, hi] with an even number of panels.
template <class F>
double simpson(F f, double lo, double hi, int panels = 4000) {
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

}  // namespace testing
