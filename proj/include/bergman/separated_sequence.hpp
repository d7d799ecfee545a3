#pragma once

#include <vector>

#include "bergman/ball_geometry.hpp"

namespace bergman {

/// Increasing radii t_1 < ... < t_M along the ray through zeta whose
/// pseudo-hyperbolic balls E(t_m zeta, r) are pairwise disjoint.
struct SeparatedSequence {
  SpherePoint zeta;
  double r = 0.0;
  std::vector<double> radii;  ///< t_m
  std::vector<double> gaps;   ///< 1 - t_m, exact for the dyadic schedule

  int size() const { return static_cast<int>(radii.size()); }
  /// z_m = t_m zeta, 0-based.
  BallPoint point(int m) const { return zeta.scaled(radii.at(m)); }
};

/// Thrown when the schedule runs into the resolution limit of double before
/// reaching the requested length.
class SequenceUnderflow : public NumericalError {
 public:
  SequenceUnderflow(int achievable, int requested);
  int achievable() const { return achievable_; }

 private:
  int achievable_;
};

/// t_1 = 1/2; each later t is the first of 1 - (1 - t_m)/2^k, k = 1, 2, ...,
/// above max(t_m, 1 - 1/(m+1)) whose pseudo-hyperbolic distance to every
/// earlier point exceeds 2r/(1+r^2).
SeparatedSequence build_sequence(const SpherePoint& zeta, double r, int count);

/// Pseudo-hyperbolic distance of s zeta and t zeta computed from the
/// complements 1 - s and 1 - t, which keeps full relative accuracy near the sphere.
double ray_pseudo_metric(double gap_s, double gap_t);

/// phi_{s zeta}(t zeta) = c zeta; returns c from the complements 1 - s, 1 - t.
double ray_moebius_coefficient(double gap_s, double gap_t);

}  // namespace bergman
