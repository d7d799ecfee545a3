#include "bergman/separated_sequence.hpp"

#include <cmath>
#include <string>

namespace bergman {

SequenceUnderflow::SequenceUnderflow(int achievable, int requested)
    : NumericalError("separated sequence underflows double precision after " +
                     std::to_string(achievable) + " of " + std::to_string(requested) + " radii"),
      achievable_(achievable) {}

double ray_moebius_coefficient(double gap_s, double gap_t) {
  // (s - t) / (1 - s t) with s = 1 - gap_s, t = 1 - gap_t.
  return (gap_t - gap_s) / (gap_s + gap_t - gap_s * gap_t);
}

double ray_pseudo_metric(double gap_s, double gap_t) {
  return std::abs(ray_moebius_coefficient(gap_s, gap_t));
}

SeparatedSequence build_sequence(const SpherePoint& zeta, double r, int count) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
  if (count < 1) throw DomainError("sequence length must be >= 1");

  const double threshold = 2.0 * r / (1.0 + r * r);
  SeparatedSequence seq{zeta, r, {}, {}};
  seq.radii.reserve(count);
  seq.gaps.reserve(count);
  seq.radii.push_back(0.5);
  seq.gaps.push_back(0.5);

  for (int m = 1; m < count; ++m) {
    const double floor_t = std::max(seq.radii.back(), 1.0 - 1.0 / (m + 1));
    double gap = seq.gaps.back();
    bool accepted = false;
    while (!accepted) {
      gap /= 2.0;
      const double t = 1.0 - gap;
      if (!(t < 1.0) || gap == 0.0) throw SequenceUnderflow(m, count);
      if (!(t > floor_t)) continue;
      if (!((t * zeta.coords()).squaredNorm() < 1.0)) throw SequenceUnderflow(m, count);
      const BallPoint candidate = zeta.scaled(t);
      accepted = true;
      for (int j = 0; j < m; ++j) {
        if (!(pseudo_metric(candidate, seq.point(j)) > threshold)) {
          accepted = false;
          break;
        }
      }
      if (accepted) {
        seq.radii.push_back(t);
        seq.gaps.push_back(gap);
      }
    }
  }
  return seq;
}

}  // namespace bergman
