#pragma once

#include <cstdint>
#include <random>

#include "bergman/ball_geometry.hpp"

namespace bergman {

using Rng = std::mt19937_64;

/// Uniform point on the unit sphere of C^n.
CVector sample_sphere(Rng& rng, int n);

/// Uniform point (Lebesgue) in the Euclidean ball of the given radius about 0.
CVector sample_ball(Rng& rng, int n, double radius = 1.0);

/// Point of E(a, r): phi_a(u) with u uniform in B(0, r).
BallPoint sample_metric_ball(Rng& rng, const BallPoint& a, double r);

/// Point of the open ball within Euclidean distance < radius of center
/// (rejection sampling; center may lie on the sphere).
BallPoint sample_near(Rng& rng, const CVector& center, double radius);

}  // namespace bergman
