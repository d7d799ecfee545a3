#include <doctest.h>

#include "bergman/sampling.hpp"
#include "bergman/separated_sequence.hpp"
#include "support.hpp"

using namespace bergman;

TEST_CASE("single element") {
  const SeparatedSequence s = build_sequence(SpherePoint::axis(1, 0), 0.5, 1);
  REQUIRE(s.size() == 1);
  CHECK(s.radii[0] == 0.5);
  CHECK(s.gaps[0] == 0.5);
}

TEST_CASE("schedule invariants along several directions and radii") {
  Rng g(3);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const double r = 0.2 + 0.05 * trial;
    const SpherePoint zeta = SpherePoint::from(sample_sphere(g, n));
    const SeparatedSequence s = build_sequence(zeta, r, 6);
    const double thr = 2.0 * r / (1.0 + r * r);
    for (int m = 0; m < s.size(); ++m) {
      CHECK(s.radii[m] > 1.0 - 1.0 / (m + 1));
      CHECK(s.radii[m] < 1.0);
      CHECK(1.0 - s.radii[m] == s.gaps[m]);
      if (m > 0) CHECK(s.radii[m] > s.radii[m - 1]);
      for (int l = 0; l < m; ++l) {
        // Pairwise distance through the one-variable oracle (the ray is a disc slice).
        CHECK(testing::rho_disc(s.radii[m], s.radii[l]) > thr);
        CHECK(pseudo_metric(s.point(m), s.point(l)) > thr - 1e-12);
      }
    }
  }
}

TEST_CASE("dyadic gaps and the first radii for r = 0.5") {
  const SeparatedSequence s = build_sequence(SpherePoint::axis(1, 0), 0.5, 3);
  // Independent scan: halve the gap until the disc distance exceeds 0.8.
  std::vector<double> expect{0.5};
  while (expect.size() < 3) {
    const std::size_t m = expect.size();
    double gap = 1.0 - expect.back();
    double t = expect.back();
    for (;;) {
      gap /= 2.0;
      t = 1.0 - gap;
      bool ok = t > 1.0 - 1.0 / (m + 1.0);
      for (double prev : expect) ok = ok && testing::rho_disc(t, prev) > 0.8;
      if (ok) break;
    }
    expect.push_back(t);
  }
  for (int m = 0; m < 3; ++m) CHECK(s.radii[m] == expect[m]);
}

TEST_CASE("prefix determinism") {
  const SpherePoint zeta = SpherePoint::from(testing::vec({cplx(0.6, 0), cplx(0, 0.8)}));
  const SeparatedSequence a = build_sequence(zeta, 0.5, 4);
  const SeparatedSequence b = build_sequence(zeta, 0.5, 8);
  for (int m = 0; m < 4; ++m) CHECK(a.radii[m] == b.radii[m]);
}

TEST_CASE("sampled balls do not overlap") {
  const SeparatedSequence s = build_sequence(SpherePoint::axis(1, 0), 0.5, 10);
  Rng g(5);
  for (int k = 0; k < s.size(); ++k)
    for (int i = 0; i < 300; ++i) {
      const BallPoint p = sample_metric_ball(g, s.point(k), 0.5);
      for (int l = 0; l < s.size(); ++l)
        if (l != k) CHECK_FALSE(in_metric_ball(s.point(l), 0.5, p));
    }
}

TEST_CASE("ray helpers") {
  CHECK(ray_pseudo_metric(0.5, 0.5) == 0.0);
  CHECK(ray_pseudo_metric(0.5, 1.5) == doctest::Approx(0.8).epsilon(1e-15));
  const int bad = testing::first_counterexample(9, 2000, [](Rng& g) {
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    return std::pair{u(g), u(g)};
  }, [](const auto& p) {
    const double s = 1.0 - p.first, t = 1.0 - p.second;
    const double c = ray_moebius_coefficient(p.first, p.second);
    return std::abs(c - (s - t) / (1.0 - s * t)) < 1e-9 &&
           std::abs(ray_pseudo_metric(p.first, p.second) - testing::rho_disc(s, t)) < 1e-9;
  });
  CHECK(bad == -1);
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(build_sequence(SpherePoint::axis(1, 0), 0.0, 3), DomainError);
  CHECK_THROWS_AS(build_sequence(SpherePoint::axis(1, 0), 0.5, 0), DomainError);
  CHECK_THROWS_AS(SpherePoint::from(testing::vec({0.5})), DomainError);
  CHECK_THROWS_AS(build_sequence(SpherePoint::axis(1, 0), 0.5, 40), SequenceUnderflow);
}
