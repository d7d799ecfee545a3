#include <doctest.h>

#include "bergman/ideal_witness.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

SphereSet set_of(int n, std::initializer_list<int> axes) {
  SphereSet s{n, {}};
  for (int j : axes) s.points.push_back(SpherePoint::axis(n, j));
  return s;
}

double grid_infimum(const CVector& z, const SpherePoint& zeta) {
  double best = 1.0;
  for (int i = 0; i < 200000; ++i) {
    const double t = i / 200000.0;
    best = std::min(best, testing::rho_from_identity(z, t * zeta.coords()));
  }
  return best;
}

}  // namespace

TEST_CASE("region membership examples") {
  const SphereSet F = set_of(2, {0});
  CHECK(in_region_W(F, 0.5, BallPoint{0.5, 0.0}));
  CHECK_FALSE(in_region_W(F, 0.5, BallPoint{0.0, 0.5}));
  CHECK(ray_infimum(testing::vec({0.0, 0.5}), SpherePoint::axis(2, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  const SphereSet empty{2, {}};
  CHECK(in_region_W(empty, 0.5, BallPoint{0.3, 0.3}));
  CHECK_FALSE(in_region_W(empty, 0.5, BallPoint{0.4, 0.4}));
  CHECK(std::isinf(distance_to_set(empty, testing::vec({0.1, 0.1}))));
  CHECK(distance_to_set(F, testing::vec({0.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("aligned directions cover every point") {
  Rng g(5);
  for (int i = 0; i < 200; ++i) {
    const CVector z = sample_ball(g, 2);
    const SphereSet F{2, {SpherePoint::from(z / z.norm())}};
    CHECK(in_region_W(F, 0.3, BallPoint::from(z)));
  }
}

TEST_CASE("ray infimum against a grid search") {
  Rng g(6);
  for (int i = 0; i < 20; ++i) {
    const CVector z = sample_ball(g, 2, 0.95);
    const SpherePoint zeta = SpherePoint::from(sample_sphere(g, 2));
    CHECK(ray_infimum(z, zeta) == doctest::Approx(grid_infimum(z, zeta)).epsilon(1e-5));
  }
}

TEST_CASE("monotone region property") {
  const SphereSet F1 = set_of(2, {1});
  const SphereSet F2 = set_of(2, {0, 1});
  const int bad = testing::first_counterexample(8, 3000, [](Rng& g) { return BallPoint::from(sample_ball(g, 2)); },
                                                [&](const BallPoint& z) {
                                                  return !in_region_W(F1, 0.5, z) || in_region_W(F2, 0.5, z);
                                                });
  CHECK(bad == -1);
  const int bad0 = testing::first_counterexample(9, 3000, [](Rng& g) { return BallPoint::from(sample_ball(g, 2)); },
                                                 [&](const BallPoint& z) {
                                                   return !in_region_W(SphereSet{2, {}}, 0.5, z) || in_region_W(F1, 0.5, z);
                                                 });
  CHECK(bad0 == -1);
}

TEST_CASE("boundary trace") {
  CHECK(in_region_W(set_of(1, {0}), 0.5, BallPoint{0.999}));
  CHECK_FALSE(in_region_W(set_of(2, {0}), 0.5, BallPoint{0.0, 0.999}));
  const double eps = trace_tolerance(0.5, 0.999);
  CHECK(delta_for(0.5, eps) > 1 - 0.999);
  CHECK(delta_for(0.5, 0.99 * eps) <= 1 - 0.999);
  for (const SphereSet& F : {set_of(2, {0}), set_of(2, {0, 1}), SphereSet{2, {}}, set_of(1, {0})}) {
    const BoundaryTraceReport rep = boundary_trace_check(F, 0.5, 500, 0.999, 3);
    CHECK(rep.violations() == 0);
    CHECK(rep.inside_confirmed == static_cast<int>(F.points.size()));
    CHECK(rep.outside_confirmed + rep.skipped == 500);
  }
}

TEST_CASE("witness operator, lower bound and the two routes") {
  const SpherePoint zeta = SpherePoint::axis(1, 0);
  const BasisPtr b = TruncatedBasis::make(1, 12);
  const WitnessOperator w = witness_operator(zeta, 0.5, 5, b);
  CHECK(w.seq.size() == 5);
  CHECK((w.S.m - w.commutator.m * w.commutator.m).norm() < 1e-15);
  CHECK((w.T.m - w.T.m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(w.S.m);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);

  const Lemma3Report rep = lemma3_lower_bound(w, b);
  CHECK(rep.top_eigenvalue == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-12));
  CHECK(rep.top_eigenvalue > 0.0);
  CHECK(rep.floor_c > 0.0);
  REQUIRE(rep.rows.size() == 5);
  for (const auto& row : rep.rows) {
    CHECK(row.norm >= rep.floor_c * (1 - 1e-12));
    CHECK(row.margin == doctest::Approx(row.value - rep.top_eigenvalue));
  }

  // M = 1: the single term reproduces <S f, f> up to truncation.
  const WitnessOperator w1 = witness_operator(zeta, 0.5, 1, b);
  const Lemma3Report r1 = lemma3_lower_bound(w1, b);
  CHECK(r1.rows[0].value == doctest::Approx(r1.top_eigenvalue).epsilon(1e-6));

  const QuadratureRule rule = build_rule({1, 24, 96, 0});
  std::vector<double> first;
  for (int d : {6, 8, 10, 12}) {
    const BasisPtr bd = TruncatedBasis::make(1, d);
    first.push_back(witness_two_routes(witness_operator(zeta, 0.5, 2, bd), 0.5, bd, rule)[0].defect);
  }
  for (std::size_t i = 1; i < first.size(); ++i) CHECK(first[i] < first[i - 1]);
}

TEST_CASE("lower-bound sweep at the flagship configuration") {
  const Lemma3Sweep sw = lemma3_sweep(SpherePoint::axis(1, 0), 0.5, 5, {6, 8, 10, 12});
  CHECK(sw.values_ok);
  CHECK(sw.norms_ok);
  CHECK(sw.margin_improving);
  CHECK(sw.failures.empty());
  CHECK(sw.reports.back().floor_c > 0.0);
  CHECK_THROWS_AS(lemma3_sweep(SpherePoint::axis(1, 0), 0.5, 5, {}), DomainError);
}

TEST_CASE("decay configuration") {
  const QuadratureRule rule = build_rule({1, 24, 96, 0});
  const Prop1Config none = make_prop1_config(SphereSet{1, {}}, 0.5, rule, 1, 100);
  CHECK(none.delta == 1.0);
  CHECK(none.nu_V2 == 0.0);
  const Prop1Config one = make_prop1_config(set_of(1, {0}), 0.5, rule, 1, 2000);
  CHECK(one.delta >= one.delta_floor);
  CHECK(one.delta_floor == doctest::Approx(0.5 * 0.5 / 8));
  CHECK(one.cutoff(testing::vec({0.9})) == 1.0);
  CHECK(one.cutoff(testing::vec({0.0})) == 0.0);
  // Halfway between eps/3 and eps/2 from F.
  const double mid = one.cutoff(testing::vec({1.0 - 5.0 * 0.5 / 12.0}));
  CHECK(mid == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(one.nu_V2 > 0.0);
  CHECK(one.nu_V2 < 1.0);
  CHECK_THROWS_AS(make_prop1_config(set_of(1, {0}), 0.0, rule, 1, 10), DomainError);
}

TEST_CASE("ideal panel symbols vanish outside the region") {
  const IdealPanel p = ideal_panel(set_of(2, {1}), 0.5);
  CHECK(p.symbols.size() == 5);
  const IdealPanel p0 = ideal_panel(SphereSet{2, {}}, 0.5);
  CHECK(p0.symbols.size() == 3);
  for (const auto& prod : p.products) {
    CHECK(prod.size() >= 1);
    CHECK(prod.size() <= 3);
  }
  Rng g(3);
  for (int i = 0; i < 2000; ++i) {
    const CVector z = sample_ball(g, 2);
    if (in_region_W_raw(set_of(2, {1}), 0.5, z)) continue;
    for (const Symbol& s : p.symbols) CHECK(s(z) == cplx(0));
  }
}

TEST_CASE("decay along a sequence away from F1") {
  const QuadratureRule rule = build_rule({1, 24, 96, 0});
  const BasisPtr b = TruncatedBasis::make(1, 12);
  const SeparatedSequence seq = build_sequence(SpherePoint::axis(1, 0), 0.5, 10);
  Expansion h{b, CVector::Zero(b->size())};
  h.coeffs(0) = 1.0;
  const SphereSet empty{1, {}};
  const Prop1Report rep = prop1_decay(ideal_panel(empty, 0.5), seq, h, make_prop1_config(empty, 0.5, rule, 1), b, rule);
  CHECK(rep.decay_ok);
  CHECK(rep.bound_ok);
  CHECK(rep.slope_ok);
  CHECK(rep.slope == doctest::Approx(1.0).epsilon(0.10));
  CHECK(rep.h_sup == doctest::Approx(1.0));

  IdealPanel zero;
  RadialProfile z0;
  z0.value = [](double) { return 0.0; };
  z0.support = 0.5;
  z0.sup = 0.0;
  zero.symbols.push_back(Symbol::radial(z0, "0"));
  zero.products = {{0}};
  const Prop1Report zr = prop1_decay(zero, seq, h, make_prop1_config(empty, 0.5, rule, 1), b, rule);
  for (double v : zr.curves[0].norms) CHECK(v == 0.0);

  // A sequence running into F1 violates the precondition.
  const SphereSet F1 = set_of(1, {0});
  CHECK_THROWS_AS(prop1_decay(ideal_panel(F1, 0.5), seq, h, make_prop1_config(F1, 0.5, rule, 1, 100), b, rule),
                  DomainError);
}

TEST_CASE("zeta selection") {
  const auto [zeta, dist] = select_zeta(set_of(2, {1}), set_of(2, {0, 1}), 0.5);
  CHECK((zeta.coords() - SpherePoint::axis(2, 0).coords()).norm() == 0.0);
  CHECK(dist == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(select_zeta(set_of(2, {0, 1}), set_of(2, {0}), 0.5), DomainError);
  CHECK_THROWS_AS(select_zeta(set_of(2, {1}), set_of(2, {0, 1}), 0.8), DomainError);
}

TEST_CASE("separation at reduced size") {
  SeparationOptions opt;
  opt.M = 3;
  opt.trace_samples = 200;
  opt.region_samples = 300;
  opt.delta_pairs = 500;
  const SeparationReport rep = separation_experiment(SphereSet{1, {}}, set_of(1, {0}), opt,
                                                     TruncatedBasis::make(1, 10), build_rule({1, 24, 96, 0}));
  CHECK(rep.pass);
  CHECK(rep.ratio >= 10.0);
  CHECK(rep.panel_violations == 0);
  CHECK(rep.monotone_violations == 0);
  CHECK(rep.witness_floor == doctest::Approx(rep.lemma3.floor_c / (3 * rep.S_norm)));
}
