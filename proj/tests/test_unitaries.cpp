#include <doctest.h>

#include "bergman/separated_sequence.hpp"
#include "bergman/unitaries.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

const QuadratureRule& rule1() {
  static const QuadratureRule r = build_rule({1, 24, 96, 0});
  return r;
}

Symbol abs2() {
  RadialProfile p;
  p.value = [](double x) { return x * x; };
  return Symbol::radial(p, "|z|^2");
}

// U_a g evaluated from the definition (g o phi_a) k_a.
template <class G>
cplx apply_u(const CVector& a, G g, const CVector& w) {
  return g(moebius_raw(a, w)) * kernel_raw(a, w);
}

}  // namespace

TEST_CASE("U_0 is the reflection") {
  for (int n : {1, 2}) {
    const BasisPtr b = TruncatedBasis::make(n, n == 1 ? 12 : 6);
    const QuadratureRule rule = build_rule({n, 12, 32, 0});
    const OperatorMatrix u = unitary_matrix(BallPoint::origin(n), b, rule);
    const OperatorMatrix r = reflection(b);
    CHECK((u.m - r.m).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((unitary_matrix_series(BallPoint::origin(n), b).m - r.m).cwiseAbs().maxCoeff() < 1e-15);
    for (Eigen::Index k = 0; k < b->size(); ++k) CHECK(r.m(k, k).real() == (b->degree_of(k) % 2 ? -1.0 : 1.0));
  }
}

TEST_CASE("U_z e_0 is the normalized kernel") {
  const BasisPtr b = TruncatedBasis::make(1, 12);
  const BallPoint z{cplx(0.3, -0.4)};
  const OperatorMatrix uq = unitary_matrix(z, b, rule1());
  const OperatorMatrix us = unitary_matrix_series(z, b);
  for (int k = 0; k <= 12; ++k) {
    const cplx expect = 0.75 * std::sqrt(k + 1.0) * std::pow(std::conj(z[0]), k);
    CHECK(std::abs(uq.m(k, 0) - expect) < 1e-12);
    CHECK(std::abs(us.m(k, 0) - expect) < 1e-14);
  }
  // ||U_z e_0|| tends to ||k_z|| = 1.
  CHECK(std::abs(unitary_matrix_series(z, TruncatedBasis::make(1, 80)).m.col(0).norm() - 1.0) < 1e-12);
}

TEST_CASE("series and quadrature compressions agree") {
  const BasisPtr b1 = TruncatedBasis::make(1, 12);
  for (double t : {0.2, 0.5}) {
    const BallPoint z{cplx(t * 0.6, t * 0.8)};
    CHECK((unitary_matrix(z, b1, rule1()).m - unitary_matrix_series(z, b1).m).cwiseAbs().maxCoeff() < 1e-11);
  }
  const BasisPtr b2 = TruncatedBasis::make(2, 4);
  const QuadratureRule r2 = build_rule({2, 12, 40, 0});
  const BallPoint z2{0.2, cplx(0, -0.1)};
  CHECK((unitary_matrix(z2, b2, r2).m - unitary_matrix_series(z2, b2).m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("series compression is Hermitian and matches the definition") {
  const BasisPtr b = TruncatedBasis::make(2, 5);
  const BallPoint a{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
  const OperatorMatrix u = unitary_matrix_series(a, b);
  CHECK((u.m - u.m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  // Column alpha holds the Taylor coefficients of U_a e_alpha; near 0 a
  // high-degree column sums to the function itself.
  const BasisPtr big = TruncatedBasis::make(2, 40);
  const OperatorMatrix ub = unitary_matrix_series(a, big);
  const CVector w = testing::vec({0.05, cplx(0.02, 0.03)});
  for (Eigen::Index k = 0; k < b->size(); ++k) {
    const cplx series = (big->evaluate(w).transpose() * ub.m.col(k))(0);
    const cplx direct = apply_u(a.coords(), [&](const CVector& x) { return big->evaluate(x)(k); }, w);
    CHECK(std::abs(series - direct) < 1e-12);
  }
}

TEST_CASE("truncation defects shrink across the degree sweep") {
  const BallPoint z{0.5};
  std::vector<double> unit, conj;
  for (int d : {6, 8, 10, 12}) {
    const BasisPtr b = TruncatedBasis::make(1, d);
    unit.push_back(unitarity_defect(unitary_matrix(z, b, rule1()), 3));
    conj.push_back(conjugate_toeplitz(z, abs2(), b, rule1(), 3).defect);
  }
  for (std::size_t i = 1; i < unit.size(); ++i) {
    CHECK(unit[i] < unit[i - 1]);
    CHECK(conj[i] < conj[i - 1]);
  }
  std::vector<double> unit2;
  for (int d : {4, 6, 8, 10}) unit2.push_back(unitarity_defect(unitary_matrix_series(BallPoint{0.5, 0.0}, TruncatedBasis::make(2, d)), 1));
  for (std::size_t i = 1; i < unit2.size(); ++i) CHECK(unit2[i] < unit2[i - 1]);
}

TEST_CASE("conjugation identity: trivial cases") {
  const BasisPtr b = TruncatedBasis::make(1, 12);
  CHECK(conjugate_toeplitz(BallPoint{0.0}, abs2(), b, rule1(), 12).defect < 1e-12);
  const ConjugationCheck one = conjugate_toeplitz(BallPoint{0.3}, Symbol::constant(1.0), b, rule1(), 3);
  const Eigen::Index p = b->block_size(3);
  CHECK((one.rhs.m.topLeftCorner(p, p) - CMatrix::Identity(p, p)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(one.defect < 1e-3);
}

TEST_CASE("ray products reduce to a single unitary") {
  const SeparatedSequence seq = build_sequence(SpherePoint::axis(1, 0), 0.5, 4);
  const BasisPtr b = TruncatedBasis::make(1, 8);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const double s = seq.radii[k], t = seq.radii[l];
      const double c = (s - t) / (1.0 - s * t);
      const OperatorMatrix expect = product(unitary_matrix_series(BallPoint{c}, b), reflection(b));
      CHECK((ray_product(seq, k, l, b).m - expect.m).cwiseAbs().maxCoeff() < 1e-9);
      // The function-level identity U_s U_t g = U_c R g at sample points.
      auto g = [](const CVector& x) { return std::exp(x(0)) + x(0) * x(0); };
      for (double wr : {-0.4, 0.1, 0.7}) {
        const CVector w = testing::vec({cplx(wr, 0.1)});
        const cplx lhs = apply_u(testing::vec({s}), [&](const CVector& x) { return apply_u(testing::vec({t}), g, x); }, w);
        const cplx rhs = apply_u(testing::vec({c}), [&](const CVector& x) { return g(-x); }, w);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
      }
    }
}

TEST_CASE("weak pairing: closed form, bound and truncation") {
  CHECK(std::abs(weak_pairing_exact(BallPoint{0.9}, BallPoint{0.0}, BallPoint{0.0}).value - 0.19) < 1e-12);
  CHECK(std::abs(weak_pairing_exact(BallPoint{0.9, 0.0}, BallPoint::origin(2), BallPoint::origin(2)).value -
                 std::pow(0.19, 1.5)) < 1e-12);
  for (int n : {1, 2, 3}) {
    const int bad = testing::first_counterexample(300 + n, 10000, [n](Rng& g) {
      return std::array{BallPoint::from(sample_ball(g, n)), BallPoint::from(sample_ball(g, n)),
                        BallPoint::from(sample_ball(g, n))};
    }, [n](const auto& p) {
      const auto& [zm, z, w] = p;
      const WeakPairing wp = weak_pairing_exact(zm, z, w);
      // <U_zm k_z, k_w> = (1 - |w|^2)^{(n+1)/2} (U_zm k_z)(w).
      const cplx oracle = std::pow(1 - w.norm2(), 0.5 * (n + 1)) *
                          apply_u(zm.coords(), [&](const CVector& x) { return kernel_raw(z.coords(), x); }, w.coords());
      return std::abs(wp.value) <= wp.bound * (1 + 1e-12) && std::abs(wp.value - oracle) < 1e-9 * (1 + std::abs(oracle));
    });
    CHECK(bad == -1);
  }
  const BallPoint zm{0.5}, z{cplx(0.1, 0.2)}, w{-0.2};
  const cplx exact = weak_pairing_exact(zm, z, w).value;
  double prev = 1.0;
  for (int d : {4, 8, 16, 32}) {
    const double err = std::abs(weak_pairing_truncated(unitary_matrix_series(zm, TruncatedBasis::make(1, d)), z, w) - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("weak pairing decays along a separated sequence") {
  const SeparatedSequence seq = build_sequence(SpherePoint::axis(2, 0), 0.5, 8);
  const BallPoint z{0.1, 0.2}, w{cplx(0, 0.3), -0.1};
  double prev_bound = 1e300;
  for (int m = 0; m < seq.size(); ++m) {
    const WeakPairing p = weak_pairing_exact(seq.point(m), z, w);
    CHECK(p.bound < prev_bound);
    prev_bound = p.bound;
  }
  CHECK(std::abs(weak_pairing_exact(seq.point(7), z, w).value) < 1e-12);
}

TEST_CASE("unitary_image matches the definition") {
  const BasisPtr b = TruncatedBasis::make(2, 3);
  Expansion h{b, CVector::Zero(b->size())};
  h.coeffs(1) = 1.0;
  h.coeffs(5) = cplx(0, 2);
  const CVector a = testing::vec({0.3, cplx(0, 0.3)});
  const BallFunction f = unitary_image(h, a, 1 - a.squaredNorm());
  Rng g(2);
  for (int i = 0; i < 50; ++i) {
    const CVector w = sample_ball(g, 2);
    CHECK(std::abs(f(w) - apply_u(a, [&](const CVector& x) { return eval_expansion(h, x); }, w)) < 1e-12);
  }
  CHECK_THROWS_AS(unitary_matrix_series(a, 0.0, b), DomainError);
}
