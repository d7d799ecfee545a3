#include <cmath>

#include "bergman/ideal_witness.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

namespace {

constexpr double kConditioningGap = 1e-6;

double one_minus_norm2(double gap) { return gap * (2.0 - gap); }

OperatorMatrix sequence_unitary(const SeparatedSequence& seq, int m, const BasisPtr& basis) {
  return unitary_matrix_series(seq.point(m).coords(), one_minus_norm2(seq.gaps.at(m)), basis);
}

double real_inner(const CVector& x, const CVector& y) { return y.dot(x).real(); }

}  // namespace

RadialProfile witness_profile(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0,1)");
  RadialProfile g;
  g.value = [r](double rho) { return std::max(0.0, 1.0 - rho * rho / (r * r)); };
  g.support = r;
  g.sup = 1.0;
  return g;
}

Symbol witness_symbol(double r) { return Symbol::monomial_radial(0, witness_profile(r), "z1*eta(|z|/r)"); }

WitnessOperator witness_operator(const SpherePoint& zeta, double r, int M, const BasisPtr& basis) {
  if (zeta.dim() != basis->dim()) throw DomainError("direction has wrong dimension for basis");
  WitnessOperator w{build_sequence(zeta, r, M), {}, {}, {}, {}};
  const RadialProfile g = witness_profile(r);
  const OperatorMatrix tf = toeplitz_monomial_radial(0, false, g, basis);
  const OperatorMatrix tfb = toeplitz_monomial_radial(0, true, g, basis);
  w.commutator = commutator(tf, tfb);
  const CMatrix s = w.commutator.m * w.commutator.m;
  w.S = {basis, 0.5 * (s + s.adjoint()), {}};

  std::vector<CMatrix> terms(static_cast<std::size_t>(M));
  parallel_for(terms.size(), [&](std::size_t m) {
    const OperatorMatrix u = sequence_unitary(w.seq, static_cast<int>(m), basis);
    terms[m] = u.m * w.S.m * u.m.adjoint();
  });
  w.T = {basis, CMatrix::Zero(basis->size(), basis->size()), {}};
  for (const CMatrix& t : terms) w.T.m += t;
  if (w.seq.gaps.back() < kConditioningGap)
    w.warnings.push_back("1 - t_M = " + std::to_string(w.seq.gaps.back()) +
                         " is below 1e-6; kernel evaluations are poorly conditioned");
  return w;
}

std::vector<TwoRouteRow> witness_two_routes(const WitnessOperator& w, double r, const BasisPtr& basis,
                                            const QuadratureRule& rule) {
  const Symbol f = witness_symbol(r);
  std::vector<TwoRouteRow> rows(static_cast<std::size_t>(w.seq.size()));
  for (int m = 0; m < w.seq.size(); ++m) {
    const BallPoint z = w.seq.point(m);
    const OperatorMatrix u = sequence_unitary(w.seq, m, basis);
    const CMatrix lhs = u.m * w.S.m * u.m.adjoint();
    const Symbol fz = f.composed_with(z);
    const QuadratureRule q = adapted_rule(fz, rule);
    const CMatrix E = basis->evaluate_at_nodes(q);
    const OperatorMatrix a = toeplitz_on_nodes(fz, basis, q, E);
    const OperatorMatrix b = toeplitz_on_nodes(f.conj().composed_with(z), basis, q, E);
    const CMatrix c = commutator(a, b).m;
    const CMatrix rhs = c * c;
    rows[static_cast<std::size_t>(m)] = {m + 1, op_norm(CMatrix(lhs - rhs)), op_norm(rhs)};
  }
  return rows;
}

Lemma3Report lemma3_lower_bound(const WitnessOperator& w, const BasisPtr& basis) {
  Lemma3Report rep;
  rep.degree = basis->degree();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(w.S.m);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on S");
  const Eigen::Index top = es.eigenvalues().size() - 1;
  rep.top_eigenvalue = es.eigenvalues()(top);
  if (!(rep.top_eigenvalue > 0.0)) throw NumericalError("S has no positive eigenvalue");
  rep.fhat = es.eigenvectors().col(top);
  Eigen::Index big = 0;
  rep.fhat.cwiseAbs().maxCoeff(&big);
  rep.fhat *= std::abs(rep.fhat(big)) / rep.fhat(big);

  const int M = w.seq.size();
  std::vector<CMatrix> G(static_cast<std::size_t>(M * M));
  parallel_for(G.size(), [&](std::size_t idx) {
    const int k = static_cast<int>(idx) / M, l = static_cast<int>(idx) % M;
    G[idx] = ray_product(w.seq, k, l, basis).m;
  });
  auto g = [&](int k, int l) -> const CMatrix& { return G[static_cast<std::size_t>(k * M + l)]; };

  rep.rows.resize(static_cast<std::size_t>(M));
  parallel_for(rep.rows.size(), [&](std::size_t mi) {
    const int m = static_cast<int>(mi);
    Lemma3Row row;
    row.m = m + 1;
    std::vector<CVector> v(static_cast<std::size_t>(M));
    for (int k = 0; k < M; ++k) {
      const CVector x = g(k, m) * rep.fhat;
      v[static_cast<std::size_t>(k)] = w.S.m * x;
      row.value += real_inner(v[static_cast<std::size_t>(k)], x);
    }
    double norm2 = 0.0;
    for (int k = 0; k < M; ++k)
      for (int l = 0; l < M; ++l)
        norm2 += real_inner(v[static_cast<std::size_t>(k)], g(k, l) * v[static_cast<std::size_t>(l)]);
    row.norm = std::sqrt(std::max(0.0, norm2));
    row.margin = row.value - rep.top_eigenvalue;

    const CVector x = sequence_unitary(w.seq, m, basis).m * rep.fhat;
    row.captured_mass = x.squaredNorm();
    row.compressed_value = real_inner(w.T.m * x, x);
    rep.rows[mi] = row;
  });
  rep.floor_c = rep.rows.front().value;
  for (const auto& row : rep.rows) rep.floor_c = std::min(rep.floor_c, row.value);
  return rep;
}

Lemma3Sweep lemma3_sweep(const SpherePoint& zeta, double r, int M, const std::vector<int>& degrees) {
  if (degrees.empty()) throw DomainError("degree sweep is empty");
  Lemma3Sweep sw;
  for (int d : degrees) {
    const BasisPtr basis = TruncatedBasis::make(zeta.dim(), d);
    sw.reports.push_back(lemma3_lower_bound(witness_operator(zeta, r, M, basis), basis));
  }
  const std::size_t D = sw.reports.size();
  sw.tol.assign(D, 0.0);
  for (std::size_t i = 0; i + 1 < D; ++i)
    for (int m = 0; m < M; ++m)
      sw.tol[i] = std::max(sw.tol[i], std::abs(sw.reports[i].rows[m].value - sw.reports[i + 1].rows[m].value));
  if (D >= 2) sw.tol[D - 1] = sw.tol[D - 2];

  sw.values_ok = sw.norms_ok = true;
  std::vector<double> min_margin(D);
  for (std::size_t i = 0; i < D; ++i) {
    const Lemma3Report& rep = sw.reports[i];
    min_margin[i] = rep.rows.front().margin;
    if (!(rep.floor_c > 0.0)) {
      sw.norms_ok = false;
      sw.failures.push_back("d=" + std::to_string(rep.degree) + ": floor c is not positive");
    }
    for (const auto& row : rep.rows) {
      min_margin[i] = std::min(min_margin[i], row.margin);
      if (row.value < rep.top_eigenvalue - sw.tol[i]) {
        sw.values_ok = false;
        sw.failures.push_back("d=" + std::to_string(rep.degree) + " m=" + std::to_string(row.m) +
                              ": margin " + std::to_string(row.margin) + " below -tol");
      }
      if (row.norm < rep.floor_c * (1.0 - 1e-12)) {
        sw.norms_ok = false;
        sw.failures.push_back("d=" + std::to_string(rep.degree) + " m=" + std::to_string(row.m) +
                              ": norm below floor c");
      }
    }
  }
  // Rounding allowance relative to the scale of S.
  bool nonnegative = true, nondecreasing = true;
  for (std::size_t i = 0; i < D; ++i) {
    if (min_margin[i] < -1e-12 * sw.reports[i].top_eigenvalue) nonnegative = false;
    if (i > 0 && min_margin[i] < min_margin[i - 1]) nondecreasing = false;
  }
  sw.margin_improving = nonnegative || nondecreasing;
  if (!sw.margin_improving) sw.failures.push_back("margin is negative and not improving across the sweep");
  return sw;
}

}  // namespace bergman
