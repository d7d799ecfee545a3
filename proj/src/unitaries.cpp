#include "bergman/unitaries.hpp"

#include <cmath>

#include "bergman/parallel.hpp"
#include "bergman/polynomial.hpp"

namespace bergman {

namespace {

CMatrix probe_block(const CMatrix& m, Eigen::Index p) { return m.topLeftCorner(p, p); }

}  // namespace

OperatorMatrix unitary_matrix(const BallPoint& z, const BasisPtr& basis, const QuadratureRule& rule) {
  if (z.dim() != basis->dim() || rule.dim != basis->dim()) throw DomainError("dimension mismatch");
  const CMatrix E = basis->evaluate_at_nodes(rule);
  CMatrix V(basis->size(), rule.size());
  const CVector& a = z.coords();
  parallel_for(static_cast<std::size_t>(rule.size()), [&](std::size_t i) {
    const auto c = static_cast<Eigen::Index>(i);
    const CVector w = rule.nodes.col(c);
    V.col(c) = basis->evaluate(moebius_raw(a, w)) * kernel_raw(a, w);
  });
  if (!V.allFinite()) throw NumericalError("non-finite value in the U_z integrand");
  return {basis, E.conjugate() * rule.weights.asDiagonal() * V.transpose(), {}};
}

OperatorMatrix unitary_matrix_series(const CVector& a, double one_minus_norm2, const BasisPtr& basis) {
  const int n = basis->dim();
  const int d = basis->degree();
  if (a.size() != n) throw DomainError("point has wrong dimension for basis");
  if (!(one_minus_norm2 > 0.0 && one_minus_norm2 <= 1.0)) throw DomainError("1 - |a|^2 must lie in (0,1]");
  const double s = std::sqrt(one_minus_norm2);

  // l(w) = <w, a>, G = 1 / (1 - l) truncated, k_a = s^{n+1} G^{n+1}.
  const Polynomial ell = Polynomial::linear(basis, a.conjugate());
  Polynomial G = Polynomial::constant(basis, 1.0);
  {
    Polynomial term = G;
    for (int k = 1; k <= d; ++k) {
      term = term * ell;
      G += term;
    }
  }
  const Polynomial kern = std::pow(s, n + 1) * power(G, n + 1);

  // phi_a(w)_i = a_i - L_i G with L_i = s (w_i - l a_i / (1 + s)).
  std::vector<std::vector<Polynomial>> phi_powers(n);
  for (int i = 0; i < n; ++i) {
    const Polynomial L = s * (Polynomial::variable(basis, i) - (a(i) / (1.0 + s)) * ell);
    const Polynomial phi = Polynomial::constant(basis, a(i)) - L * G;
    phi_powers[i].push_back(Polynomial::constant(basis, 1.0));
    for (int k = 1; k <= d; ++k) phi_powers[i].push_back(phi_powers[i].back() * phi);
  }

  CMatrix m(basis->size(), basis->size());
  parallel_for(static_cast<std::size_t>(basis->size()), [&](std::size_t col) {
    const auto c = static_cast<Eigen::Index>(col);
    const MultiIndex& alpha = basis->index(c);
    Polynomial p = kern;
    for (int i = 0; i < n; ++i)
      if (alpha[i] > 0) p = p * phi_powers[i][alpha[i]];
    for (Eigen::Index r = 0; r < basis->size(); ++r) m(r, c) = p.coeffs(r) * basis->norm(r) / basis->norm(c);
  });
  return {basis, std::move(m), {}};
}

OperatorMatrix unitary_matrix_series(const BallPoint& a, const BasisPtr& basis) {
  return unitary_matrix_series(a.coords(), 1.0 - a.norm2(), basis);
}

OperatorMatrix reflection(const BasisPtr& basis) {
  CMatrix m = CMatrix::Zero(basis->size(), basis->size());
  for (Eigen::Index k = 0; k < basis->size(); ++k) m(k, k) = (basis->degree_of(k) % 2 == 0) ? 1.0 : -1.0;
  return {basis, std::move(m), {}};
}

OperatorMatrix ray_product(const SeparatedSequence& seq, int k, int l, const BasisPtr& basis) {
  const double gk = seq.gaps.at(k);
  const double gl = seq.gaps.at(l);
  const double c = ray_moebius_coefficient(gk, gl);
  // 1 - c^2 = (1 - t_k^2)(1 - t_l^2) / (1 - t_k t_l)^2, all from the gaps.
  const double denom = gk + gl - gk * gl;
  const double one_minus = (gk * (2.0 - gk)) * (gl * (2.0 - gl)) / (denom * denom);
  const OperatorMatrix u = unitary_matrix_series(CVector(c * seq.zeta.coords()), one_minus, basis);
  return product(u, reflection(basis));
}

double unitarity_defect(const OperatorMatrix& u, int probe_degree) {
  const Eigen::Index p = u.basis->block_size(probe_degree);
  const CMatrix g = u.m.adjoint() * u.m;
  return op_norm(CMatrix(probe_block(g, p) - CMatrix::Identity(p, p)));
}

ConjugationCheck conjugate_toeplitz(const BallPoint& z, const Symbol& f, const BasisPtr& basis,
                                    const QuadratureRule& rule, int probe_degree) {
  const OperatorMatrix u = unitary_matrix(z, basis, rule);
  const OperatorMatrix t = toeplitz_matrix(f, basis, rule);
  ConjugationCheck out{{basis, u.m * t.m * u.m.adjoint(), {}},
                       toeplitz_matrix(f.composed_with(z), basis, rule), 0.0};
  const Eigen::Index p = basis->block_size(probe_degree);
  out.defect = op_norm(CMatrix(probe_block(out.lhs.m, p) - probe_block(out.rhs.m, p)));
  return out;
}

WeakPairing weak_pairing_exact(const BallPoint& zm, const BallPoint& z, const BallPoint& w) {
  if (zm.dim() != z.dim() || z.dim() != w.dim()) throw DomainError("dimension mismatch");
  const int n = z.dim();
  const double e = 0.5 * (n + 1);
  const double num = std::pow((1.0 - w.norm2()) * (1.0 - z.norm2()) * (1.0 - zm.norm2()), e);
  const cplx den = std::pow((1.0 - inner(moebius_raw(zm.coords(), w.coords()), z.coords())) *
                                (1.0 - inner(w.coords(), zm.coords())),
                            n + 1);
  WeakPairing out;
  out.value = num / den;
  out.bound = num / std::pow((1.0 - z.norm()) * (1.0 - w.norm()), n + 1);
  return out;
}

cplx weak_pairing_truncated(const OperatorMatrix& u_zm, const BallPoint& z, const BallPoint& w) {
  const Expansion kz = kernel_expansion(z, u_zm.basis);
  const Expansion kw = kernel_expansion(w, u_zm.basis);
  return kw.coeffs.dot(u_zm.m * kz.coeffs);
}

BallFunction unitary_image(const Expansion& h, const CVector& a, double one_minus_norm2) {
  const int n = h.basis->dim();
  const double pre = std::pow(one_minus_norm2, 0.5 * (n + 1));
  return [h, a, pre, n](const CVector& w) {
    return eval_expansion(h, moebius_raw(a, w)) * pre / std::pow(1.0 - inner(w, a), n + 1);
  };
}

}  // namespace bergman
