#pragma once

#include "bergman/separated_sequence.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

// U_z f = (f o phi_z) k_z. Since phi_z is an involution, U_z is self-adjoint
// as well as unitary; its compressions are Hermitian up to quadrature error.

/// Compression of U_z with entries <U_z e_alpha, e_beta> by quadrature.
OperatorMatrix unitary_matrix(const BallPoint& z, const BasisPtr& basis, const QuadratureRule& rule);

/// Compression of U_a from the truncated power series of (e_alpha o phi_a) k_a.
/// Exact up to rounding; one_minus_norm2 = 1 - |a|^2 is passed separately so
/// points extremely close to the sphere keep full relative accuracy.
OperatorMatrix unitary_matrix_series(const CVector& a, double one_minus_norm2, const BasisPtr& basis);
OperatorMatrix unitary_matrix_series(const BallPoint& a, const BasisPtr& basis);

/// R e_alpha = (-1)^{|alpha|} e_alpha, i.e. f(z) -> f(-z); equals U_0.
OperatorMatrix reflection(const BasisPtr& basis);

/// Compression of U_{z_k} U_{z_l} for two points of a separated sequence,
/// through the identity U_{s zeta} U_{t zeta} = U_{c zeta} R with c = phi_s(t).
OperatorMatrix ray_product(const SeparatedSequence& seq, int k, int l, const BasisPtr& basis);

/// ||P U^* U P - P|| with P the projection onto degrees <= probe_degree.
/// The compression drops the part of U e_alpha above the basis degree, which
/// is what this measures; the top degrees always lose mass and are excluded.
double unitarity_defect(const OperatorMatrix& u, int probe_degree);

struct ConjugationCheck {
  OperatorMatrix lhs;  ///< U_z T_f U_z^*
  OperatorMatrix rhs;  ///< T_{f o phi_z}
  double defect = 0.0; ///< operator norm of lhs - rhs on the probe block
};

ConjugationCheck conjugate_toeplitz(const BallPoint& z, const Symbol& f, const BasisPtr& basis,
                                    const QuadratureRule& rule, int probe_degree);

struct WeakPairing {
  cplx value;
  double bound = 0.0;
};

/// <U_{z_m} k_z, k_w> in closed form together with the decay bound
/// ((1-|w|^2)(1-|z|^2)(1-|z_m|^2))^{(n+1)/2} / ((1-|z|)(1-|w|))^{n+1}.
WeakPairing weak_pairing_exact(const BallPoint& zm, const BallPoint& z, const BallPoint& w);

/// The same pairing through truncated kernel expansions and a compression of U_{z_m}.
cplx weak_pairing_truncated(const OperatorMatrix& u_zm, const BallPoint& z, const BallPoint& w);

/// The function U_a h, evaluated pointwise; one_minus_norm2 = 1 - |a|^2.
BallFunction unitary_image(const Expansion& h, const CVector& a, double one_minus_norm2);

}  // namespace bergman
