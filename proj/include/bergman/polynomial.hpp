#pragma once

#include "bergman/bergman_space.hpp"

namespace bergman {

/// Polynomial in w_1..w_n truncated at the basis degree. coeffs(k) multiplies
/// the unnormalized monomial w^{alpha_k}.
struct Polynomial {
  BasisPtr basis;
  CVector coeffs;

  static Polynomial constant(const BasisPtr& basis, cplx c);
  /// The coordinate function w_i.
  static Polynomial variable(const BasisPtr& basis, int i);
  /// The linear form sum_i c_i w_i.
  static Polynomial linear(const BasisPtr& basis, const CVector& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(cplx s, Polynomial a);
/// Product with every term of degree > d dropped.
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial power(const Polynomial& p, int k);

}  // namespace bergman
