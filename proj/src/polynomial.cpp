#include "bergman/polynomial.hpp"

namespace bergman {

namespace {
void require_same_basis(const Polynomial& a, const Polynomial& b) {
  if (a.basis != b.basis) throw DomainError("polynomials live on different bases");
}
}  // namespace

Polynomial Polynomial::constant(const BasisPtr& basis, cplx c) {
  Polynomial p{basis, CVector::Zero(basis->size())};
  p.coeffs(0) = c;
  return p;
}

Polynomial Polynomial::variable(const BasisPtr& basis, int i) {
  if (i < 0 || i >= basis->dim()) throw DomainError("variable index out of range");
  Polynomial p{basis, CVector::Zero(basis->size())};
  if (basis->degree() >= 1) {
    MultiIndex e(basis->dim(), 0);
    e[i] = 1;
    p.coeffs(*basis->position(e)) = 1.0;
  }
  return p;
}

Polynomial Polynomial::linear(const BasisPtr& basis, const CVector& c) {
  if (c.size() != basis->dim()) throw DomainError("linear form has wrong length");
  Polynomial p{basis, CVector::Zero(basis->size())};
  for (int i = 0; i < basis->dim(); ++i) p += c(i) * variable(basis, i);
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_basis(*this, o);
  coeffs += o.coeffs;
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_basis(*this, o);
  coeffs -= o.coeffs;
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  coeffs *= s;
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(cplx s, Polynomial a) { return a *= s; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_basis(a, b);
  const TruncatedBasis& B = *a.basis;
  Polynomial out{a.basis, CVector::Zero(B.size())};
  for (Eigen::Index k = 0; k < B.size(); ++k) {
    if (a.coeffs(k) == 0.0) continue;
    for (Eigen::Index l = 0; l < B.size(); ++l) {
      const Eigen::Index s = B.sum_position(k, l);
      if (s >= 0) out.coeffs(s) += a.coeffs(k) * b.coeffs(l);
    }
  }
  return out;
}

Polynomial power(const Polynomial& p, int k) {
  if (k < 0) throw DomainError("negative polynomial power");
  Polynomial result = Polynomial::constant(p.basis, 1.0);
  for (int i = 0; i < k; ++i) result = result * p;
  return result;
}

}  // namespace bergman
