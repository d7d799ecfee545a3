#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bergman {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Evaluation contract for a function on the ball; receives raw coordinates.
using BallFunction = std::function<cplx(const CVector&)>;

/// Invalid argument: precondition on a domain value violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a value it cannot stand behind (non-finite, underflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// <z, w> = sum z_i conj(w_i)
inline cplx inner(const CVector& z, const CVector& w) { return w.dot(z); }

}  // namespace bergman
