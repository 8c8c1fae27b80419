#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>

#include "cfr/gaussint.hpp"

namespace cfr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Caller broke a precondition (dimension mismatch and the like).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An equation log with dependent rows reached a projector computation.
/// This signals an internal logic fault: dependent equations are never stored.
class DependentEquationLog : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hermitian positive-semidefinite matrix, validated on construction.
class QuadraticForm {
 public:
  explicit QuadraticForm(CMatrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

/// Real part of a* V a.  Imaginary residue below 1e-9 is discarded.
double hermitian_form(std::span<const GaussInt> a, const QuadraticForm& V);

/// Orthogonal projector onto the row span of E: P = E*(E E*)^{-1} E.
/// Returns the dim x dim zero matrix for an empty log.
CMatrix projector(const GaussianIntMatrix& E, int dim);

CMatrix to_cmatrix(const GaussianIntMatrix& m);

}  // namespace cfr
