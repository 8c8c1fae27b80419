#include "cfr/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cfr {

namespace {
constexpr double kHermTol = 1e-9;
constexpr double kPsdTol = 1e-9;
constexpr double kCondLimit = 1e12;
}  // namespace

QuadraticForm::QuadraticForm(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw ContractViolation("quadratic form must be square and nonempty");
  }
  double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kHermTol)) {
    throw ContractViolation("quadratic form is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw ContractViolation("quadratic form is not PSD");
  }
}

double hermitian_form(std::span<const GaussInt> a, const QuadraticForm& V) {
  const int n = V.dim();
  if (static_cast<int>(a.size()) != n) {
    throw ContractViolation("hermitian_form: dimension mismatch");
  }
  Complex acc{};
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    Complex ai = to_complex(a[i]);
    for (int j = 0; j < n; ++j) {
      if (a[j].is_zero()) continue;
      acc += std::conj(ai) * V.matrix()(i, j) * to_complex(a[j]);
    }
  }
  return acc.real();
}

CMatrix to_cmatrix(const GaussianIntMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m.at(i, j));
  }
  return out;
}

CMatrix projector(const GaussianIntMatrix& E, int dim) {
  if (E.rows() == 0) return CMatrix::Zero(dim, dim);
  if (E.cols() != dim) throw ContractViolation("projector: dimension mismatch");
  if (exact_rank(E) != E.rows()) throw DependentEquationLog("dependent equation log");

  CMatrix Ec = to_cmatrix(E);
  CMatrix gram = Ec * Ec.adjoint();
  // Logs are tiny (<= L x L); a dense solve is exact enough, but a badly
  // conditioned Gram still signals a logically dependent log.
  Eigen::JacobiSVD<CMatrix> svd(gram);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > kCondLimit) {
    throw DependentEquationLog("dependent equation log");
  }
  CMatrix gram_inv = gram.partialPivLu().solve(CMatrix::Identity(E.rows(), E.rows()));
  return Ec.adjoint() * gram_inv * Ec;
}

}  // namespace cfr
