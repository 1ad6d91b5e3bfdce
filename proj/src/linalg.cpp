#include "wtc/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace wtc {

bool is_hermitian(const CMat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= tol * scale;
}

void check_hermitian(const CMat& a, const char* what, double tol) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(what) + ": not square (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ")");
  if (!a.allFinite()) throw InvariantError(std::string(what) + ": non-finite entries");
  if (!is_hermitian(a, tol)) throw InvariantError(std::string(what) + ": not Hermitian within tolerance");
}

double min_eigenvalue(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool is_psd(const CMat& a, double tol) {
  return min_eigenvalue(a) >= -tol * std::max(1.0, a.norm());
}

void check_covariance(const CMat& x, const char* what) {
  check_hermitian(x, what);
  if (!is_psd(x)) throw InvariantError(std::string(what) + ": not PSD within tolerance");
}

double logdet_hpd(const CMat& a, const char* what) {
  Eigen::LLT<CMat> llt(hermitize(a));
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + ": not positive definite in logdet");
  double ld = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index i = 0; i < L.rows(); ++i) ld += std::log(L(i, i).real());
  return 2.0 * ld;
}

CMat psd_sqrt(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a));
  RVec w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

CMat inv_sqrt_hpd(const CMat& a, double floor, const char* what) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a));
  const RVec& w = es.eigenvalues();
  if (w.minCoeff() < floor)
    throw NumericalError(std::string(what) + ": eigenvalue " + std::to_string(w.minCoeff()) +
                         " below floor in inverse square root");
  RVec s = w.cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

CMat psd_project(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a));
  RVec w = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace wtc
