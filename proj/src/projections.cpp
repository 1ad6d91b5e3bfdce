#include "wtc/projections.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <vector>

#include "wtc/linalg.hpp"

namespace wtc {

SimplexProjection project_simplex_detail(const RVec& v, double budget) {
  if (v.size() == 0) throw DimensionError("project_simplex: empty vector");
  if (!v.allFinite()) throw InvariantError("project_simplex: non-finite entries");
  if (budget < 0.0) throw InvariantError("project_simplex: negative budget");

  RVec clamped = v.cwiseMax(0.0);
  // Round-off guard: eigenvalues within 1e-12 of zero count as zero.
  for (Eigen::Index i = 0; i < clamped.size(); ++i)
    if (clamped(i) < 1e-12) clamped(i) = 0.0;

  if (clamped.sum() <= budget) return {clamped, 0.0};

  std::vector<double> u(clamped.data(), clamped.data() + clamped.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, tau = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double cand = (cumsum - budget) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) {
      rho = j + 1;
      tau = cand;
    }
  }
  (void)rho;
  RVec out = (clamped.array() - tau).cwiseMax(0.0);
  return {out, tau};
}

RVec project_simplex(const RVec& v, double budget) { return project_simplex_detail(v, budget).value; }

CMat project_spectrahedron(const CMat& xbar, double budget) {
  check_hermitian(xbar, "project_spectrahedron input", 1e-6);
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(xbar));
  if (es.info() != Eigen::Success) throw NumericalError("project_spectrahedron: EVD failed");
  const RVec w = project_simplex(es.eigenvalues(), budget);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace wtc
