#ifndef WTC_LINALG_HPP
#define WTC_LINALG_HPP

#include "wtc/types.hpp"

namespace wtc {

inline CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

inline double frob(const CMat& a) { return a.norm(); }

bool is_hermitian(const CMat& a, double tol = kHermTol);

// Throws InvariantError when `a` deviates from Hermitian symmetry by more
// than tol * max(1, ||a||_F).
void check_hermitian(const CMat& a, const char* what, double tol = kHermTol);

// Eigenvalue extremes of a Hermitian matrix (input is hermitized first).
double min_eigenvalue(const CMat& a);
double max_eigenvalue(const CMat& a);

// lambda_min(a) >= -tol * max(1, ||a||_F)
bool is_psd(const CMat& a, double tol = kPsdTol);

// Validates a covariance candidate: finite, square, Hermitian and PSD within
// the module tolerances.
void check_covariance(const CMat& x, const char* what = "covariance");

// ln det of a Hermitian positive definite matrix via Cholesky.
double logdet_hpd(const CMat& a, const char* what = "matrix");

// Principal PSD square root via EVD; negative round-off eigenvalues clamp to 0.
CMat psd_sqrt(const CMat& a);

// A^{-1/2} of a Hermitian positive definite matrix via EVD. Eigenvalues below
// `floor` throw NumericalError: the caller's contract guarantees A > 0, so a
// tiny eigenvalue signals a bug, not a matrix to regularize.
CMat inv_sqrt_hpd(const CMat& a, double floor = kNoiseEigFloor, const char* what = "matrix");

// PSD projection: clamp negative eigenvalues to zero.
CMat psd_project(const CMat& a);

}  // namespace wtc

#endif  // WTC_LINALG_HPP
