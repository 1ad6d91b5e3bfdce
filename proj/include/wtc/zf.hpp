#ifndef WTC_ZF_HPP
#define WTC_ZF_HPP

#include "wtc/model.hpp"
#include "wtc/types.hpp"

namespace wtc {

// Orthonormal basis V of null(he); columns satisfy ||he V||_F <= 1e-10 ||he||_F.
// Singular values below 1e-10 * sigma_max count as zero. Throws NullSpaceEmpty
// when he has full column rank.
CMat null_space_basis(const CMat& he);

struct ZfResult {
  CMat t;        // reduced covariance, k x k
  double rate;   // achieved secrecy rate (Eve receives nothing)
  CMat x_full;   // V T V^H
  SolverTrace trace;
};

// Zero-forcing baseline: restrict signaling to null(he) and maximize Bob's
// rate over the reduced covariance with the CoMirror engine. SPC maps to
// tr(T) <= P0; PAPC rows and IPC become trace constraints in T.
ZfResult zf_rate(const WiretapChannel& ch, const ConstraintSet& cons, int max_iters = 4000);

}  // namespace wtc

#endif  // WTC_ZF_HPP
