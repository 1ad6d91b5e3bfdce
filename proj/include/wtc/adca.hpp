#ifndef WTC_ADCA_HPP
#define WTC_ADCA_HPP

#include <optional>

#include "wtc/comirror.hpp"
#include "wtc/model.hpp"

namespace wtc {

struct AdcaConfig {
  int q = 5;             // history depth of the non-monotone monitor
  int max_outer = 500;
  int stall_window = 10;  // stop when the best rate has not improved this long
  double improve_tol = 1e-9;
  std::optional<CMat> x0;  // defaults to the scaled-identity start
  int inner_max_iters = 2000;
};

struct AdcaResult {
  CMat x;          // iterate with the best secrecy rate seen
  double cs = 0.0;
  SolverTrace trace;
};

// Accelerated DCA: linearize f_e at the extrapolation point V, maximize the
// surrogate with CoMirror, extrapolate with Nesterov coefficients, and accept
// the extrapolated point only when its rate is no worse than the worst of the
// last q+1 iterates. Trace extras: gamma, accepted_extrapolation, inner_iters.
AdcaResult adca_run(const WiretapChannel& ch, const ConstraintSet& cons, const AdcaConfig& cfg = {});

// Secrecy-capacity lower bound of the linearized subproblem,
//   fbar(x; v0) + ln|I + He v0 He^H| - tr(grad_fe(v0) v0),
// clamped at zero for reporting.
double adca_lower_bound(const WiretapChannel& ch, const CMat& v0, const CMat& x);

// Same surrogate without the reporting clamp (tight at x = v0).
double adca_lower_bound_raw(const WiretapChannel& ch, const CMat& v0, const CMat& x);

}  // namespace wtc

#endif  // WTC_ADCA_HPP
