#ifndef WTC_PBRA_HPP
#define WTC_PBRA_HPP

#include <optional>

#include "wtc/comirror.hpp"
#include "wtc/model.hpp"

namespace wtc {

// Kbar must keep K = [[I, Kbar],[Kbar^H, I]] strictly positive definite:
// lambda_max(Kbar Kbar^H) <= 1 - 1e-12.
void check_noise_correlation(const CMat& kbar);

// K = [[I, Kbar],[Kbar^H, I]]
CMat assemble_noise_covariance(const CMat& kbar);

// Blocks of Psi = (K + H X H^H)^{-1} partitioned at N_r.
struct PsiPartition {
  CMat psi11, psi12, psi22;
  static PsiPartition from(const CMat& psi, int nr, int ne);
  CMat assemble() const;
};

struct XUpdateOptions {
  int max_iters = 3000;
  // Polish the CoMirror maximizer onto the analytic center of the optimal
  // face; this pins down the returned X when the best response is non-unique.
  bool center = true;
  std::optional<CMat> warm_start;
};

// Best response in X at fixed noise correlation: maximizes
// log|K + H X H^H| - log|K| - log|I + He X He^H| over the constraint set via
// CoMirror on the whitened channel K^{-1/2} H. A non-null inner_trace
// receives the CoMirror run.
CMat x_update(const WiretapChannel& ch, const CMat& kbar, const ConstraintSet& cons,
              const XUpdateOptions& opts = {}, SolverTrace* inner_trace = nullptr);

// Closed-form worst-noise update: with Psi12 Psi12^H = U diag(sigma) U^H,
// Kbar = -U Xi U^H Psi12, Xi = 2 diag(1/(1+sqrt(1+4 sigma_i))). The result
// always satisfies the noise-correlation invariant strictly.
CMat k_update(const CMat& psi12);

// First-order optimality residual ||Psi12 + (I - Kbar Kbar^H)^{-1} Kbar||_F
// of the worst-noise problem (multiplier-free case).
double kkt_residual(const CMat& psi12, const CMat& kbar);

struct PbraConfig {
  int max_outer = 300;
  double tol = 1e-6;  // stop when |f_n - f_{n-1}| < tol
  int inner_max_iters = 3000;
  std::optional<CMat> x0;
  // Polish every X-update so each best response is first-order accurate;
  // required for the monotone-descent property. Sweeps that only consume the
  // saddle value can turn both off for speed.
  bool center_each = true;
  bool center_final = true;
};

struct PbraResult {
  CMat x;
  CMat kbar;
  double cs = 0.0;  // converged saddle value
  SolverTrace trace;
};

// Partial best response on the minimax problem: alternate the exact X best
// response with the closed-form worst-noise update, starting from K = I.
// Trace extras per outer iteration: kkt_residual, inner_iters, lambda_min_K.
PbraResult pbra_run(const WiretapChannel& ch, const ConstraintSet& cons, const PbraConfig& cfg = {});

struct RecoverConfig {
  double bisect_tol = 1e-3;
  int max_bisect = 40;
  PbraConfig pbra;
};

struct RecoverResult {
  CMat x;
  double cs_at_x = 0.0;       // secrecy rate of the returned covariance
  double residual_gap = 0.0;  // |cs_at_x - cs_target|
  bool converged = false;
  double p0_used = 0.0;
};

// Bisection over the SPC budget (other constraints fixed) until the saddle
// covariance achieves the target secrecy capacity; recovers optimal
// signaling when the raw saddle X does not.
RecoverResult recover_optimal_signaling(const WiretapChannel& ch, const ConstraintSet& cons,
                                        double cs_target, const RecoverConfig& cfg = {});

// Feasible default start c*I with c limited by every constraint; c is half
// the largest feasible scale, mirroring the (P0/2)-style initialization.
CMat default_initial_covariance(const ConstraintSet& cons, int nt);

}  // namespace wtc

#endif  // WTC_PBRA_HPP
