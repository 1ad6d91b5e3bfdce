#ifndef WTC_COMIRROR_HPP
#define WTC_COMIRROR_HPP

#include <optional>

#include "wtc/model.hpp"
#include "wtc/types.hpp"

namespace wtc {

// Concave objective maximized by the CoMirror engine over the spectrahedron:
//   AdcaLinearized:  ln|I + Heff X Heff^H| - Re tr(gamma X)
//                    (gamma is the fixed linearization matrix, Hermitian PSD)
//   PbraExact:       ln|I + Heff X Heff^H| - ln|I + He X He^H|
//                    (the exact saddle objective at fixed K, Heff = K^{-1/2}H)
struct LinearizedObjective {
  enum class Mode { AdcaLinearized, PbraExact };

  Mode mode;
  CMat h_eff;
  CMat gamma;  // AdcaLinearized only
  CMat he;     // PbraExact only

  static LinearizedObjective adca(CMat h_eff, CMat gamma);
  static LinearizedObjective pbra(CMat h_eff, CMat he);

  int nt() const { return static_cast<int>(h_eff.cols()); }
  double value(const CMat& x) const;
  CMat gradient(const CMat& x) const;

  // Appendix-style bound ||grad|| <= ||gamma||_F + ||Heff^H Heff||_F (the
  // PbraExact second term is itself a gradient of the same shape).
  double gradient_norm_bound() const;
};

struct CoMirrorConfig {
  int max_iters = 2000;
  CMat x0;  // start in the spectrahedron; defaulted by solve_subproblem if empty
  std::optional<double> omega_override;
  // Stop when the best feasible objective improves by less than stall_tol
  // over stall_window consecutive iterations.
  double stall_tol = 1e-8;
  int stall_window = 200;
};

// Omega upper bound sqrt((P0^2 + ||X0||_F^2)/2) used in the step size rule.
double omega_bound(const CMat& x0, double budget);

struct StepResult {
  CMat x;               // projected next iterate
  CMat direction;       // E before projection
  double eta = 0.0;     // step length Omega/(||E|| sqrt(k))
  bool constraint_step = false;
  int violated_index = -1;   // PAPC antenna or N_t + IPC index when constraint_step
  bool stationary = false;   // feasible with zero gradient
};

// One CoMirror iteration: ascend the objective gradient when all functional
// constraints hold, otherwise descend the most-violated constraint's
// subgradient; project back onto the spectrahedron.
StepResult comirror_step(const CMat& x_prev, const LinearizedObjective& obj, const ConstraintSet& cons,
                         int k, double omega);

struct SubproblemResult {
  CMat x;
  SolverTrace trace;
};

// Runs comirror_step from cfg.x0, tracking the best iterate that satisfies
// every functional constraint within eps_feas = 1e-6 * budget. Status
// Infeasible when no such iterate was seen.
SubproblemResult solve_subproblem(const LinearizedObjective& obj, const ConstraintSet& cons,
                                  const CoMirrorConfig& cfg);

// Feasibility tolerance used when electing the best iterate.
double feasibility_tolerance(const ConstraintSet& cons);

}  // namespace wtc

#endif  // WTC_COMIRROR_HPP
