#ifndef WTC_EXPERIMENTS_HPP
#define WTC_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wtc/comirror.hpp"
#include "wtc/model.hpp"

namespace wtc {

// The 2x2 real channel pair whose wiretap channel is nondegraded and whose
// minimax saddle differs from the direct maximizer.
WiretapChannel example2x2_channels();

// The printed 4x2 / 3x2 complex convergence-benchmark channels.
WiretapChannel benchmark4x2_channels();

// PAPC convention P_i = factor * P0 / N_t used throughout the experiments.
ConstraintSet joint_spc_papc(double p0, int nt, double factor = 1.2);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct ConvergenceRun {
  std::string algo;   // "adca", "ao" (adca with q = 0) or "pbra"
  double snr_db = 0.0;
  double terminal = 0.0;  // best C_s (adca/ao) or final saddle value (pbra)
  SolverTrace trace;
};

// Runs the requested algorithms on one channel across SNRs. P0 = SNR in
// linear scale (unit noise); a PAPC/IPC pattern in `pattern` is rescaled to
// P_i = 1.2 P0/N_t per SNR while IPC thresholds stay fixed.
std::vector<ConvergenceRun> run_convergence_experiment(const WiretapChannel& ch,
                                                       const ConstraintSet& pattern,
                                                       const std::vector<double>& snr_db_list,
                                                       const std::vector<std::string>& algos);

struct SweepPoint {
  int nt = 0;
  int ne = 0;
  double mean_capacity = 0.0;
  int trials = 0;
};

struct SweepConfig {
  double snr_db = 10.0;
  double r = 0.9;
  double gamma = 0.9;
  int trials = 100;
  std::uint64_t seed = 0;
  int nr = 4;
  bool with_ipc = false;          // add one primary receiver
  double ipc_threshold_db = 5.0;  // interference cap at the primary
  int np_antennas = 4;
  int jobs = 1;
};

// Kronecker-channel sweep over (N_t, N_e) grids; per-trial streams derive
// from (seed, trial) so results do not depend on scheduling.
std::vector<SweepPoint> run_papc_sweep(const std::vector<int>& nt_list, const std::vector<int>& ne_list,
                                       const SweepConfig& cfg);

// Projected subgradient with a constant step on the same subproblem;
// best-feasible tracking identical to CoMirror so curves compare fairly.
SolverTrace subgradient_baseline(const LinearizedObjective& obj, const ConstraintSet& cons, double step,
                                 int iters, const CMat& x0);

// 0.1 * Omega / ||E_0||: a step of one tenth of the CoMirror first move.
double default_subgradient_step(const LinearizedObjective& obj, const ConstraintSet& cons, const CMat& x0);

}  // namespace wtc

#endif  // WTC_EXPERIMENTS_HPP
