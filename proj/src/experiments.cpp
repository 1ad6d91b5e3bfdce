#include "wtc/experiments.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "wtc/adca.hpp"
#include "wtc/linalg.hpp"
#include "wtc/pbra.hpp"
#include "wtc/projections.hpp"

namespace wtc {

WiretapChannel example2x2_channels() {
  WiretapChannel ch;
  ch.hb = CMat(2, 2);
  ch.hb << Complex(-0.4176), Complex(1.4224), Complex(-1.4963), Complex(-2.0426);
  ch.he = CMat(2, 2);
  ch.he << Complex(0.6726), Complex(1.4335), Complex(1.7762), Complex(-0.3694);
  return ch;
}

WiretapChannel benchmark4x2_channels() {
  WiretapChannel ch;
  ch.hb = CMat(4, 2);
  ch.hb << Complex(-0.3974, 0.5641), Complex(-0.0939, 0.2532),
      Complex(-0.0216, 0.8051), Complex(-0.6734, 0.2605),
      Complex(-1.1903, -0.3939), Complex(-0.9728, -0.4468),
      Complex(0.2017, -0.6897), Complex(-0.9450, -0.7306);
  ch.he = CMat(3, 2);
  ch.he << Complex(-0.2015, 0.3127), Complex(-0.6178, -1.048),
      Complex(-0.0559, -0.3000), Complex(-0.3858, -0.2817),
      Complex(0.6935, 0.05587), Complex(-0.5064, -0.1443);
  return ch;
}

ConstraintSet joint_spc_papc(double p0, int nt, double factor) {
  ConstraintSet cons;
  cons.spc = p0;
  cons.papc = RVec::Constant(nt, factor * p0 / nt);
  return cons;
}

std::vector<ConvergenceRun> run_convergence_experiment(const WiretapChannel& ch,
                                                       const ConstraintSet& pattern,
                                                       const std::vector<double>& snr_db_list,
                                                       const std::vector<std::string>& algos) {
  ch.validate();
  std::vector<ConvergenceRun> runs;
  for (double snr_db : snr_db_list) {
    const double p0 = db_to_linear(snr_db);
    ConstraintSet cons;
    cons.spc = p0;
    if (pattern.papc) cons.papc = RVec::Constant(ch.nt(), 1.2 * p0 / ch.nt());
    cons.ipc = pattern.ipc;

    for (const auto& algo : algos) {
      ConvergenceRun run;
      run.algo = algo;
      run.snr_db = snr_db;
      if (algo == "adca" || algo == "ao") {
        AdcaConfig acfg;
        acfg.q = algo == "ao" ? 0 : 5;
        AdcaResult res = adca_run(ch, cons, acfg);
        run.terminal = res.cs;
        run.trace = std::move(res.trace);
      } else if (algo == "pbra") {
        PbraResult res = pbra_run(ch, cons);
        run.terminal = res.cs;
        run.trace = std::move(res.trace);
      } else {
        throw Error("run_convergence_experiment: unknown algorithm '" + algo + "'");
      }
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

namespace {

double sweep_trial(int nt, int ne, const SweepConfig& cfg, std::uint64_t trial) {
  Philox rng(cfg.seed, trial);
  const double phi_e = 2.0 * M_PI * rng.next_double();
  const CMat hb = kronecker_channel(cfg.nr, nt, cfg.r, 0.0, 1.0, rng);
  const CMat he = kronecker_channel(ne, nt, cfg.r, phi_e, cfg.gamma, rng);
  WiretapChannel ch{hb, he, {}};

  const double p0 = db_to_linear(cfg.snr_db);
  ConstraintSet cons = joint_spc_papc(p0, nt);
  if (cfg.with_ipc) {
    const CMat hp = kronecker_channel(cfg.np_antennas, nt, cfg.r, M_PI / 4.0, cfg.gamma, rng);
    cons.ipc.push_back({hermitize(hp.adjoint() * hp), db_to_linear(cfg.ipc_threshold_db)});
    ch.primaries.push_back(hp);
  }

  PbraConfig pcfg;
  pcfg.tol = 1e-5;
  pcfg.inner_max_iters = 1500;
  pcfg.max_outer = 150;
  pcfg.center_each = false;  // only the saddle value enters the average
  pcfg.center_final = false;
  return pbra_run(ch, cons, pcfg).cs;
}

}  // namespace

std::vector<SweepPoint> run_papc_sweep(const std::vector<int>& nt_list, const std::vector<int>& ne_list,
                                       const SweepConfig& cfg) {
  if (cfg.trials < 1) throw InvariantError("run_papc_sweep: trials must be >= 1");
  std::vector<SweepPoint> points;
  for (int nt : nt_list) {
    for (int ne : ne_list) {
      std::vector<double> vals(static_cast<std::size_t>(cfg.trials));
      const int jobs = std::max(1, cfg.jobs);
      if (jobs == 1) {
        for (int t = 0; t < cfg.trials; ++t) vals[static_cast<std::size_t>(t)] = sweep_trial(nt, ne, cfg, t);
      } else {
        std::vector<std::future<void>> work;
        std::atomic<int> next{0};
        for (int j = 0; j < jobs; ++j)
          work.push_back(std::async(std::launch::async, [&]() {
            for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
              vals[static_cast<std::size_t>(t)] = sweep_trial(nt, ne, cfg, t);
          }));
        for (auto& w : work) w.get();
      }
      double mean = 0.0;
      for (double v : vals) mean += v;
      mean /= cfg.trials;
      points.push_back(SweepPoint{nt, ne, mean, cfg.trials});
    }
  }
  return points;
}

SolverTrace subgradient_baseline(const LinearizedObjective& obj, const ConstraintSet& cons, double step,
                                 int iters, const CMat& x0) {
  if (!(step > 0.0)) throw InvariantError("subgradient_baseline: step must be positive");
  const int nt = obj.nt();
  cons.validate(nt);
  const double budget = cons.budget();
  const double eps_feas = feasibility_tolerance(cons);

  SolverTrace trace;
  CMat x = x0;
  bool have_best = false;
  double best = -std::numeric_limits<double>::infinity();

  auto consider = [&](const CMat& cand) {
    const double g = cons.max_functional_violation(cand);
    if (g <= eps_feas) {
      const double val = obj.value(cand);
      if (!have_best || val > best) {
        have_best = true;
        best = val;
      }
    }
    return g;
  };

  consider(x);
  for (int k = 1; k <= iters; ++k) {
    const double g = cons.max_functional_violation(x);
    CMat e;
    if (g <= 0.0) {
      e = obj.gradient(x);
    } else {
      // most-violated constraint, smallest index first, PAPC before IPC
      e = CMat::Zero(nt, nt);
      double worst = -std::numeric_limits<double>::infinity();
      int which = -1;
      if (cons.papc)
        for (int i = 0; i < nt; ++i) {
          const double gi = x(i, i).real() - (*cons.papc)(i);
          if (gi > worst) {
            worst = gi;
            which = i;
          }
        }
      for (std::size_t l = 0; l < cons.ipc.size(); ++l) {
        const double gl = (cons.ipc[l].w * x).trace().real() - cons.ipc[l].p;
        if (gl > worst) {
          worst = gl;
          which = nt + static_cast<int>(l);
        }
      }
      if (which < nt)
        e(which, which) = -1.0;
      else
        e = -cons.ipc[static_cast<std::size_t>(which - nt)].w;
    }
    if (e.norm() == 0.0) break;
    x = project_spectrahedron(x + step * e, budget);
    const double viol = consider(x);
    trace.push(k, have_best ? best : std::numeric_limits<double>::quiet_NaN(), std::max(viol, 0.0));
  }
  trace.status = have_best ? SolveStatus::Converged : SolveStatus::Infeasible;
  trace.best_objective = best;
  return trace;
}

double default_subgradient_step(const LinearizedObjective& obj, const ConstraintSet& cons, const CMat& x0) {
  const double omega = omega_bound(x0, cons.budget());
  const CMat e0 = obj.gradient(x0);
  const double n0 = e0.norm();
  if (n0 == 0.0) return 0.1 * omega;
  return 0.1 * omega / n0;
}

}  // namespace wtc
