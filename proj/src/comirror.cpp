#include "wtc/comirror.hpp"

#include <cassert>
#include <cmath>

#include "wtc/linalg.hpp"
#include "wtc/projections.hpp"

namespace wtc {

LinearizedObjective LinearizedObjective::adca(CMat h_eff, CMat gamma) {
  check_hermitian(gamma, "linearization matrix");
  if (!is_psd(gamma)) throw InvariantError("linearization matrix: not PSD");
  if (gamma.rows() != h_eff.cols()) throw DimensionError("linearization matrix: wrong size");
  return LinearizedObjective{Mode::AdcaLinearized, std::move(h_eff), std::move(gamma), CMat()};
}

LinearizedObjective LinearizedObjective::pbra(CMat h_eff, CMat he) {
  if (he.cols() != h_eff.cols()) throw DimensionError("pbra objective: channel width mismatch");
  return LinearizedObjective{Mode::PbraExact, std::move(h_eff), CMat(), std::move(he)};
}

double LinearizedObjective::value(const CMat& x) const {
  const Eigen::Index m = h_eff.rows();
  const double fb = logdet_hpd(CMat::Identity(m, m) + h_eff * x * h_eff.adjoint(), "I + Heff X Heff^H");
  if (mode == Mode::AdcaLinearized) return fb - (gamma * x).trace().real();
  const Eigen::Index ne = he.rows();
  return fb - logdet_hpd(CMat::Identity(ne, ne) + he * x * he.adjoint(), "I + He X He^H");
}

CMat LinearizedObjective::gradient(const CMat& x) const {
  const Eigen::Index m = h_eff.rows();
  const CMat minv = (CMat::Identity(m, m) + h_eff * x * h_eff.adjoint()).inverse();
  CMat g = hermitize(h_eff.adjoint() * minv * h_eff);
  if (mode == Mode::AdcaLinearized) {
    g -= gamma;
  } else {
    const Eigen::Index ne = he.rows();
    const CMat ninv = (CMat::Identity(ne, ne) + he * x * he.adjoint()).inverse();
    g -= hermitize(he.adjoint() * ninv * he);
  }
  return g;
}

double LinearizedObjective::gradient_norm_bound() const {
  const double hterm = (h_eff.adjoint() * h_eff).norm();
  if (mode == Mode::AdcaLinearized) return gamma.norm() + hterm;
  return (he.adjoint() * he).norm() + hterm;
}

double omega_bound(const CMat& x0, double budget) {
  const double n0 = x0.size() == 0 ? 0.0 : x0.norm();
  return std::sqrt(0.5 * (budget * budget + n0 * n0));
}

double feasibility_tolerance(const ConstraintSet& cons) { return 1e-6 * cons.budget(); }

namespace {

// Most-violated functional constraint; ties break toward the smallest index,
// PAPC indices before IPC.
struct Violation {
  double g = -std::numeric_limits<double>::infinity();
  int index = -1;  // [0, nt) antenna, nt + l for IPC l
};

Violation worst_violation(const CMat& x, const ConstraintSet& cons, int nt) {
  Violation v;
  if (cons.papc) {
    for (int i = 0; i < nt; ++i) {
      const double g = x(i, i).real() - (*cons.papc)(i);
      if (g > v.g) {
        v.g = g;
        v.index = i;
      }
    }
  }
  for (std::size_t l = 0; l < cons.ipc.size(); ++l) {
    const double g = (cons.ipc[l].w * x).trace().real() - cons.ipc[l].p;
    if (g > v.g) {
      v.g = g;
      v.index = nt + static_cast<int>(l);
    }
  }
  return v;
}

}  // namespace

StepResult comirror_step(const CMat& x_prev, const LinearizedObjective& obj, const ConstraintSet& cons,
                         int k, double omega) {
  const int nt = obj.nt();
  const double budget = cons.budget();
  StepResult res;

  const Violation v = worst_violation(x_prev, cons, nt);
  if (v.g <= 0.0) {
    res.direction = obj.gradient(x_prev);
    assert(res.direction.norm() <= obj.gradient_norm_bound() + 1e-9);
  } else {
    res.constraint_step = true;
    res.violated_index = v.index;
    if (v.index < nt) {
      CMat e = CMat::Zero(nt, nt);
      e(v.index, v.index) = -1.0;
      res.direction = e;
    } else {
      res.direction = -cons.ipc[static_cast<std::size_t>(v.index - nt)].w;
    }
  }

  const double norm_e = res.direction.norm();
  if (norm_e == 0.0) {
    // Zero gradient at a feasible point: stationary for a concave objective.
    res.x = x_prev;
    res.stationary = !res.constraint_step;
    return res;
  }
  res.eta = omega / (norm_e * std::sqrt(static_cast<double>(k)));
  res.x = project_spectrahedron(x_prev + res.eta * res.direction, budget);
  return res;
}

SubproblemResult solve_subproblem(const LinearizedObjective& obj, const ConstraintSet& cons,
                                  const CoMirrorConfig& cfg) {
  const int nt = obj.nt();
  cons.validate(nt);
  const double budget = cons.budget();
  const double eps_feas = feasibility_tolerance(cons);

  CMat x = cfg.x0.size() == 0 ? CMat::Zero(nt, nt) : cfg.x0;
  if (x.trace().real() > budget * (1.0 + 1e-12) + 1e-12)
    throw InvariantError("solve_subproblem: x0 outside the spectrahedron");
  const double omega = cfg.omega_override.value_or(omega_bound(x, budget));

  SubproblemResult out;
  bool have_best = false;
  double best = -std::numeric_limits<double>::infinity();
  double best_at_window_start = best;
  int window_count = 0;

  auto consider = [&](const CMat& cand) {
    const double g = cons.max_functional_violation(cand);
    if (g <= eps_feas) {
      const double val = obj.value(cand);
      if (!have_best || val > best) {
        have_best = true;
        best = val;
        out.x = cand;
      }
    }
    return g;
  };

  consider(x);
  out.trace.status = SolveStatus::MaxIterations;
  for (int k = 1; k <= cfg.max_iters; ++k) {
    StepResult step = comirror_step(x, obj, cons, k, omega);
    x = step.x;
    const double g = consider(x);
    auto& rec = out.trace.push(k, have_best ? best : std::numeric_limits<double>::quiet_NaN(),
                               std::max(g, 0.0));
    rec.extras["constraint_step"] = step.constraint_step ? 1.0 : 0.0;
    if (step.stationary && have_best) {
      out.trace.status = SolveStatus::Converged;
      break;
    }
    if (++window_count >= cfg.stall_window) {
      if (have_best && best - best_at_window_start < cfg.stall_tol) {
        out.trace.status = SolveStatus::Converged;
        break;
      }
      best_at_window_start = best;
      window_count = 0;
    }
  }

  if (!have_best) {
    out.trace.status = SolveStatus::Infeasible;
    out.x = CMat::Zero(nt, nt);
    out.trace.best_objective = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.trace.best_objective = best;
  return out;
}

}  // namespace wtc
