#include "wtc/adca.hpp"

#include <cmath>
#include <deque>

#include "wtc/linalg.hpp"
#include "wtc/pbra.hpp"

namespace wtc {

// fbar(x; v0) - f_e(v0) + tr(grad_fe(v0) v0): the concavity linearization of
// f_e makes this tight at x = v0 and a lower bound everywhere.
double adca_lower_bound_raw(const WiretapChannel& ch, const CMat& v0, const CMat& x) {
  const int nr = ch.nr(), ne = ch.ne();
  const CMat gamma = grad_fe(ch, v0);
  const double fbar = logdet_hpd(CMat::Identity(nr, nr) + ch.hb * x * ch.hb.adjoint(), "I + Hb X Hb^H") -
                      (gamma * x).trace().real();
  const double fe_v0 = logdet_hpd(CMat::Identity(ne, ne) + ch.he * v0 * ch.he.adjoint(), "I + He V0 He^H");
  return fbar - fe_v0 + (gamma * v0).trace().real();
}

double adca_lower_bound(const WiretapChannel& ch, const CMat& v0, const CMat& x) {
  return std::max(0.0, adca_lower_bound_raw(ch, v0, x));
}

AdcaResult adca_run(const WiretapChannel& ch, const ConstraintSet& cons, const AdcaConfig& cfg) {
  ch.validate();
  cons.validate(ch.nt());
  if (cfg.q < 0) throw InvariantError("adca: q must be nonnegative");

  const CMat x0 = cfg.x0.value_or(default_initial_covariance(cons, ch.nt()));
  if (!cons.feasible(x0, feasibility_tolerance(cons)) || !is_psd(x0))
    throw InvariantError("adca: x0 infeasible");

  AdcaResult out;
  CMat x_prev = x0;
  CMat x_cur = x0;
  CMat v = x0;  // V_0 = X_0
  double t_cur = 0.5 * (1.0 + std::sqrt(5.0));

  // rates C_s(X_0..X_n); the monitor looks at the last q+1 of them
  std::deque<double> cs_window;
  cs_window.push_back(secrecy_rate(ch, x0).clamped);

  out.cs = cs_window.back();
  out.x = x0;
  int since_improve = 0;
  out.trace.status = SolveStatus::MaxIterations;

  for (int n = 1; n <= cfg.max_outer; ++n) {
    const LinearizedObjective obj = LinearizedObjective::adca(ch.hb, grad_fe(ch, v));
    CoMirrorConfig inner_cfg;
    inner_cfg.max_iters = cfg.inner_max_iters;
    inner_cfg.x0 = x_cur;  // warm start from the previous solution
    SubproblemResult sub = solve_subproblem(obj, cons, inner_cfg);
    if (sub.trace.status == SolveStatus::Infeasible) throw NumericalError("adca: inner solver infeasible");

    x_prev = x_cur;
    x_cur = sub.x;

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_cur * t_cur));
    const double coeff = (t_cur - 1.0) / t_next;
    CMat z = x_cur + coeff * (x_cur - x_prev);
    // Z may leave the PSD cone; the monitor and the next linearization only
    // need grad_fe(Z), which requires PSD.
    if (min_eigenvalue(z) < 0.0) z = psd_project(z);
    t_cur = t_next;

    const double cs_n = secrecy_rate(ch, x_cur).clamped;
    cs_window.push_back(cs_n);
    while (static_cast<int>(cs_window.size()) > cfg.q + 1) cs_window.pop_front();
    double gamma_n = cs_window.front();
    for (double c : cs_window) gamma_n = std::min(gamma_n, c);

    // The extrapolated point must stay feasible: the ascent chain
    // C_s(X_n) >= C_s(V_{n-1}) compares the subproblem maximizer against its
    // linearization point, which only works when that point lies in the
    // feasible set.
    const bool z_feasible = z.trace().real() <= cons.budget() + feasibility_tolerance(cons) &&
                            cons.max_functional_violation(z) <= feasibility_tolerance(cons);
    const bool accept = z_feasible && secrecy_rate(ch, z).clamped >= gamma_n;
    v = accept ? z : x_cur;

    auto& rec = out.trace.push(n, cs_n, std::max(cons.max_functional_violation(x_cur), 0.0));
    rec.extras["gamma"] = gamma_n;
    rec.extras["accepted_extrapolation"] = accept ? 1.0 : 0.0;
    rec.extras["inner_iters"] = static_cast<double>(sub.trace.elapsed_iterations);
    rec.extras["cs_v"] = secrecy_rate(ch, v).clamped;  // rate at the linearization point

    if (cs_n > out.cs + cfg.improve_tol) {
      out.cs = cs_n;
      out.x = x_cur;
      since_improve = 0;
    } else {
      ++since_improve;
    }
    if (since_improve >= cfg.stall_window) {
      out.trace.status = SolveStatus::Converged;
      break;
    }
  }
  out.trace.best_objective = out.cs;
  return out;
}

}  // namespace wtc
