#include "wtc/pbra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "wtc/centering.hpp"
#include "wtc/linalg.hpp"

namespace wtc {

void check_noise_correlation(const CMat& kbar) {
  if (!kbar.allFinite()) throw InvariantError("kbar: non-finite entries");
  const CMat kk = kbar * kbar.adjoint();
  if (max_eigenvalue(kk) > 1.0 - kNoiseEigFloor)
    throw InvariantError("kbar: K = [[I,Kbar],[Kbar^H,I]] is not strictly positive definite");
}

CMat assemble_noise_covariance(const CMat& kbar) {
  const Eigen::Index nr = kbar.rows(), ne = kbar.cols();
  CMat k(nr + ne, nr + ne);
  k.topLeftCorner(nr, nr) = CMat::Identity(nr, nr);
  k.topRightCorner(nr, ne) = kbar;
  k.bottomLeftCorner(ne, nr) = kbar.adjoint();
  k.bottomRightCorner(ne, ne) = CMat::Identity(ne, ne);
  return k;
}

PsiPartition PsiPartition::from(const CMat& psi, int nr, int ne) {
  if (psi.rows() != nr + ne || psi.cols() != nr + ne)
    throw DimensionError("PsiPartition: expected (N_r+N_e) square matrix");
  PsiPartition p;
  p.psi11 = psi.topLeftCorner(nr, nr);
  p.psi12 = psi.topRightCorner(nr, ne);
  p.psi22 = psi.bottomRightCorner(ne, ne);
  return p;
}

CMat PsiPartition::assemble() const {
  const Eigen::Index nr = psi11.rows(), ne = psi22.rows();
  CMat psi(nr + ne, nr + ne);
  psi.topLeftCorner(nr, nr) = psi11;
  psi.topRightCorner(nr, ne) = psi12;
  psi.bottomLeftCorner(ne, nr) = psi12.adjoint();
  psi.bottomRightCorner(ne, ne) = psi22;
  return psi;
}

CMat default_initial_covariance(const ConstraintSet& cons, int nt) {
  double c = cons.budget() / nt;
  if (cons.papc) c = std::min(c, cons.papc->minCoeff());
  for (const auto& ic : cons.ipc) {
    const double tw = ic.w.trace().real();
    if (tw > 0.0) c = std::min(c, ic.p / tw);
  }
  return 0.5 * c * CMat::Identity(nt, nt);
}

CMat x_update(const WiretapChannel& ch, const CMat& kbar, const ConstraintSet& cons,
              const XUpdateOptions& opts, SolverTrace* inner_trace) {
  check_noise_correlation(kbar);
  cons.validate(ch.nt());
  const CMat k = assemble_noise_covariance(kbar);
  const CMat h_eff = inv_sqrt_hpd(k, kNoiseEigFloor, "K") * ch.stacked();
  const LinearizedObjective obj = LinearizedObjective::pbra(h_eff, ch.he);

  CoMirrorConfig cfg;
  cfg.max_iters = opts.max_iters;
  cfg.x0 = opts.warm_start.value_or(default_initial_covariance(cons, ch.nt()));
  SubproblemResult sub = solve_subproblem(obj, cons, cfg);
  if (inner_trace) *inner_trace = sub.trace;
  if (sub.trace.status == SolveStatus::Infeasible)
    throw NumericalError("x_update: no feasible iterate found");
  if (!opts.center) return sub.x;
  return center_on_optimal_face(obj, cons, sub.x);
}

CMat k_update(const CMat& psi12) {
  if (!psi12.allFinite()) throw InvariantError("k_update: non-finite input");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(psi12 * psi12.adjoint()));
  RVec sigma = es.eigenvalues().cwiseMax(0.0);
  RVec xi(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    // sqrt round-off guard: the map is continuous at 0 with xi -> 1
    const double s = sigma(i) < 1e-14 ? 0.0 : sigma(i);
    xi(i) = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * s));
  }
  return -(es.eigenvectors() * xi.asDiagonal() * es.eigenvectors().adjoint()) * psi12;
}

double kkt_residual(const CMat& psi12, const CMat& kbar) {
  check_noise_correlation(kbar);
  const Eigen::Index nr = kbar.rows();
  const CMat s = CMat::Identity(nr, nr) - kbar * kbar.adjoint();
  Eigen::LLT<CMat> llt(hermitize(s));
  if (llt.info() != Eigen::Success) throw NumericalError("kkt_residual: I - Kbar Kbar^H singular");
  return (psi12 + llt.solve(kbar)).norm();
}

PbraResult pbra_run(const WiretapChannel& ch, const ConstraintSet& cons, const PbraConfig& cfg) {
  ch.validate();
  cons.validate(ch.nt());
  const int nr = ch.nr(), ne = ch.ne();
  const CMat h = ch.stacked();

  PbraResult out;
  out.kbar = CMat::Zero(nr, ne);  // K_0 = I
  CMat x = cfg.x0.value_or(default_initial_covariance(cons, ch.nt()));

  double f_prev = std::numeric_limits<double>::quiet_NaN();
  out.trace.status = SolveStatus::MaxIterations;
  for (int n = 1; n <= cfg.max_outer; ++n) {
    XUpdateOptions xopts;
    xopts.max_iters = cfg.inner_max_iters;
    xopts.center = cfg.center_each;
    xopts.warm_start = x;
    SolverTrace inner;
    x = x_update(ch, out.kbar, cons, xopts, &inner);

    const CMat k = assemble_noise_covariance(out.kbar);
    const double f = saddle_objective(ch, out.kbar, x);

    const CMat psi = (k + h * x * h.adjoint()).inverse();
    const PsiPartition part = PsiPartition::from(hermitize(psi), nr, ne);
    const CMat kbar_next = k_update(part.psi12);

    auto& rec = out.trace.push(n, f, 0.0);
    rec.extras["kkt_residual"] = kkt_residual(part.psi12, kbar_next);
    rec.extras["inner_iters"] = static_cast<double>(inner.elapsed_iterations);
    rec.extras["lambda_min_K"] = min_eigenvalue(k);

    if (n > 1 && std::abs(f - f_prev) < cfg.tol) {
      out.trace.status = SolveStatus::Converged;
      f_prev = f;
      break;
    }
    f_prev = f;
    out.kbar = kbar_next;
  }

  out.cs = f_prev;
  out.trace.best_objective = f_prev;
  if (cfg.center_final && !cfg.center_each) {
    const CMat k = assemble_noise_covariance(out.kbar);
    const CMat h_eff = inv_sqrt_hpd(k, kNoiseEigFloor, "K") * h;
    x = center_on_optimal_face(LinearizedObjective::pbra(h_eff, ch.he), cons, x);
  }
  out.x = x;
  return out;
}

RecoverResult recover_optimal_signaling(const WiretapChannel& ch, const ConstraintSet& cons,
                                        double cs_target, const RecoverConfig& cfg) {
  cons.validate(ch.nt());
  if (!cons.spc) throw InvariantError("recover_optimal_signaling: constraints must include SPC");
  const double p0 = *cons.spc;

  RecoverResult best;
  best.residual_gap = std::numeric_limits<double>::infinity();

  auto evaluate = [&](double p) {
    PbraResult r = pbra_run(ch, cons.with_spc(p), cfg.pbra);
    const double cs_x = secrecy_rate(ch, r.x).clamped;
    const double gap = std::abs(cs_x - cs_target);
    if (gap < best.residual_gap) {
      best.x = r.x;
      best.cs_at_x = cs_x;
      best.residual_gap = gap;
      best.p0_used = p;
    }
    return r;
  };

  if (cs_target <= cfg.bisect_tol) {
    best.x = CMat::Zero(ch.nt(), ch.nt());
    best.cs_at_x = 0.0;
    best.residual_gap = std::abs(cs_target);
    best.converged = true;
    best.p0_used = p0;
    return best;
  }

  evaluate(p0);
  if (best.residual_gap <= cfg.bisect_tol) {
    best.converged = true;
    return best;
  }

  // Saddle value is nondecreasing in the budget; bracket the smallest budget
  // that still attains cs_target, where the SPC binds and the saddle X is
  // optimal signaling. The predicate is monotone by assumption; a detected
  // flip falls back to a grid scan.
  std::vector<std::pair<double, bool>> history;
  auto predicate = [&](double p) {
    const bool ok = evaluate(p).cs >= cs_target - cfg.bisect_tol;
    history.emplace_back(p, ok);
    return ok;
  };
  auto non_monotone = [&]() {
    for (const auto& a : history)
      for (const auto& b : history)
        if (a.second && !b.second && a.first < b.first) return true;
    return false;
  };

  double hi = p0;           // saddle attains cs_target here by construction
  double lo = p0 / 1024.0;  // P0 / 2^10
  if (predicate(lo)) {
    hi = lo;
    lo = 0.0;
  }
  for (int it = 0; it < cfg.max_bisect && best.residual_gap > cfg.bisect_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (predicate(mid))
      hi = mid;
    else
      lo = mid;
    if (non_monotone()) break;
  }

  if (best.residual_gap > cfg.bisect_tol && non_monotone()) {
    for (int i = 1; i <= 64 && best.residual_gap > cfg.bisect_tol; ++i) evaluate(p0 * i / 64.0);
  }
  best.converged = best.residual_gap <= cfg.bisect_tol;
  return best;
}

}  // namespace wtc
