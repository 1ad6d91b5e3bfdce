#include "wtc/zf.hpp"

#include <Eigen/SVD>

#include "wtc/comirror.hpp"
#include "wtc/linalg.hpp"

namespace wtc {

CMat null_space_basis(const CMat& he) {
  Eigen::JacobiSVD<CMat> svd(he, Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * smax) ++rank;
  const Eigen::Index k = he.cols() - rank;
  if (k <= 0) throw NullSpaceEmpty("null_space_basis: He has full column rank");
  return svd.matrixV().rightCols(k);
}

ZfResult zf_rate(const WiretapChannel& ch, const ConstraintSet& cons, int max_iters) {
  ch.validate();
  cons.validate(ch.nt());
  const CMat v = null_space_basis(ch.he);
  const Eigen::Index k = v.cols();

  // Reduced constraints in T: tr(T) <= budget (V orthonormal), PAPC rows and
  // IPC both become trace constraints tr(W T) <= p.
  ConstraintSet reduced;
  reduced.spc = cons.budget();
  if (cons.papc) {
    for (int i = 0; i < ch.nt(); ++i) {
      const CMat row = v.row(i);
      reduced.ipc.push_back({hermitize(row.adjoint() * row), (*cons.papc)(i)});
    }
  }
  for (const auto& ic : cons.ipc) reduced.ipc.push_back({hermitize(v.adjoint() * ic.w * v), ic.p});

  const LinearizedObjective obj = LinearizedObjective::adca(ch.hb * v, CMat::Zero(k, k));
  CoMirrorConfig cfg;
  cfg.max_iters = max_iters;
  cfg.x0 = CMat::Zero(k, k);
  SubproblemResult sub = solve_subproblem(obj, reduced, cfg);
  if (sub.trace.status == SolveStatus::Infeasible) throw NumericalError("zf_rate: inner solver infeasible");

  ZfResult out;
  out.t = std::move(sub.x);
  out.x_full = hermitize(v * out.t * v.adjoint());
  out.rate = secrecy_rate(ch, out.x_full).clamped;
  out.trace = std::move(sub.trace);
  return out;
}

}  // namespace wtc
