#include "wtc/centering.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "wtc/linalg.hpp"

namespace wtc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<CMat> hermitian_basis(int n) {
  std::vector<CMat> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    CMat m = CMat::Zero(n, n);
    m(i, i) = 1.0;
    basis.push_back(std::move(m));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat m = CMat::Zero(n, n);
      m(i, j) = s;
      m(j, i) = s;
      basis.push_back(std::move(m));
      CMat a = CMat::Zero(n, n);
      a(i, j) = Complex(0.0, s);
      a(j, i) = Complex(0.0, -s);
      basis.push_back(std::move(a));
    }
  return basis;
}

struct Slacks {
  RVec papc;          // P_i - X_ii
  double spc = kInf;  // P0 - tr X
  std::vector<double> ipc;
  double min() const {
    double m = spc;
    if (papc.size() > 0) m = std::min(m, papc.minCoeff());
    for (double s : ipc) m = std::min(m, s);
    return m;
  }
};

Slacks slacks_of(const CMat& x, const ConstraintSet& cons) {
  Slacks s;
  if (cons.papc) {
    s.papc = RVec(cons.papc->size());
    for (Eigen::Index i = 0; i < s.papc.size(); ++i) s.papc(i) = (*cons.papc)(i)-x(i, i).real();
  }
  if (cons.spc) s.spc = *cons.spc - x.trace().real();
  for (const auto& c : cons.ipc) s.ipc.push_back(c.p - (c.w * x).trace().real());
  return s;
}

// Largest c such that c*I is strictly inside; nonpositive means no interior.
double interior_scale(const ConstraintSet& cons, int nt) {
  double c = cons.budget() / nt;
  if (cons.papc) c = std::min(c, cons.papc->minCoeff());
  for (const auto& ic : cons.ipc) {
    const double tw = ic.w.trace().real();
    if (tw > 0.0) c = std::min(c, ic.p / tw);
  }
  return c;
}

double barrier_value(const CMat& x, const Slacks& s) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(x), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0 || s.min() <= 0.0) return -kInf;
  double b = es.eigenvalues().array().log().sum();
  if (s.papc.size() > 0) b += s.papc.array().log().sum();
  if (std::isfinite(s.spc)) b += std::log(s.spc);
  for (double v : s.ipc) b += std::log(v);
  return b;
}

}  // namespace

CMat center_on_optimal_face(const LinearizedObjective& obj, const ConstraintSet& cons, const CMat& x_hat,
                            const CenteringOptions& opts) {
  const int nt = obj.nt();
  const double c_int = interior_scale(cons, nt);
  if (!(c_int > 0.0)) return x_hat;  // no strict interior, nothing to center in

  const auto basis = hermitian_basis(nt);
  const int n = static_cast<int>(basis.size());
  const Eigen::Index m = obj.h_eff.rows();
  const Eigen::Index me = obj.mode == LinearizedObjective::Mode::PbraExact ? obj.he.rows() : 0;

  CMat x = (1.0 - opts.pull_inside) * x_hat + (opts.pull_inside * 0.25 * c_int) * CMat::Identity(nt, nt);
  {
    // make sure the start is strictly feasible; fall back to the interior point
    Slacks s = slacks_of(x, cons);
    if (min_eigenvalue(x) <= 0.0 || s.min() <= 0.0) x = 0.25 * c_int * CMat::Identity(nt, nt);
  }

  auto phi = [&](const CMat& xc, double mu) {
    const Slacks s = slacks_of(xc, cons);
    const double b = barrier_value(xc, s);
    if (b == -kInf) return -kInf;
    return obj.value(xc) + mu * b;
  };

  for (double mu : opts.mu_schedule) {
    for (int it = 0; it < opts.newton_iters; ++it) {
      const Slacks s = slacks_of(x, cons);

      const CMat minv = (CMat::Identity(m, m) + obj.h_eff * x * obj.h_eff.adjoint()).inverse();
      CMat ninv;
      if (me > 0) ninv = (CMat::Identity(me, me) + obj.he * x * obj.he.adjoint()).inverse();
      const CMat xinv = x.inverse();

      // gradient of f + mu*B
      CMat g = hermitize(obj.h_eff.adjoint() * minv * obj.h_eff);
      if (obj.mode == LinearizedObjective::Mode::AdcaLinearized)
        g -= obj.gamma;
      else
        g -= hermitize(obj.he.adjoint() * ninv * obj.he);
      CMat gb = hermitize(xinv);
      if (cons.papc)
        for (int i = 0; i < nt; ++i) gb(i, i) -= 1.0 / s.papc(i);
      if (cons.spc) gb -= (1.0 / s.spc) * CMat::Identity(nt, nt);
      for (std::size_t l = 0; l < cons.ipc.size(); ++l) gb -= (1.0 / s.ipc[l]) * cons.ipc[l].w;
      g += mu * gb;

      // Hessian over the Hermitian basis
      std::vector<CMat> tm(n), te(me > 0 ? n : 0), tx(n);
      for (int k = 0; k < n; ++k) {
        tm[k] = minv * (obj.h_eff * basis[k] * obj.h_eff.adjoint());
        if (me > 0) te[k] = ninv * (obj.he * basis[k] * obj.he.adjoint());
        tx[k] = xinv * basis[k];
      }
      RMat ipc_trk(n, static_cast<Eigen::Index>(cons.ipc.size()));
      for (std::size_t l = 0; l < cons.ipc.size(); ++l)
        for (int k = 0; k < n; ++k) ipc_trk(k, static_cast<Eigen::Index>(l)) = (cons.ipc[l].w * basis[k]).trace().real();

      RMat hess(n, n);
      for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
          double h = -(tm[k].transpose().cwiseProduct(tm[l])).sum().real();
          if (me > 0) h += (te[k].transpose().cwiseProduct(te[l])).sum().real();
          h -= mu * (tx[k].transpose().cwiseProduct(tx[l])).sum().real();
          if (cons.papc)
            for (int i = 0; i < nt; ++i)
              h -= mu * basis[k](i, i).real() * basis[l](i, i).real() / (s.papc(i) * s.papc(i));
          if (cons.spc) h -= mu * basis[k].trace().real() * basis[l].trace().real() / (s.spc * s.spc);
          for (std::size_t q = 0; q < cons.ipc.size(); ++q)
            h -= mu * ipc_trk(k, static_cast<Eigen::Index>(q)) * ipc_trk(l, static_cast<Eigen::Index>(q)) /
                 (s.ipc[q] * s.ipc[q]);
          hess(k, l) = h;
          hess(l, k) = h;
        }
      }

      RVec gvec(n);
      for (int k = 0; k < n; ++k) gvec(k) = (g * basis[k]).trace().real();

      Eigen::LDLT<RMat> ldlt(-hess);  // -hess should be positive definite
      RVec d = ldlt.solve(gvec);
      double lam2 = gvec.dot(d);
      if (ldlt.info() != Eigen::Success || !(lam2 > 0.0)) {
        d = gvec;  // fall back to plain gradient ascent
        lam2 = gvec.squaredNorm();
      }
      if (lam2 < opts.decrement_tol) break;

      CMat dir = CMat::Zero(nt, nt);
      for (int k = 0; k < n; ++k) dir += d(k) * basis[k];

      const double phi0 = phi(x, mu);
      double t = 1.0;
      bool moved = false;
      while (t > 1e-13) {
        const CMat xn = hermitize(x + t * dir);
        const double phin = phi(xn, mu);
        if (phin > -kInf && phin >= phi0 + 0.25 * t * lam2) {
          x = xn;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
  }
  return x;
}

}  // namespace wtc
