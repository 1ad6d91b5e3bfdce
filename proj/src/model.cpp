#include "wtc/model.hpp"

#include <cmath>
#include <limits>

namespace wtc {

CMat WiretapChannel::stacked() const {
  CMat h(hb.rows() + he.rows(), hb.cols());
  h << hb, he;
  return h;
}

void WiretapChannel::validate() const {
  if (hb.size() == 0 || he.size() == 0) throw DimensionError("channel: hb and he must be nonempty");
  if (!hb.allFinite() || !he.allFinite()) throw InvariantError("channel: non-finite entries");
  if (hb.cols() != he.cols())
    throw DimensionError("channel: hb and he disagree on N_t (" + std::to_string(hb.cols()) + " vs " +
                         std::to_string(he.cols()) + ")");
  for (std::size_t l = 0; l < primaries.size(); ++l) {
    if (primaries[l].cols() != hb.cols())
      throw DimensionError("channel: primary " + std::to_string(l) + " disagrees on N_t");
    if (!primaries[l].allFinite()) throw InvariantError("channel: primary has non-finite entries");
  }
}

void ConstraintSet::validate(int nt) const {
  if (!spc && !papc)
    throw InvariantError("constraints: need spc or papc for a compact feasible set");
  if (spc && (!(*spc >= 0.0) || !std::isfinite(*spc)))
    throw InvariantError("constraints: spc must be a finite nonnegative power");
  if (papc) {
    if (papc->size() != nt)
      throw DimensionError("constraints: papc has " + std::to_string(papc->size()) + " entries, expected " +
                           std::to_string(nt));
    if (!(papc->minCoeff() >= 0.0)) throw InvariantError("constraints: papc entries must be nonnegative");
  }
  for (std::size_t l = 0; l < ipc.size(); ++l) {
    const auto& c = ipc[l];
    if (c.w.rows() != nt || c.w.cols() != nt)
      throw DimensionError("constraints: ipc weight " + std::to_string(l) + " is not N_t x N_t");
    check_hermitian(c.w, "ipc weight");
    if (!is_psd(c.w)) throw InvariantError("constraints: ipc weight " + std::to_string(l) + " not PSD");
    if (!(c.p >= 0.0)) throw InvariantError("constraints: ipc threshold must be nonnegative");
  }
}

double ConstraintSet::budget() const {
  double b = std::numeric_limits<double>::infinity();
  if (spc) b = *spc;
  if (papc) b = std::min(b, papc->sum());
  if (!std::isfinite(b)) throw InvariantError("constraints: unbounded trace budget");
  return b;
}

double ConstraintSet::max_functional_violation(const CMat& x) const {
  double g = -std::numeric_limits<double>::infinity();
  if (papc) {
    for (Eigen::Index i = 0; i < papc->size(); ++i) g = std::max(g, x(i, i).real() - (*papc)(i));
  }
  for (const auto& c : ipc) g = std::max(g, (c.w * x).trace().real() - c.p);
  return g;
}

bool ConstraintSet::feasible(const CMat& x, double tol) const {
  if (spc && x.trace().real() > *spc + tol) return false;
  const double g = max_functional_violation(x);
  return !(g > tol);
}

ConstraintSet ConstraintSet::with_spc(double p0) const {
  ConstraintSet c = *this;
  c.spc = p0;
  return c;
}

RatePair secrecy_rate(const WiretapChannel& ch, const CMat& x) {
  if (x.rows() != ch.nt() || x.cols() != ch.nt())
    throw DimensionError("secrecy_rate: covariance is not N_t x N_t");
  check_covariance(x);
  const int nr = ch.nr(), ne = ch.ne();
  const double fb = logdet_hpd(CMat::Identity(nr, nr) + ch.hb * x * ch.hb.adjoint(), "I + Hb X Hb^H");
  const double fe = logdet_hpd(CMat::Identity(ne, ne) + ch.he * x * ch.he.adjoint(), "I + He X He^H");
  const double raw = fb - fe;
  return RatePair{std::max(raw, 0.0), raw};
}

namespace {

CMat noise_covariance(const CMat& kbar, int nr, int ne) {
  if (kbar.rows() != nr || kbar.cols() != ne)
    throw DimensionError("kbar: expected N_r x N_e");
  CMat k(nr + ne, nr + ne);
  k.topLeftCorner(nr, nr) = CMat::Identity(nr, nr);
  k.topRightCorner(nr, ne) = kbar;
  k.bottomLeftCorner(ne, nr) = kbar.adjoint();
  k.bottomRightCorner(ne, ne) = CMat::Identity(ne, ne);
  return k;
}

}  // namespace

double saddle_objective(const WiretapChannel& ch, const CMat& kbar, const CMat& x) {
  check_covariance(x);
  const int nr = ch.nr(), ne = ch.ne();
  const CMat k = noise_covariance(kbar, nr, ne);
  const CMat h = ch.stacked();
  // log|I + K^{-1} H X H^H| = log|K + H X H^H| - log|K|
  const double num = logdet_hpd(k + h * x * h.adjoint(), "K + H X H^H");
  const double den = logdet_hpd(k, "K");
  const double fe = logdet_hpd(CMat::Identity(ne, ne) + ch.he * x * ch.he.adjoint(), "I + He X He^H");
  return num - den - fe;
}

CMat grad_fe(const WiretapChannel& ch, const CMat& x) {
  if (x.rows() != ch.nt() || x.cols() != ch.nt()) throw DimensionError("grad_fe: covariance is not N_t x N_t");
  const int ne = ch.ne();
  const CMat m = (CMat::Identity(ne, ne) + ch.he * x * ch.he.adjoint()).inverse();
  return hermitize(ch.he.adjoint() * m * ch.he);
}

CMat grad_saddle_x(const WiretapChannel& ch, const CMat& kbar, const CMat& x) {
  const int nr = ch.nr(), ne = ch.ne();
  const CMat k = noise_covariance(kbar, nr, ne);
  const CMat h = ch.stacked();
  const CMat a = k + h * x * h.adjoint();
  Eigen::LLT<CMat> llt(hermitize(a));
  if (llt.info() != Eigen::Success) throw NumericalError("grad_saddle_x: K + H X H^H not positive definite");
  const CMat first = h.adjoint() * llt.solve(h);
  return hermitize(first) - grad_fe(ch, x);
}

DegradednessReport is_degraded(const WiretapChannel& ch) {
  CMat delta = hermitize(ch.hb.adjoint() * ch.hb - ch.he.adjoint() * ch.he);
  const bool deg = min_eigenvalue(delta) >= -kPsdTol * std::max(1.0, delta.norm());
  return DegradednessReport{deg, std::move(delta)};
}

bool has_positive_secrecy(const WiretapChannel& ch) {
  const CMat delta = hermitize(ch.hb.adjoint() * ch.hb - ch.he.adjoint() * ch.he);
  return max_eigenvalue(delta) > kPsdTol;
}

CMat exp_correlation(int n, double r, double phi) {
  if (r < 0.0 || r > 1.0) throw InvariantError("exp_correlation: r must lie in [0,1]");
  CMat rmat(n, n);
  const Complex t = r * Complex(std::cos(phi), std::sin(phi));
  for (int i = 0; i < n; ++i) {
    rmat(i, i) = 1.0;
    Complex p = 1.0;
    for (int j = i + 1; j < n; ++j) {
      p *= t;
      rmat(i, j) = p;
      rmat(j, i) = std::conj(p);
    }
  }
  return rmat;
}

CMat kronecker_channel(int n_rows, int n_t, double r, double phi, double gamma, Philox& rng) {
  if (n_rows <= 0 || n_t <= 0) throw DimensionError("kronecker_channel: dimensions must be positive");
  if (gamma <= 0.0) throw InvariantError("kronecker_channel: gamma must be positive");
  const CMat rsqrt = psd_sqrt(exp_correlation(n_t, r, phi));
  CMat htilde(n_rows, n_t);
  for (int i = 0; i < n_rows; ++i)
    for (int j = 0; j < n_t; ++j) htilde(i, j) = rng.next_cgaussian();
  return gamma * htilde * rsqrt;
}

CMat kronecker_channel(int n_rows, int n_t, double r, double phi, double gamma, std::uint64_t seed) {
  Philox rng(seed);
  return kronecker_channel(n_rows, n_t, r, phi, gamma, rng);
}

double corr_distance(const CMat& rb, const CMat& re) {
  if (rb.rows() != re.rows() || rb.cols() != re.cols())
    throw DimensionError("corr_distance: size mismatch");
  const double nb = rb.norm(), ne = re.norm();
  if (nb == 0.0 || ne == 0.0) throw InvariantError("corr_distance: zero-norm input");
  return 1.0 - (rb * re).trace().real() / (nb * ne);
}

}  // namespace wtc
