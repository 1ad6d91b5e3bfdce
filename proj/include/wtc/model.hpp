#ifndef WTC_MODEL_HPP
#define WTC_MODEL_HPP

#include <optional>
#include <vector>

#include "wtc/linalg.hpp"
#include "wtc/rng.hpp"
#include "wtc/types.hpp"

namespace wtc {

// Channels of the wiretap model: Bob (hb), Eve (he) and any primary receivers
// whose interference must stay bounded. All share the transmit dimension N_t.
struct WiretapChannel {
  CMat hb;
  CMat he;
  std::vector<CMat> primaries;

  int nt() const { return static_cast<int>(hb.cols()); }
  int nr() const { return static_cast<int>(hb.rows()); }
  int ne() const { return static_cast<int>(he.rows()); }

  // Extended channel H = [hb; he] stacked row-wise.
  CMat stacked() const;

  void validate() const;
};

struct InterferenceConstraint {
  CMat w;    // Hermitian PSD, N_t x N_t
  double p;  // interference threshold, linear power
};

// Feasible set: X PSD with optional tr(X) <= spc, diag(X) <= papc and
// tr(w_l X) <= p_l. At least one of spc/papc must be present so the set is
// compact (IPC alone need not bound X).
struct ConstraintSet {
  std::optional<double> spc;
  std::optional<RVec> papc;
  std::vector<InterferenceConstraint> ipc;

  void validate(int nt) const;

  // Trace bound of the projection domain: spc when present, tightened by
  // sum(papc) when that is smaller.
  double budget() const;

  // Largest functional-constraint violation max_i g_i(x) over PAPC and IPC
  // (the constraints CoMirror treats via subgradient steps). -inf if none.
  double max_functional_violation(const CMat& x) const;

  // All constraints, including SPC, satisfied within tol (absolute).
  bool feasible(const CMat& x, double tol) const;

  ConstraintSet with_spc(double p0) const;
};

struct RatePair {
  double clamped;    // [f_b - f_e]_+, the secrecy rate of Eq-style reporting
  double unclamped;  // f_b - f_e
};

// Secrecy rate ln|I + Hb X Hb^H| - ln|I + He X He^H| in nats, clamped at 0,
// with the raw difference alongside.
RatePair secrecy_rate(const WiretapChannel& ch, const CMat& x);

// ln|I + K^{-1} H X H^H| - ln|I + He X He^H| with H the stacked channel and
// K = [[I, kbar],[kbar^H, I]]. Upper-bounds the unclamped secrecy rate.
double saddle_objective(const WiretapChannel& ch, const CMat& kbar, const CMat& x);

// He^H (I + He X He^H)^{-1} He
CMat grad_fe(const WiretapChannel& ch, const CMat& x);

// H^H (K + H X H^H)^{-1} H - He^H (I + He X He^H)^{-1} He
CMat grad_saddle_x(const WiretapChannel& ch, const CMat& kbar, const CMat& x);

struct DegradednessReport {
  bool degraded;
  CMat delta;  // Hb^H Hb - He^H He, for reuse
};

DegradednessReport is_degraded(const WiretapChannel& ch);

// True iff delta has at least one strictly positive eigenvalue, i.e. a
// positive secrecy rate is achievable.
bool has_positive_secrecy(const WiretapChannel& ch);

// Exponential transmit correlation [R]_{i,j} = (r e^{j phi})^{j-i} for j >= i,
// Hermitian completion below the diagonal.
CMat exp_correlation(int n, double r, double phi);

// Kronecker-model channel gamma * Htilde * R^{1/2}, Htilde i.i.d. CN(0,1)
// drawn row-major (real then imaginary) from the given stream.
CMat kronecker_channel(int n_rows, int n_t, double r, double phi, double gamma, Philox& rng);
CMat kronecker_channel(int n_rows, int n_t, double r, double phi, double gamma, std::uint64_t seed);

// d_corr = 1 - tr(Rb Re) / (||Rb||_F ||Re||_F), in [0, 1] for PSD inputs.
double corr_distance(const CMat& rb, const CMat& re);

}  // namespace wtc

#endif  // WTC_MODEL_HPP
