#ifndef WTC_DEGRADED_HPP
#define WTC_DEGRADED_HPP

#include "wtc/model.hpp"

#include <nlohmann/json_fwd.hpp>

namespace wtc {

// F(X) = I + D^{1/2} X D^{1/2} - D^{1/2} X He^H (I + He X He^H)^{-1} He X D^{1/2}
// with D = Hb^H Hb - He^H He >= 0. For degraded channels ln|F(X)| equals the
// unclamped secrecy rate, which turns the capacity problem into a standard
// convex program.
CMat matrix_f(const WiretapChannel& ch, const CMat& x);

// Schur-complement block [[I + D^{1/2}XD^{1/2} - Y, D^{1/2}XHe^H],
//                         [HeXD^{1/2},             I + HeXHe^H]]
CMat lmi_block(const WiretapChannel& ch, const CMat& x, const CMat& y);

// lambda_min(block) >= -eps_psd * max(1, ||block||_F)
bool lmi_feasible(const WiretapChannel& ch, const CMat& x, const CMat& y);

struct ReformulationReport {
  double rate_direct;   // unclamped secrecy rate
  double rate_via_f;    // ln|F(X)|
  double gap;           // |difference|
  bool pass;            // gap <= 1e-8 * max(1, |rate_direct|)
};

ReformulationReport verify_reformulation(const WiretapChannel& ch, const CMat& x);

// Problem data of the convex reformulation in a documented JSON schema so an
// external solver can be attached: {"schema", "delta_sqrt", "he", "constraints"}.
nlohmann::json export_reformulation(const WiretapChannel& ch, const ConstraintSet& cons);

}  // namespace wtc

#endif  // WTC_DEGRADED_HPP
