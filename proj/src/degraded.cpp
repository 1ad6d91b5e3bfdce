#include "wtc/degraded.hpp"

#include <nlohmann/json.hpp>

#include "wtc/io.hpp"
#include "wtc/linalg.hpp"

namespace wtc {

namespace {

CMat delta_sqrt_of(const WiretapChannel& ch) {
  const DegradednessReport rep = is_degraded(ch);
  if (!rep.degraded) throw InvariantError("degraded reformulation: channel is not degraded");
  return psd_sqrt(rep.delta);
}

}  // namespace

CMat matrix_f(const WiretapChannel& ch, const CMat& x) {
  check_covariance(x);
  const CMat ds = delta_sqrt_of(ch);
  const int ne = ch.ne();
  const CMat e = CMat::Identity(ne, ne) + ch.he * x * ch.he.adjoint();
  const CMat cross = ds * x * ch.he.adjoint();
  return hermitize(CMat::Identity(ch.nt(), ch.nt()) + ds * x * ds - cross * e.inverse() * cross.adjoint());
}

CMat lmi_block(const WiretapChannel& ch, const CMat& x, const CMat& y) {
  const int nt = ch.nt(), ne = ch.ne();
  if (y.rows() != nt || y.cols() != nt) throw DimensionError("lmi_block: Y is not N_t x N_t");
  const CMat ds = delta_sqrt_of(ch);
  CMat block(nt + ne, nt + ne);
  block.topLeftCorner(nt, nt) = CMat::Identity(nt, nt) + ds * x * ds - y;
  block.topRightCorner(nt, ne) = ds * x * ch.he.adjoint();
  block.bottomLeftCorner(ne, nt) = ch.he * x * ds;
  block.bottomRightCorner(ne, ne) = CMat::Identity(ne, ne) + ch.he * x * ch.he.adjoint();
  return hermitize(block);
}

bool lmi_feasible(const WiretapChannel& ch, const CMat& x, const CMat& y) {
  const CMat block = lmi_block(ch, x, y);
  return min_eigenvalue(block) >= -kPsdTol * std::max(1.0, block.norm());
}

ReformulationReport verify_reformulation(const WiretapChannel& ch, const CMat& x) {
  ReformulationReport rep{};
  rep.rate_direct = secrecy_rate(ch, x).unclamped;
  rep.rate_via_f = logdet_hpd(matrix_f(ch, x), "F(X)");
  rep.gap = std::abs(rep.rate_via_f - rep.rate_direct);
  rep.pass = rep.gap <= 1e-8 * std::max(1.0, std::abs(rep.rate_direct));
  return rep;
}

nlohmann::json export_reformulation(const WiretapChannel& ch, const ConstraintSet& cons) {
  cons.validate(ch.nt());
  nlohmann::json j;
  j["schema"] = 1;
  j["delta_sqrt"] = matrix_to_json(delta_sqrt_of(ch));
  j["he"] = matrix_to_json(ch.he);
  nlohmann::json c;
  if (cons.spc) c["spc"] = *cons.spc;
  if (cons.papc) c["papc"] = std::vector<double>(cons.papc->data(), cons.papc->data() + cons.papc->size());
  nlohmann::json ipc = nlohmann::json::array();
  for (const auto& ic : cons.ipc) {
    nlohmann::json e;
    e["w"] = matrix_to_json(ic.w);
    e["p"] = ic.p;
    ipc.push_back(e);
  }
  c["ipc"] = ipc;
  j["constraints"] = c;
  return j;
}

}  // namespace wtc
