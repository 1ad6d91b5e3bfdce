// Command-line front end: solve single wiretap instances, generate Kronecker
// channels, validate solutions, and run the experiment suites.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "wtc/adca.hpp"
#include "wtc/degraded.hpp"
#include "wtc/experiments.hpp"
#include "wtc/io.hpp"
#include "wtc/linalg.hpp"
#include "wtc/pbra.hpp"
#include "wtc/zf.hpp"

using nlohmann::json;
using namespace wtc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", std::gmtime(&t));
  return buf;
}

RVec parse_list(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) vals.push_back(std::stod(tok));
  }
  RVec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

struct ConstraintFlags {
  std::optional<double> spc;
  std::optional<double> snr_db;
  std::string papc_list;
  std::optional<double> papc_factor;
  std::string ipc_list;  // thresholds (linear), one per channel primary

  ConstraintSet build(const WiretapChannel& ch) const {
    ConstraintSet cons;
    if (spc && snr_db) throw Error("--spc and --snr-db are mutually exclusive");
    if (spc) cons.spc = *spc;
    if (snr_db) cons.spc = db_to_linear(*snr_db);
    if (!papc_list.empty() && papc_factor) throw Error("--papc and --papc-factor are mutually exclusive");
    if (!papc_list.empty()) {
      RVec p = parse_list(papc_list);
      if (p.size() == 1 && ch.nt() > 1) p = RVec::Constant(ch.nt(), p(0));
      cons.papc = p;
    }
    if (papc_factor) {
      if (!cons.spc) throw Error("--papc-factor needs --spc or --snr-db");
      cons.papc = RVec::Constant(ch.nt(), *papc_factor * *cons.spc / ch.nt());
    }
    if (!ipc_list.empty()) {
      const RVec thresholds = parse_list(ipc_list);
      if (static_cast<std::size_t>(thresholds.size()) != ch.primaries.size())
        throw Error("--ipc needs one threshold per primary channel (" +
                    std::to_string(ch.primaries.size()) + " present)");
      for (Eigen::Index l = 0; l < thresholds.size(); ++l) {
        const CMat& hl = ch.primaries[static_cast<std::size_t>(l)];
        cons.ipc.push_back({hermitize(hl.adjoint() * hl), thresholds(l)});
      }
    }
    cons.validate(ch.nt());
    return cons;
  }
};

json solution_json(const std::string& algo, const CMat& x, const RatePair& rate, SolveStatus status,
                   bool bits) {
  json j;
  j["schema"] = 1;
  j["algo"] = algo;
  j["X"] = matrix_to_json(x);
  j["C_s"] = rate.clamped;
  j["C_s_unclamped"] = rate.unclamped;
  if (bits) j["C_s_bits"] = rate.clamped / std::log(2.0);
  j["status"] = to_string(status);
  return j;
}

int cmd_solve(const std::string& channel_path, const ConstraintFlags& cf, const std::string& algo,
              int q, int max_outer, double tol, int inner_iters, bool recover, bool bits,
              const std::string& out_prefix) {
  WiretapChannel ch = load_channel(channel_path);
  ConstraintSet cons = cf.build(ch);
  if (!has_positive_secrecy(ch))
    std::cerr << "warning: Hb^H Hb - He^H He has no positive eigenvalue; secrecy capacity is 0\n";

  json out;
  out["schema"] = 1;
  out["channel"] = channel_path;
  bool converged = true;

  const bool zero_budget = cons.budget() <= 0.0;
  auto run_adca = [&]() {
    AdcaConfig acfg;
    acfg.q = q;
    acfg.max_outer = max_outer;
    acfg.inner_max_iters = inner_iters;
    AdcaResult res = adca_run(ch, cons, acfg);
    out["adca"] = solution_json("adca", res.x, secrecy_rate(ch, res.x), res.trace.status, bits);
    save_trace_csv(res.trace, {"gamma", "accepted_extrapolation", "inner_iters"},
                   out_prefix + "_adca_trace.csv");
    converged = converged && res.trace.status == SolveStatus::Converged;
  };
  auto run_pbra = [&]() {
    PbraConfig pcfg;
    pcfg.max_outer = max_outer;
    pcfg.tol = tol;
    pcfg.inner_max_iters = inner_iters;
    PbraResult res = pbra_run(ch, cons, pcfg);
    json j = solution_json("pbra", res.x, secrecy_rate(ch, res.x), res.trace.status, bits);
    j["saddle_value"] = res.cs;
    j["kbar"] = matrix_to_json(res.kbar);
    if (recover) {
      RecoverResult rec = recover_optimal_signaling(ch, cons, res.cs);
      j["recovered_X"] = matrix_to_json(rec.x);
      j["recovered_C_s"] = rec.cs_at_x;
      j["recovered_gap"] = rec.residual_gap;
      j["recovered_p0"] = rec.p0_used;
    }
    out["pbra"] = j;
    save_trace_csv(res.trace, {"kkt_residual", "inner_iters", "lambda_min_K"},
                   out_prefix + "_pbra_trace.csv");
    converged = converged && res.trace.status == SolveStatus::Converged;
  };

  if (zero_budget) {
    // only the zero covariance is feasible
    const CMat x0 = CMat::Zero(ch.nt(), ch.nt());
    out[algo == "both" ? "pbra" : algo] =
        solution_json(algo, x0, secrecy_rate(ch, x0), SolveStatus::Converged, bits);
  } else if (algo == "adca") {
    run_adca();
  } else if (algo == "pbra") {
    run_pbra();
  } else if (algo == "both") {
    run_adca();
    run_pbra();
  } else if (algo == "zf") {
    ZfResult res = zf_rate(ch, cons);
    out["zf"] = solution_json("zf", res.x_full, secrecy_rate(ch, res.x_full), res.trace.status, bits);
    out["zf"]["T"] = matrix_to_json(res.t);
    converged = res.trace.status != SolveStatus::Infeasible;
  } else {
    throw Error("unknown --algo '" + algo + "'");
  }

  save_json_file(out, out_prefix + ".json");
  std::cout << out.dump(2) << "\n";
  return converged ? kExitOk : kExitSolver;
}

int cmd_generate(int nt, int nr, int ne, double r, double phi, std::optional<double> phi_e, double gamma,
                 std::uint64_t seed, int np, int nl, double phi_p, const std::string& out_path) {
  Philox rng(seed);
  WiretapChannel ch;
  ch.hb = kronecker_channel(nr, nt, r, phi, 1.0, rng);
  ch.he = kronecker_channel(ne, nt, r, phi_e.value_or(phi), gamma, rng);
  for (int l = 0; l < np; ++l) ch.primaries.push_back(kronecker_channel(nl, nt, r, phi_p, gamma, rng));
  save_channel(ch, out_path);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& channel_path, const std::string& solution_path,
                 const ConstraintFlags& cf) {
  WiretapChannel ch = load_channel(channel_path);
  json sol = load_json_file(solution_path);
  // accept either a bare solution object or the solve output with per-algo keys
  if (!sol.contains("X")) {
    for (const char* key : {"pbra", "adca", "zf"})
      if (sol.contains(key) && sol[key].contains("X")) {
        sol = sol[key];
        break;
      }
  }
  if (!sol.contains("X")) throw Error("solution file has no X");
  const CMat x = matrix_from_json(sol["X"], "X");

  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  bool herm_ok = true;
  try {
    check_covariance(x, "X");
  } catch (const Error& e) {
    herm_ok = false;
  }
  report("covariance Hermitian PSD", herm_ok);

  std::optional<ConstraintSet> cons;
  try {
    cons = cf.build(ch);
  } catch (const Error&) {
    // constraints optional for validate
  }
  if (cons) {
    const double tol = 1e-6 * std::max(1.0, cons->budget());
    report("constraint feasibility", cons->feasible(x, tol));
  }

  const auto deg = is_degraded(ch);
  if (deg.degraded) {
    const auto rep = verify_reformulation(ch, x);
    std::ostringstream det;
    det << "gap=" << rep.gap;
    report("degraded log-det identity", rep.pass, det.str());
    report("LMI feasible at Y=F(X)", lmi_feasible(ch, x, matrix_f(ch, x)));
  }

  if (sol.contains("kbar")) {
    const CMat kbar = matrix_from_json(sol["kbar"], "kbar");
    bool inv_ok = true;
    try {
      check_noise_correlation(kbar);
    } catch (const Error&) {
      inv_ok = false;
    }
    report("noise correlation invariant", inv_ok);
    if (inv_ok) {
      const CMat k = assemble_noise_covariance(kbar);
      const CMat h = ch.stacked();
      const CMat psi = (k + h * x * h.adjoint()).inverse();
      const auto part = PsiPartition::from(hermitize(psi), ch.nr(), ch.ne());
      const double res_self = kkt_residual(part.psi12, k_update(part.psi12));
      std::ostringstream det;
      det << "residual=" << res_self;
      report("worst-noise closed form self-consistent", res_self <= 1e-8, det.str());
      const double res_sol = kkt_residual(part.psi12, kbar);
      std::ostringstream det2;
      det2 << "residual=" << res_sol;
      report("kbar is the best response to X", res_sol <= 1e-4, det2.str());
    }
  }

  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
            << "\n";
  return failures == 0 ? kExitOk : 1;
}

json load_experiment_config(const std::string& path) {
  json cfg = load_json_file(path);
  if (!cfg.is_object()) throw Error("config: expected a JSON object");
  if (!cfg.contains("schema") || cfg["schema"] != 1) throw Error("config.schema: expected 1");
  for (auto& [key, value] : cfg.items()) {
    if (key == "schema") continue;
    if (key == "snr_db" || key == "nt_list" || key == "ne_list") {
      if (!value.is_array()) throw Error("config." + key + ": expected an array");
    } else if (key == "r" || key == "gamma" || key == "ipc_threshold_db") {
      if (!value.is_number()) throw Error("config." + key + ": expected a number");
    } else if (key == "trials" || key == "nr" || key == "np_antennas") {
      if (!value.is_number_integer()) throw Error("config." + key + ": expected an integer");
    } else if (key == "with_ipc") {
      if (!value.is_boolean()) throw Error("config." + key + ": expected a boolean");
    } else {
      throw Error("config." + key + ": unknown field");
    }
  }
  return cfg;
}

int cmd_experiment(const std::string& suite, std::uint64_t seed, int trials, const std::string& out_dir,
                   int jobs, const std::string& config_path) {
  json cfg = json::object();
  if (!config_path.empty()) cfg = load_experiment_config(config_path);

  std::filesystem::create_directories(out_dir);
  const std::string base = out_dir + "/" + suite + "_" + std::to_string(seed) + "_" + timestamp();

  if (suite == "fig1") {
    const WiretapChannel ch = benchmark4x2_channels();
    std::vector<double> snrs = cfg.contains("snr_db") ? cfg["snr_db"].get<std::vector<double>>()
                                                      : std::vector<double>{5.0, 10.0};
    ConstraintSet pattern = joint_spc_papc(1.0, ch.nt());
    auto runs = run_convergence_experiment(ch, pattern, snrs, {"adca", "ao", "pbra"});
    std::ofstream os(base + ".csv");
    os << "algo,snr_db,iter,objective\n";
    os.precision(12);
    for (const auto& r : runs)
      for (const auto& it : r.trace.iterations)
        os << r.algo << "," << r.snr_db << "," << it.index << "," << it.objective << "\n";
    std::cout << "wrote " << base << ".csv\n";
    for (const auto& r : runs)
      std::cout << r.algo << " @ " << r.snr_db << " dB: " << r.terminal << " nats\n";
    return kExitOk;
  }

  if (suite == "fig4") {
    const WiretapChannel ch = benchmark4x2_channels();
    std::vector<double> snrs = cfg.contains("snr_db") ? cfg["snr_db"].get<std::vector<double>>()
                                                      : std::vector<double>{5.0, 10.0};
    std::ofstream os(base + ".csv");
    os << "method,snr_db,iter,lower_bound\n";
    os.precision(12);
    for (double snr : snrs) {
      ConstraintSet cons = joint_spc_papc(db_to_linear(snr), ch.nt());
      const CMat x0 = default_initial_covariance(cons, ch.nt());
      const CMat gamma = grad_fe(ch, x0);
      const LinearizedObjective obj = LinearizedObjective::adca(ch.hb, gamma);
      // constants restoring the secrecy-capacity lower bound from fbar
      const double c0 = (gamma * x0).trace().real() -
                        logdet_hpd(CMat::Identity(ch.ne(), ch.ne()) + ch.he * x0 * ch.he.adjoint());
      CoMirrorConfig ccfg;
      ccfg.max_iters = 500;
      ccfg.x0 = x0;
      ccfg.stall_window = 1 << 30;  // run the full horizon for the comparison
      auto sub = solve_subproblem(obj, cons, ccfg);
      const double step = default_subgradient_step(obj, cons, x0);
      auto sg = subgradient_baseline(obj, cons, step, 500, x0);
      for (const auto& it : sub.trace.iterations)
        os << "comirror," << snr << "," << it.index << "," << std::max(it.objective + c0, 0.0) << "\n";
      for (const auto& it : sg.iterations)
        os << "subgradient," << snr << "," << it.index << "," << std::max(it.objective + c0, 0.0) << "\n";
      std::cout << "SNR " << snr << " dB: comirror best " << sub.trace.best_objective + c0
                << ", subgradient best " << sg.best_objective + c0 << "\n";
    }
    std::cout << "wrote " << base << ".csv\n";
    return kExitOk;
  }

  if (suite == "fig6") {
    SweepConfig scfg;
    scfg.seed = seed;
    scfg.trials = trials;
    scfg.jobs = jobs;
    if (cfg.contains("r")) scfg.r = cfg["r"].get<double>();
    if (cfg.contains("gamma")) scfg.gamma = cfg["gamma"].get<double>();
    if (cfg.contains("nr")) scfg.nr = cfg["nr"].get<int>();
    if (cfg.contains("with_ipc")) scfg.with_ipc = cfg["with_ipc"].get<bool>();
    if (cfg.contains("ipc_threshold_db")) scfg.ipc_threshold_db = cfg["ipc_threshold_db"].get<double>();
    if (cfg.contains("np_antennas")) scfg.np_antennas = cfg["np_antennas"].get<int>();
    std::vector<int> nts = cfg.contains("nt_list") ? cfg["nt_list"].get<std::vector<int>>()
                                                   : std::vector<int>{4, 6, 8, 12};
    std::vector<int> nes =
        cfg.contains("ne_list") ? cfg["ne_list"].get<std::vector<int>>() : std::vector<int>{2, 4};
    auto points = run_papc_sweep(nts, nes, scfg);
    std::ofstream os(base + ".csv");
    os << "nt,ne,mean_capacity,trials\n";
    os.precision(12);
    for (const auto& p : points) os << p.nt << "," << p.ne << "," << p.mean_capacity << "," << p.trials << "\n";
    std::cout << "wrote " << base << ".csv\n";
    return kExitOk;
  }

  throw Error("unknown --suite '" + suite + "'; expected fig1, fig4 or fig6");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy capacity of Gaussian MIMO wiretap channels under SPC/PAPC/IPC"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance");
  std::string channel_path, algo = "pbra", out_prefix = "solution";
  ConstraintFlags cf;
  int q = 5, max_outer = 300, inner_iters = 3000;
  double tol = 1e-6;
  bool recover = false, bits = false;
  solve->add_option("--channel", channel_path, "channel JSON file")->required();
  solve->add_option("--spc", cf.spc, "sum power budget (linear)");
  solve->add_option("--snr-db", cf.snr_db, "sum power as SNR in dB");
  solve->add_option("--papc", cf.papc_list, "per-antenna limits, comma separated (or one value for all)");
  solve->add_option("--papc-factor", cf.papc_factor, "P_i = factor * P0 / N_t");
  solve->add_option("--ipc", cf.ipc_list, "interference thresholds, one per primary channel");
  solve->add_option("--algo", algo, "adca | pbra | zf | both")->default_val("pbra");
  solve->add_option("--q", q, "ADCA monitor depth");
  solve->add_option("--max-outer", max_outer, "outer iteration cap");
  solve->add_option("--tol", tol, "PBRA stopping tolerance");
  solve->add_option("--inner-iters", inner_iters, "inner solver iteration cap");
  solve->add_flag("--recover", recover, "recover optimal signaling by budget bisection (pbra)");
  solve->add_flag("--bits", bits, "also report bits/s/Hz");
  solve->add_option("--out", out_prefix, "output prefix");

  // generate
  auto* gen = app.add_subcommand("generate", "generate a Kronecker-model channel file");
  int g_nt = 4, g_nr = 4, g_ne = 3, g_np = 0, g_nl = 4;
  double g_r = 0.9, g_phi = 0.0, g_gamma = 1.0, g_phi_p = M_PI / 4.0;
  std::optional<double> g_phi_e;
  std::uint64_t g_seed = 0;
  std::string g_out = "channel.json";
  gen->add_option("--nt", g_nt, "transmit antennas")->required();
  gen->add_option("--nr", g_nr, "Bob antennas")->required();
  gen->add_option("--ne", g_ne, "Eve antennas")->required();
  gen->add_option("--r", g_r, "correlation magnitude in [0,1]");
  gen->add_option("--phi", g_phi, "Bob correlation phase");
  gen->add_option("--phi-e", g_phi_e, "Eve correlation phase (defaults to --phi)");
  gen->add_option("--gamma", g_gamma, "Eve channel strength");
  gen->add_option("--seed", g_seed, "PRNG seed")->required();
  gen->add_option("--np", g_np, "number of primary receivers");
  gen->add_option("--nl", g_nl, "antennas per primary receiver");
  gen->add_option("--phi-p", g_phi_p, "primary correlation phase");
  gen->add_option("--out", g_out, "output path");

  // validate
  auto* val = app.add_subcommand("validate", "check a (channel, solution) pair");
  std::string v_channel, v_solution;
  ConstraintFlags v_cf;
  val->add_option("--channel", v_channel, "channel JSON file")->required();
  val->add_option("--solution", v_solution, "solution JSON file")->required();
  val->add_option("--spc", v_cf.spc, "sum power budget (linear)");
  val->add_option("--snr-db", v_cf.snr_db, "sum power as SNR in dB");
  val->add_option("--papc", v_cf.papc_list, "per-antenna limits");
  val->add_option("--papc-factor", v_cf.papc_factor, "P_i = factor * P0 / N_t");
  val->add_option("--ipc", v_cf.ipc_list, "interference thresholds");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run an experiment suite");
  std::string e_suite, e_out_dir = ".", e_config;
  std::optional<std::uint64_t> e_seed;
  int e_trials = 100, e_jobs = 1;
  exp->add_option("--suite", e_suite, "fig1 | fig4 | fig6")->required();
  exp->add_option("--seed", e_seed, "PRNG seed (required: all randomness flows from it)");
  exp->add_option("--trials", e_trials, "trials per sweep point");
  exp->add_option("--out-dir", e_out_dir, "output directory");
  exp->add_option("--jobs", e_jobs, "parallel trials");
  exp->add_option("--config", e_config, "JSON config file (schema 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return cmd_solve(channel_path, cf, algo, q, max_outer, tol, inner_iters, recover, bits, out_prefix);
    if (gen->parsed())
      return cmd_generate(g_nt, g_nr, g_ne, g_r, g_phi, g_phi_e, g_gamma, g_seed, g_np, g_nl, g_phi_p,
                          g_out);
    if (val->parsed()) return cmd_validate(v_channel, v_solution, v_cf);
    if (exp->parsed()) {
      if (!e_seed) {
        std::cerr << "error: experiment mode requires --seed\n";
        return kExitConfig;
      }
      return cmd_experiment(e_suite, *e_seed, e_trials, e_out_dir, e_jobs, e_config);
    }
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NullSpaceEmpty& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitConfig;
}
