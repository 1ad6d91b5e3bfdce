// Acceptance suite: one pass/fail line per criterion, fixed tolerances.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "oracles.hpp"
#include "wtc/adca.hpp"
#include "wtc/degraded.hpp"
#include "wtc/experiments.hpp"
#include "wtc/linalg.hpp"
#include "wtc/pbra.hpp"
#include "wtc/projections.hpp"

using namespace wtc;
using namespace wtc::oracles;

namespace {

struct Criterion {
  const char* label;
  bool pass = true;
  void require(bool ok) { pass = pass && ok; }
  ~Criterion() { std::printf("%s | %s\n", pass ? "PASS" : "FAIL", label); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// the 20 seeded channels shared by the trace-property criteria
std::vector<WiretapChannel> seeded_channels() {
  std::vector<WiretapChannel> chans;
  for (int s = 0; s < 20; ++s) {
    Philox rng(1000 + s);
    if (s % 2 == 0) {
      chans.push_back(random_degraded(2, 3, 1.2 + rng.next_double(), rng));
    } else {
      chans.push_back(WiretapChannel{random_complex(3, 3, rng), 0.8 * random_complex(2, 3, rng), {}});
    }
  }
  return chans;
}

CMat random_kbar(int nr, int ne, Philox& rng, double margin = 0.9) {
  CMat kb = random_complex(nr, ne, rng);
  const double smax = std::sqrt(max_eigenvalue(kb * kb.adjoint()));
  return kb * (margin * rng.next_double() / std::max(smax, 1e-12));
}

}  // namespace

TEST_CASE("criterion 1: printed 2x2 regression") {
  Criterion c{"criterion 1: 2x2 fixture, C_s = 1.0420 +- 1e-3, X* within 1e-2, C_s(X*) = 0.3409 +- 1e-3, < 10 s"};
  const auto t0 = std::chrono::steady_clock::now();

  const WiretapChannel ch = example2x2_channels();
  ConstraintSet cons;
  cons.spc = 10.0;
  cons.papc = RVec::Constant(2, 6.0);
  const PbraResult res = pbra_run(ch, cons);

  CMat xprint(2, 2);
  xprint << 1.7305, 1.2198, 1.2198, 5.9985;

  const double elapsed = seconds_since(t0);
  c.require(std::abs(res.cs - 1.0420) <= 1e-3);
  c.require((res.x - xprint).cwiseAbs().maxCoeff() <= 1e-2);
  c.require(std::abs(secrecy_rate(ch, res.x).clamped - 0.3409) <= 1e-3);
  c.require(elapsed < 10.0);
  CHECK(c.pass);
}

TEST_CASE("criterion 2: cross-algorithm consistency on the 4x2/3x2 channels") {
  Criterion c{"criterion 2: ADCA and PBRA agree within 5e-3 at SNR 5 and 10 dB, < 60 s"};
  const auto t0 = std::chrono::steady_clock::now();
  const WiretapChannel ch = benchmark4x2_channels();
  for (double snr_db : {5.0, 10.0}) {
    const double p0 = db_to_linear(snr_db);
    const ConstraintSet cons = joint_spc_papc(p0, ch.nt());
    const AdcaResult a = adca_run(ch, cons);
    const PbraResult p = pbra_run(ch, cons);
    c.require(std::abs(a.cs - p.cs) <= 5e-3);
  }
  c.require(seconds_since(t0) < 60.0);
  CHECK(c.pass);
}

TEST_CASE("criterion 3: non-monotone monitor properties over 20 seeded channels") {
  Criterion c{"criterion 3: gamma_{n+q} >= gamma_{n-1} exactly and C_s(X_n) >= C_s(V_{n-1}) - 1e-6"};
  const int q = 5;
  for (const auto& ch : seeded_channels()) {
    ConstraintSet cons = joint_spc_papc(4.0, ch.nt());
    AdcaConfig cfg;
    cfg.q = q;
    cfg.max_outer = 60;
    const AdcaResult res = adca_run(ch, cons, cfg);
    const auto& rows = res.trace.iterations;
    for (std::size_t n = 1; n + q < rows.size(); ++n)
      c.require(rows[n + q].extras.at("gamma") >= rows[n - 1].extras.at("gamma"));
    double cs_v_prev = secrecy_rate(ch, default_initial_covariance(cons, ch.nt())).clamped;
    for (const auto& row : rows) {
      c.require(row.objective >= cs_v_prev - 1e-6);
      cs_v_prev = row.extras.at("cs_v");
    }
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 4: descent, nonnegativity, positive noise and saddle inequalities") {
  Criterion c{"criterion 4: PBRA traces nonincreasing (1e-6) and >= 0, lambda_min(K) > 0, saddle inequalities at 1e-4"};
  const auto chans = seeded_channels();
  for (std::size_t i = 0; i < chans.size(); ++i) {
    const auto& ch = chans[i];
    ConstraintSet cons = joint_spc_papc(4.0, ch.nt());
    PbraConfig cfg;
    cfg.tol = 1e-8;
    const PbraResult res = pbra_run(ch, cons, cfg);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& row : res.trace.iterations) {
      c.require(row.objective <= prev + 1e-6);
      c.require(row.objective >= 0.0);
      c.require(row.extras.at("lambda_min_K") > 0.0);
      prev = row.objective;
    }
    if (i < 5) {
      Philox rng(9000 + static_cast<std::uint64_t>(i));
      const double fstar = saddle_objective(ch, res.kbar, res.x);
      for (int s = 0; s < 100; ++s) {
        const CMat x = random_feasible(cons, ch.nt(), rng);
        c.require(saddle_objective(ch, res.kbar, x) <= fstar + 1e-4);
        const CMat kb = random_kbar(ch.nr(), ch.ne(), rng);
        c.require(saddle_objective(ch, kb, res.x) >= fstar - 1e-4);
      }
    }
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 5: worst-noise closed form on 1000 random instances") {
  Criterion c{"criterion 5: kkt residual <= 1e-8 on 1000 random Psi12 up to 8x8; beats 1000 random Kbar"};
  Philox rng(500);
  for (int trial = 0; trial < 1000; ++trial) {
    const int nr = 1 + static_cast<int>(rng.next_u32() % 8);
    const int ne = 1 + static_cast<int>(rng.next_u32() % 8);
    const double scale = std::pow(10.0, 2.0 * rng.next_double() - 1.0);
    const CMat psi12 = scale * random_complex(nr, ne, rng);
    const CMat kb = k_update(psi12);
    c.require(kkt_residual(psi12, kb) <= 1e-8);
  }
  // objective comparison on a smaller batch with 1000 samples each
  Philox rng2(501);
  for (int trial = 0; trial < 10; ++trial) {
    const int nr = 2 + static_cast<int>(rng2.next_u32() % 3);
    const int ne = 2 + static_cast<int>(rng2.next_u32() % 3);
    const CMat psi = random_psd(nr + ne, rng2, 2.0);
    const CMat psi12 = psi.topRightCorner(nr, ne);
    auto h = [&](const CMat& kb) {
      return 2.0 * (psi12 * kb.adjoint()).trace().real() -
             logdet_hpd(CMat::Identity(nr, nr) - kb * kb.adjoint());
    };
    const double hstar = h(k_update(psi12));
    for (int s = 0; s < 1000; ++s) c.require(hstar <= h(random_kbar(nr, ne, rng2)) + 1e-9);
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 6: degraded reformulation identities on 100 seeded instances") {
  Criterion c{"criterion 6: |ln|F(X)| - C_s(X)| <= 1e-8; LMI feasible at F(X), infeasible at F(X)+0.1I"};
  for (int s = 0; s < 100; ++s) {
    Philox rng(600 + static_cast<std::uint64_t>(s));
    const int nt = 2 + static_cast<int>(rng.next_u32() % 3);
    const int nr = 1 + static_cast<int>(rng.next_u32() % 3);
    const auto ch = random_degraded(nr, nt, 1.0 + 2.0 * rng.next_double(), rng);
    const CMat x = random_psd(nt, rng, 1.0 + 3.0 * rng.next_double());
    const auto rep = verify_reformulation(ch, x);
    c.require(rep.gap <= 1e-8 * std::max(1.0, std::abs(rep.rate_direct)));
    const CMat f = matrix_f(ch, x);
    c.require(lmi_feasible(ch, x, f));
    c.require(!lmi_feasible(ch, x, f + 0.1 * CMat::Identity(nt, nt)));
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 7: projection oracles on 1000 instances") {
  Criterion c{"criterion 7: tau matches bisection; projections never beaten by sampled feasible points"};
  Philox rng(700);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u32() % 8);
    RVec v(n);
    for (int i = 0; i < n; ++i) v(i) = 5.0 * rng.next_double() - 1.0;
    const double budget = 0.2 + 3.0 * rng.next_double();
    const auto p = project_simplex_detail(v, budget);
    c.require(p.value.minCoeff() >= 0.0);
    c.require(p.value.sum() <= budget + 1e-12);
    if (p.tau > 0.0) c.require(std::abs(p.tau - simplex_tau_bisect(v, budget)) <= 1e-7);

    const CMat target = random_hermitian(n, rng) * 2.0;
    const CMat proj = project_spectrahedron(target, budget);
    const double dist = (proj - target).norm();
    for (int s = 0; s < 25; ++s) {
      CMat cand = random_psd(n, rng);
      const double tr = cand.trace().real();
      if (tr > budget) cand *= rng.next_double() * budget / tr;
      c.require(dist <= (cand - target).norm() + 1e-10);
    }
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 8: inner-solver comparison at 500 iterations") {
  Criterion c{"criterion 8: CoMirror best lower bound >= constant-step subgradient at SNR 5 and 10 dB"};
  const WiretapChannel ch = benchmark4x2_channels();
  for (double snr_db : {5.0, 10.0}) {
    const ConstraintSet cons = joint_spc_papc(db_to_linear(snr_db), ch.nt());
    const CMat x0 = default_initial_covariance(cons, ch.nt());
    const auto obj = LinearizedObjective::adca(ch.hb, grad_fe(ch, x0));
    CoMirrorConfig cfg;
    cfg.x0 = x0;
    cfg.max_iters = 500;
    cfg.stall_window = 1 << 30;
    const auto cm = solve_subproblem(obj, cons, cfg);
    const auto sg =
        subgradient_baseline(obj, cons, default_subgradient_step(obj, cons, x0), 500, x0);
    c.require(cm.trace.best_objective >= sg.best_objective);
  }
  CHECK(c.pass);
}

TEST_CASE("criterion 9: analytic gradients match central finite differences") {
  Criterion c{"criterion 9: gradient checks at 1e-5 relative on random 3x3 and 4x4 instances"};
  for (int nt : {3, 4}) {
    Philox rng(900 + static_cast<std::uint64_t>(nt));
    for (int trial = 0; trial < 5; ++trial) {
      WiretapChannel ch{random_complex(nt, nt, rng), random_complex(nt - 1, nt, rng), {}};
      const CMat x = random_psd(nt, rng) + 0.05 * CMat::Identity(nt, nt);

      c.require(gradient_check(
                    [&](const CMat& xx) {
                      return logdet_hpd(CMat::Identity(nt - 1, nt - 1) + ch.he * xx * ch.he.adjoint());
                    },
                    x, grad_fe(ch, x)) < 1e-5);

      const CMat kb = random_kbar(nt, nt - 1, rng);
      c.require(gradient_check([&](const CMat& xx) { return saddle_objective(ch, kb, xx); }, x,
                               grad_saddle_x(ch, kb, x)) < 1e-5);

      const auto lobj = LinearizedObjective::adca(ch.hb, random_psd(nt, rng, 0.4));
      c.require(gradient_check([&](const CMat& xx) { return lobj.value(xx); }, x, lobj.gradient(x)) <
                1e-5);

      const auto pobj = LinearizedObjective::pbra(random_complex(nt + 1, nt, rng), ch.he);
      c.require(gradient_check([&](const CMat& xx) { return pobj.value(xx); }, x, pobj.gradient(x)) <
                1e-5);
    }
  }
  CHECK(c.pass);
}

TEST_CASE("sweep statistics: monotone capacity trends") {
  Criterion c{"sweep checks: capacity up in N_t, down in N_e, IPC never raises the mean (100 trials, 2%)"};
  SweepConfig cfg;
  cfg.trials = 100;
  cfg.seed = 4242;
  cfg.snr_db = 10.0;
  cfg.nr = 4;
  const auto grid = run_papc_sweep({4, 8}, {2, 4}, cfg);
  REQUIRE(grid.size() == 4);
  auto at = [&](int nt, int ne) {
    for (const auto& p : grid)
      if (p.nt == nt && p.ne == ne) return p.mean_capacity;
    return -1.0;
  };
  const double slack = 0.02;
  c.require(at(8, 2) >= at(4, 2) * (1.0 - slack));
  c.require(at(8, 4) >= at(4, 4) * (1.0 - slack));
  c.require(at(4, 4) <= at(4, 2) * (1.0 + slack));
  c.require(at(8, 4) <= at(8, 2) * (1.0 + slack));

  SweepConfig ipc_cfg = cfg;
  ipc_cfg.trials = 100;
  ipc_cfg.with_ipc = true;
  const auto with_ipc = run_papc_sweep({4}, {2}, ipc_cfg);
  c.require(with_ipc[0].mean_capacity <= at(4, 2) * (1.0 + slack));
  CHECK(c.pass);
}
