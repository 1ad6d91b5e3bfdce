#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wtc/experiments.hpp"
#include "wtc/linalg.hpp"
#include "wtc/model.hpp"

using namespace wtc;
using namespace wtc::oracles;

namespace {

WiretapChannel siso(double hb, double he) {
  WiretapChannel ch;
  ch.hb = CMat::Constant(1, 1, hb);
  ch.he = CMat::Constant(1, 1, he);
  return ch;
}

}  // namespace

TEST_CASE("secrecy rate: identical channels give zero") {
  Philox rng(1);
  const CMat h = random_complex(3, 4, rng);
  WiretapChannel ch{h, h, {}};
  const CMat x = random_psd(4, rng);
  const auto r = secrecy_rate(ch, x);
  CHECK(r.clamped == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(r.unclamped) < 1e-12);
}

TEST_CASE("secrecy rate: scalar case") {
  const auto r = secrecy_rate(siso(2.0, 1.0), CMat::Constant(1, 1, 1.0));
  CHECK(r.clamped == doctest::Approx(std::log(5.0) - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("secrecy rate: printed 2x2 covariance") {
  const WiretapChannel ch = example2x2_channels();
  CMat x(2, 2);
  x << 1.7305, 1.2198, 1.2198, 5.9985;
  CHECK(std::abs(secrecy_rate(ch, x).clamped - 0.3409) < 1e-3);
}

TEST_CASE("secrecy rate rejects bad inputs") {
  const WiretapChannel ch = siso(2.0, 1.0);
  CHECK_THROWS_AS(secrecy_rate(ch, CMat::Zero(2, 2)), DimensionError);
  Philox rng(3);
  WiretapChannel ch2{random_complex(2, 2, rng), random_complex(2, 2, rng), {}};
  CMat bad = random_complex(2, 2, rng);
  bad(0, 1) = bad(1, 0) + Complex(0.5, 0.5);  // clearly not Hermitian
  CHECK_THROWS_AS(secrecy_rate(ch2, bad), InvariantError);
}

TEST_CASE("saddle objective: zero covariance gives zero") {
  Philox rng(12);
  WiretapChannel ch{random_complex(2, 3, rng), random_complex(2, 3, rng), {}};
  const CMat kbar = 0.3 * random_complex(2, 2, rng);
  CHECK(saddle_objective(ch, kbar, CMat::Zero(3, 3)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("saddle objective: scalar case by hand determinant") {
  const WiretapChannel ch = siso(2.0, 1.0);
  const double v = saddle_objective(ch, CMat::Zero(1, 1), CMat::Constant(1, 1, 1.0));
  CHECK(v == doctest::Approx(std::log(6.0) - std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("saddle objective upper-bounds the unclamped rate") {
  Philox rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int nt = 2 + static_cast<int>(rng.next_u32() % 3);
    const int nr = 1 + static_cast<int>(rng.next_u32() % 3);
    const int ne = 1 + static_cast<int>(rng.next_u32() % 3);
    WiretapChannel ch{random_complex(nr, nt, rng), random_complex(ne, nt, rng), {}};
    CMat kbar = random_complex(nr, ne, rng);
    const double smax = std::sqrt(max_eigenvalue(kbar * kbar.adjoint()));
    kbar *= 0.9 * rng.next_double() / std::max(smax, 1e-12);
    const CMat x = random_psd(nt, rng);
    CHECK(saddle_objective(ch, kbar, x) >= secrecy_rate(ch, x).unclamped - 1e-9);
  }
}

TEST_CASE("grad_fe closed forms") {
  Philox rng(21);
  const CMat he = random_complex(3, 4, rng);
  WiretapChannel ch{random_complex(2, 4, rng), he, {}};
  CHECK((grad_fe(ch, CMat::Zero(4, 4)) - he.adjoint() * he).norm() < 1e-12);

  WiretapChannel chz{random_complex(2, 4, rng), CMat::Zero(3, 4), {}};
  CHECK(grad_fe(chz, random_psd(4, rng)).norm() < 1e-14);

  const auto g = grad_fe(siso(2.0, 1.0), CMat::Constant(1, 1, 1.0));
  CHECK(g(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("grad_fe and grad_saddle_x match finite differences") {
  Philox rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const int nt = 3;
    WiretapChannel ch{random_complex(3, nt, rng), random_complex(2, nt, rng), {}};
    const CMat x = random_psd(nt, rng) + 0.1 * CMat::Identity(nt, nt);

    const double err_fe = gradient_check(
        [&](const CMat& xx) {
          const CMat e = CMat::Identity(2, 2) + ch.he * xx * ch.he.adjoint();
          return logdet_hpd(e);
        },
        x, grad_fe(ch, x));
    CHECK(err_fe < 1e-5);

    CMat kbar = 0.4 * random_complex(3, 2, rng);
    const double smax = std::sqrt(max_eigenvalue(kbar * kbar.adjoint()));
    if (smax > 0.9) kbar *= 0.9 / smax;
    const double err_saddle = gradient_check(
        [&](const CMat& xx) { return saddle_objective(ch, kbar, xx); }, x, grad_saddle_x(ch, kbar, x));
    CHECK(err_saddle < 1e-5);
  }
}

TEST_CASE("grad_saddle_x degenerate closed forms") {
  // he = 0, kbar = 0, x = 0: gradient is H^H H of the stacked channel
  Philox rng(41);
  const CMat hb = random_complex(2, 3, rng);
  WiretapChannel ch{hb, CMat::Zero(2, 3), {}};
  const CMat g = grad_saddle_x(ch, CMat::Zero(2, 2), CMat::Zero(3, 3));
  const CMat h = ch.stacked();
  CHECK((g - h.adjoint() * h).norm() < 1e-12);

  // SISO hb = he = 1: H^H H - 1 = 2 - 1 = 1
  const WiretapChannel s = siso(1.0, 1.0);
  const CMat gs = grad_saddle_x(s, CMat::Zero(1, 1), CMat::Zero(1, 1));
  CHECK(gs(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degradedness tests") {
  WiretapChannel ch;
  ch.hb = 2.0 * CMat::Identity(3, 3);
  ch.he = CMat::Identity(3, 3);
  CHECK(is_degraded(ch).degraded);
  CHECK(has_positive_secrecy(ch));

  WiretapChannel eq{ch.he, ch.he, {}};
  CHECK(is_degraded(eq).degraded);  // delta = 0 boundary
  CHECK_FALSE(has_positive_secrecy(eq));

  WiretapChannel rev{CMat::Identity(3, 3), 2.0 * CMat::Identity(3, 3), {}};
  CHECK_FALSE(is_degraded(rev).degraded);
  CHECK_FALSE(has_positive_secrecy(rev));

  CHECK_FALSE(is_degraded(example2x2_channels()).degraded);

  // hb = alpha * he is degraded for any |alpha| >= 1
  Philox rng(51);
  for (double alpha : {1.0, 1.5, 3.0}) {
    const auto deg = random_degraded(3, 4, alpha, rng);
    CHECK(is_degraded(deg).degraded);
  }
}

TEST_CASE("degraded channels have concave unclamped rate") {
  Philox rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ch = random_degraded(3, 3, 1.8, rng);
    const CMat x1 = random_psd(3, rng);
    const CMat x2 = random_psd(3, rng);
    const double lam = rng.next_double();
    const CMat xm = lam * x1 + (1.0 - lam) * x2;
    const double lhs = secrecy_rate(ch, xm).unclamped;
    const double rhs = lam * secrecy_rate(ch, x1).unclamped + (1.0 - lam) * secrecy_rate(ch, x2).unclamped;
    CHECK(lhs >= rhs - 1e-8);
  }
}

TEST_CASE("exponential correlation and the Kronecker model") {
  // r = 0 gives R = I, so the channel is the raw i.i.d. matrix times gamma
  Philox rng(71);
  Philox rng2(71);
  const CMat h = kronecker_channel(3, 4, 0.0, 1.3, 2.0, rng);
  CMat href(3, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) href(i, j) = 2.0 * rng2.next_cgaussian();
  CHECK((h - href).norm() < 1e-14);

  // determinism across calls with the same seed
  const CMat a = kronecker_channel(4, 6, 0.9, 0.7, 0.9, std::uint64_t{123});
  const CMat b = kronecker_channel(4, 6, 0.9, 0.7, 0.9, std::uint64_t{123});
  CHECK((a - b).norm() == 0.0);

  CHECK_THROWS_AS(exp_correlation(4, 1.5, 0.0), InvariantError);
}

TEST_CASE("Kronecker empirical transmit correlation matches R") {
  // single-row channels: E{H^H H} = gamma^2 R entrywise
  const int nt = 4, draws = 10000;
  const double gamma = 1.3;
  const CMat r = exp_correlation(nt, 0.7, 0.9);
  Philox rng(81);
  CMat acc = CMat::Zero(nt, nt);
  for (int d = 0; d < draws; ++d) {
    const CMat h = kronecker_channel(1, nt, 0.7, 0.9, gamma, rng);
    acc += h.adjoint() * h;
  }
  acc /= draws * gamma * gamma;
  CHECK((acc - r).cwiseAbs().maxCoeff() < 0.05);

  // multi-row channels normalize by the row count
  Philox rng2(82);
  CMat acc2 = CMat::Zero(nt, nt);
  for (int d = 0; d < 4000; ++d) {
    const CMat h = kronecker_channel(4, nt, 0.7, 0.9, gamma, rng2);
    acc2 += h.adjoint() * h;
  }
  acc2 /= 4000.0 * 4.0 * gamma * gamma;
  CHECK((acc2 - r).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("correlation distance") {
  const CMat i4 = CMat::Identity(4, 4);
  CHECK(corr_distance(i4, i4) == doctest::Approx(0.0));
  Philox rng(91);
  const CMat r = random_psd(4, rng);
  CHECK(corr_distance(r, r) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(corr_distance(CMat::Zero(2, 2), i4.topLeftCorner(2, 2)), InvariantError);

  // opposite-phase exponential correlations at r = 0.9 are nearly orthogonal
  const CMat rb = exp_correlation(6, 0.9, 0.0);
  const CMat re = exp_correlation(6, 0.9, M_PI);
  CHECK(std::abs(corr_distance(rb, re) - 0.96) < 0.05);
}

TEST_CASE("constraint set validation") {
  ConstraintSet cons;
  CHECK_THROWS_AS(cons.validate(2), InvariantError);  // neither spc nor papc
  cons.spc = 10.0;
  cons.validate(2);
  cons.papc = RVec::Constant(3, 1.0);
  CHECK_THROWS_AS(cons.validate(2), DimensionError);
  cons.papc = RVec::Constant(2, 1.0);
  cons.validate(2);
  CHECK(cons.budget() == doctest::Approx(2.0));  // papc sum tightens the trace bound

  Philox rng(101);
  ConstraintSet bad;
  bad.spc = 1.0;
  bad.ipc.push_back({random_complex(2, 2, rng), 1.0});  // not Hermitian
  CHECK_THROWS_AS(bad.validate(2), InvariantError);
}
