#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wtc/linalg.hpp"
#include "wtc/pbra.hpp"
#include "wtc/zf.hpp"

using namespace wtc;
using namespace wtc::oracles;

TEST_CASE("null space of a row vector") {
  CMat he(1, 2);
  he << 1.0, 0.0;
  const CMat v = null_space_basis(he);
  REQUIRE(v.cols() == 1);
  CHECK(std::abs(std::abs(v(1, 0)) - 1.0) < 1e-12);  // e2 up to phase
  CHECK(std::abs(v(0, 0)) < 1e-12);
}

TEST_CASE("full-rank square channel has no null space") {
  Philox rng(3);
  const CMat he = random_complex(3, 3, rng);
  CHECK_THROWS_AS(null_space_basis(he), NullSpaceEmpty);
}

TEST_CASE("random wide channel: orthonormal basis annihilated by He") {
  Philox rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat he = random_complex(2, 4, rng);
    const CMat v = null_space_basis(he);
    REQUIRE(v.cols() == 2);
    CHECK((he * v).norm() <= 1e-10 * he.norm());
    CHECK((v.adjoint() * v - CMat::Identity(2, 2)).norm() < 1e-10);
  }
}

TEST_CASE("hand-solvable instance") {
  WiretapChannel ch;
  ch.hb = CMat::Identity(2, 2);
  ch.he = CMat(1, 2);
  ch.he << 1.0, 0.0;
  ConstraintSet cons;
  cons.spc = 3.0;
  const auto res = zf_rate(ch, cons);
  const double ref = grid_max([](double t) { return std::log(1.0 + t); }, 0.0, 3.0, 30000);
  CHECK(res.rate == doctest::Approx(ref).epsilon(1e-4));
  CHECK(res.rate == doctest::Approx(std::log(4.0)).epsilon(1e-4));
  CMat expect = CMat::Zero(2, 2);
  expect(1, 1) = 3.0;
  CHECK((res.x_full - expect).norm() < 1e-3);
}

TEST_CASE("silent Bob yields zero rate and zero covariance") {
  WiretapChannel ch;
  ch.hb = CMat::Zero(2, 3);
  ch.he = CMat(1, 3);
  ch.he << 1.0, 0.0, 0.0;
  ConstraintSet cons;
  cons.spc = 2.0;
  const auto res = zf_rate(ch, cons);
  CHECK(res.rate == doctest::Approx(0.0));
  CHECK(res.t.norm() == 0.0);
}

TEST_CASE("rate equals the secrecy rate of the full covariance") {
  Philox rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    WiretapChannel ch{random_complex(3, 4, rng), random_complex(2, 4, rng), {}};
    ConstraintSet cons;
    cons.spc = 4.0;
    cons.papc = RVec::Constant(4, 1.5);
    const auto res = zf_rate(ch, cons);
    const auto rate = secrecy_rate(ch, res.x_full);
    CHECK(std::abs(res.rate - rate.clamped) < 1e-9);
    // feasibility of the lifted covariance
    CHECK(res.x_full.trace().real() <= cons.budget() + 1e-8);
    CHECK(cons.max_functional_violation(res.x_full) <= 1e-6 * cons.budget() + 1e-9);
    CHECK(min_eigenvalue(res.x_full) >= -1e-10);
  }
}

TEST_CASE("zero forcing never beats the saddle value") {
  Philox rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    WiretapChannel ch{random_complex(3, 4, rng), random_complex(2, 4, rng), {}};
    ConstraintSet cons;
    cons.spc = 5.0;
    cons.papc = RVec::Constant(4, 1.8);
    const auto zf = zf_rate(ch, cons);
    const auto saddle = pbra_run(ch, cons);
    CHECK(zf.rate <= saddle.cs + 1e-4);
  }
}

TEST_CASE("IPC constraints carry into the reduced problem") {
  Philox rng(23);
  WiretapChannel ch{random_complex(2, 4, rng), random_complex(1, 4, rng), {}};
  ConstraintSet cons;
  cons.spc = 6.0;
  cons.ipc.push_back({random_psd(4, rng), 0.5});
  const auto res = zf_rate(ch, cons);
  CHECK((cons.ipc[0].w * res.x_full).trace().real() <= 0.5 + 1e-6 * cons.budget());
}
