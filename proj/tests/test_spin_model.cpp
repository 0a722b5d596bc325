#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "centralspin/spin_model.hpp"
#include "centralspin/verify.hpp"

using namespace centralspin;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("branch parameters at the FID maximum") {
  // A_x = 1, omega = 0.5: Omega = sqrt(0.5), n_x^2 = 1/2. At t = pi/Omega
  // the oscillation peaks: v_f = 1, theta = pi/2.
  const NuclearSpinParam spin{1.0, 0.5};
  const double t = kPi / std::sqrt(0.5);
  const BranchParams b = derive_branch(spin, t, SequenceKind::Fid);
  CHECK(b.v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(b.omega_eff == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("branch parameters at the echo maximum") {
  // Same spin at sin^4(t Omega/2) = 1: v_e = 8 * (1/2) * (1/2) = 2, theta = pi.
  const NuclearSpinParam spin{1.0, 0.5};
  const double t = kPi / std::sqrt(0.5);
  const BranchParams b = derive_branch(spin, t, SequenceKind::Echo);
  CHECK(b.v == doctest::Approx(2.0).epsilon(1e-12));
  // theta = arccos(1 - v) is infinitely steep at v = 2; an ulp in v costs
  // ~1e-8 in theta. The binding invariant cos(theta) = 1 - v stays tight.
  CHECK(b.theta == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(std::abs(std::cos(b.theta) - (1.0 - b.v)) <= 1e-12);
}

TEST_CASE("t = 0 gives no dephasing") {
  const NuclearSpinParam spin{1.3, -0.7};
  for (SequenceKind seq : {SequenceKind::Fid, SequenceKind::Echo}) {
    const BranchParams b = derive_branch(spin, 0.0, seq);
    CHECK(b.v == 0.0);
    CHECK(b.theta == 0.0);
  }
}

TEST_CASE("zero field kills the echo parameter") {
  const NuclearSpinParam spin{1.0, 0.0};
  for (double t : {0.3, 1.7, 8.1, 19.4}) {
    CHECK(derive_branch(spin, t, SequenceKind::Echo).v == 0.0);
  }
}

TEST_CASE("zero coupling kills the FID parameter") {
  const NuclearSpinParam spin{0.0, 1.2};
  for (double t : {0.3, 1.7, 8.1}) {
    CHECK(derive_branch(spin, t, SequenceKind::Fid).v == 0.0);
  }
}

TEST_CASE("degenerate spin returns the all-zero convention") {
  const BranchParams b = derive_branch(NuclearSpinParam{0.0, 0.0}, 3.0, SequenceKind::Fid);
  CHECK(b.omega_eff == 0.0);
  CHECK(b.n_x == 0.0);
  CHECK(b.n_z == 0.0);
  CHECK(b.v == 0.0);
  CHECK(b.theta == 0.0);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(derive_branch(NuclearSpinParam{1.0, 0.5}, -1.0, SequenceKind::Fid),
                  std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(derive_branch(NuclearSpinParam{inf, 0.0}, 1.0, SequenceKind::Fid),
                  std::invalid_argument);
}

TEST_CASE("properties over random inputs") {
  verify::CaseRng rng(2024);
  for (int i = 0; i < 20000; ++i) {
    const NuclearSpinParam spin{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double t = rng.uniform(0.0, 20.0);
    for (SequenceKind seq : {SequenceKind::Fid, SequenceKind::Echo}) {
      const BranchParams b = derive_branch(spin, t, seq);
      CHECK(b.v >= 0.0);
      CHECK(b.v <= 2.0);
      CHECK(std::abs(std::cos(b.theta) - (1.0 - b.v)) <= 1e-12);
      if (b.omega_eff > 0.0) {
        CHECK(std::abs(b.n_x * b.n_x + b.n_z * b.n_z - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("derive_branch is pure: identical inputs, bit-identical outputs") {
  verify::CaseRng rng(99);
  for (int i = 0; i < 200; ++i) {
    const NuclearSpinParam spin{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const double t = rng.uniform(0.0, 20.0);
    const BranchParams a = derive_branch(spin, t, SequenceKind::Echo);
    const BranchParams b = derive_branch(spin, t, SequenceKind::Echo);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }
}

TEST_CASE("equal-coupling bath constructor") {
  const SpinBath bath = SpinBath::equal_coupling(3, 1.5, -0.25);
  REQUIRE(bath.size() == 3);
  for (const auto& spin : bath.spins) {
    CHECK(spin.a_x == 1.5);
    CHECK(spin.omega == -0.25);
  }
  CHECK(SpinBath::equal_coupling(0, 1.0, 1.0).size() == 0);
}
