#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "centralspin/correlations.hpp"
#include "centralspin/verify.hpp"

using namespace centralspin;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_v_list(verify::CaseRng& rng, int n, double lo = 0.0,
                                  double hi = 2.0) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("signal examples") {
  SpinBath bath = SpinBath::equal_coupling(3, 1.1, 0.4);
  CHECK(signal(bath, 0.0, SequenceKind::Fid) == 1.0);
  CHECK(signal(bath, 0.0, SequenceKind::Echo) == 1.0);
  CHECK(signal_from_v({0.5, 0.5}) == 0.25);
  CHECK(signal_from_v({1.0}) == 0.0);
  CHECK(signal_from_v({}) == 1.0);
}

TEST_CASE("mutual information examples") {
  CHECK(mutual_information(1.0, 0.01).reduced == 0.0);
  const MutualInformationValue full = mutual_information(0.0, 0.01);
  CHECK(full.reduced == 2.0);
  CHECK(full.bits == doctest::Approx(0.01 * 0.01 / (8.0 * std::numbers::ln2)).epsilon(1e-15));
  CHECK(mutual_information(0.25, 0.01).reduced == doctest::Approx(1.875).epsilon(1e-15));
  CHECK_THROWS_AS(mutual_information(1.5, 0.01), std::invalid_argument);
}

TEST_CASE("k factor examples") {
  CHECK(k_factor({0.0, 0.0, 0.0}) == 0.0);
  CHECK(k_factor({0.5}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(k_factor({1.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(k_factor({}) == 0.0);
  CHECK_THROWS_AS(k_factor({2.5}), std::invalid_argument);
  CHECK_THROWS_AS(k_factor({-0.1}), std::invalid_argument);
}

TEST_CASE("optimal angle") {
  CHECK(optimal_angle(-1.0) == 0.0);
  CHECK(optimal_angle(0.75) == kPi / 2);
  CHECK(optimal_angle(0.0) == 0.0);
}

TEST_CASE("correlation point: two spins at v = 1") {
  const CorrelationPoint p = correlation_point_from_v({1.0, 1.0}, 0.01);
  CHECK(p.g == 0.0);
  CHECK(p.i_red == 2.0);
  CHECK(p.d_red == 0.0);
  CHECK(p.ratio == 0.0);
  CHECK(p.k == -1.0);
}

TEST_CASE("correlation point: two spins at v = 0.5") {
  const CorrelationPoint p = correlation_point_from_v({0.5, 0.5}, 0.01);
  CHECK(p.g == 0.25);
  CHECK(p.k == doctest::Approx(-0.1875).epsilon(1e-15));
  CHECK(p.phi_opt == 0.0);
  CHECK(p.i_red == doctest::Approx(1.875).epsilon(1e-15));
  CHECK(p.d_red == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p.c_red == doctest::Approx(1.125).epsilon(1e-15));
  CHECK(p.ratio == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("single spin carries no discord at quadratic order") {
  for (int i = 0; i <= 200; ++i) {
    const double v = 2.0 * i / 200.0;
    const CorrelationPoint p = correlation_point_from_v({v}, 0.01);
    CHECK(p.d_red <= 1e-12);
    CHECK(p.d_red >= 0.0);
  }
}

TEST_CASE("correlation point via the bath path") {
  const SpinBath bath = SpinBath::equal_coupling(2, 1.0, 0.5);
  const ExperimentConfig cfg{0.01};
  const CorrelationPoint p0 = correlation_point(bath, 0.0, SequenceKind::Echo, cfg);
  CHECK(p0.g == 1.0);
  CHECK(p0.i_red == 0.0);
  CHECK(p0.ratio == 0.0);
}

TEST_CASE("asymptotic estimates") {
  const AsymptoticEstimates zero = asymptotic_estimates({0.0, 0.0}, 0.01);
  CHECK(zero.i_small == 0.0);
  CHECK(zero.ratio_mid == 0.0);

  const AsymptoticEstimates big = asymptotic_estimates({3.0, 3.0, 3.0}, 0.01);
  CHECK(big.ratio_mid == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(big.ratio_sat == 0.5);
  CHECK(big.i_sat == doctest::Approx(0.01 * 0.01 / (8.0 * std::numbers::ln2)).epsilon(1e-15));

  const AsymptoticEstimates small = asymptotic_estimates(std::vector<double>(10, 0.01), 0.01);
  CHECK(small.ratio_small == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(small.i_small ==
        doctest::Approx(0.01 * 0.01 * 0.1 / (4.0 * std::numbers::ln2)).epsilon(1e-13));
}

TEST_CASE("additivity holds bit-exactly and bounds hold on random samples") {
  verify::CaseRng rng(777);
  for (int i = 0; i < 10000; ++i) {
    const int n = 1 + int(rng.uniform(0.0, 6.0));
    const std::vector<double> v = random_v_list(rng, n);
    const CorrelationPoint p = correlation_point_from_v(v, 0.01);
    CHECK(p.c_red + p.d_red == p.i_red);
    CHECK(p.d_red >= 0.0);
    CHECK(p.ratio >= 0.0);
    CHECK(p.ratio <= 0.5);
    CHECK(2.0 * p.d_red <= p.i_red + 1e-12);
    CHECK(std::abs(p.g) <= 1.0);
  }
}

TEST_CASE("measurement without loss: matched angles recover everything") {
  // With phi_k = -theta_k every term of 2^-n sum_k cos^2(phi_k + theta_k)
  // is cos^2(0) = 1, so a nuclear-state-conditioned measurement loses
  // nothing; this is the documented identity behind the v = 1 case.
  verify::CaseRng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + int(rng.uniform(0.0, 5.0));
    std::vector<double> thetas(static_cast<std::size_t>(n));
    for (auto& th : thetas) th = rng.uniform(0.0, kPi);
    double acc = 0.0;
    const std::size_t count = std::size_t(1) << n;
    for (std::size_t mask = 0; mask < count; ++mask) {
      double theta_k = 0.0;
      for (int j = 0; j < n; ++j) {
        theta_k += (mask >> j) & 1u ? thetas[std::size_t(j)] : -thetas[std::size_t(j)];
      }
      const double phi_k = -theta_k;
      const double c = std::cos(phi_k + theta_k);
      acc += c * c;
    }
    CHECK(acc / double(count) == 1.0);
  }
}

TEST_CASE("equal-coupling k factor matches the power form") {
  verify::CaseRng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + int(rng.uniform(0.0, 10.0));
    const double v = rng.uniform(0.0, 2.0);
    const double via_product = k_factor(std::vector<double>(std::size_t(n), v));
    const double c = (1.0 - v) * (1.0 - v);
    const double via_pow = std::pow(c, n) - std::pow(2.0 * c - 1.0, n);
    CHECK(std::abs(via_product - via_pow) <= 1e-14);
  }
}

TEST_CASE("small-v expansion: d_red = 8 sum_{i<j} v_i v_j plus cubic corrections") {
  verify::CaseRng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + int(rng.uniform(0.0, 4.0));
    const std::vector<double> v = random_v_list(rng, n, 0.0, 0.01);
    double pair_sum = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      total += v[i];
      for (std::size_t j = i + 1; j < v.size(); ++j) pair_sum += v[i] * v[j];
    }
    const double d = correlation_point_from_v(v, 0.01).d_red;
    CHECK(std::abs(d - 8.0 * pair_sum) <= 20.0 * total * 8.0 * pair_sum + 1e-18);

    // Richardson-style scaling: halving every v divides d_red by ~4.
    std::vector<double> half = v;
    for (auto& x : half) x *= 0.5;
    const double d_half = correlation_point_from_v(half, 0.01).d_red;
    if (d > 1e-12) {
      CHECK(d / d_half == doctest::Approx(4.0).epsilon(0.1));
    }
  }
}

TEST_CASE("ratio degenerate rule at t = 0") {
  const CorrelationPoint p = correlation_point_from_v({0.0, 0.0, 0.0}, 0.05);
  CHECK(p.ratio == 0.0);
  CHECK(p.i_red == 0.0);
}
