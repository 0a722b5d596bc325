#include "centralspin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "centralspin/correlations.hpp"
#include "centralspin/oracle.hpp"

namespace centralspin::verify {

namespace {

struct CaseMetrics {
  double signal_err = 0.0;
  double construction_err = 0.0;
  double phase_err = 0.0;
  double mi_err = 0.0;
  double discord_err = 0.0;
  double classical_err = 0.0;
  double projection_err = 0.0;
  double n1_d_red = 0.0;
  double n1_d_exact = 0.0;
};

// Relative deviation with an absolute floor: err/floor when the reference
// is below the floor, plain relative error otherwise.
double floored_relative(double got, double want, double floor) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

CaseMetrics evaluate_case(const OracleCase& c, SequenceKind seq, double beta_s,
                          std::size_t cap, double scale2) {
  namespace orc = centralspin::oracle;
  CaseMetrics m;
  const std::size_t n = c.bath.size();
  const double dim = std::pow(2.0, double(n));

  std::vector<double> v_list;
  std::vector<double> thetas;
  for (const auto& spin : c.bath.spins) {
    const BranchParams b = derive_branch(spin, c.t, seq);
    v_list.push_back(b.v);
    thetas.push_back(b.theta);
  }
  const CorrelationPoint point = correlation_point_from_v(v_list, beta_s);

  const orc::DenseOperator u = orc::evolution_unitary(c.bath, c.t, seq, cap);
  m.signal_err = std::abs(point.g - u.mat().trace().real() / dim);

  m.phase_err = orc::phase_multiset_distance(orc::eigenphase_spectrum(u).phases,
                                             orc::branch_phase_multiset(thetas));

  const orc::DenseOperator rho = orc::density_matrix(c.bath, c.t, seq, beta_s, cap);
  const orc::DenseOperator rho_pulsed =
      orc::density_matrix_pulsed(c.bath, c.t, seq, beta_s, cap);
  m.construction_err = (rho.mat() - rho_pulsed.mat()).cwiseAbs().maxCoeff();

  const double i_exact = orc::mutual_information_exact(rho);
  m.mi_err = floored_relative(i_exact, point.i_abs, 1e-9);

  // The 1e-7 bits floor absorbs genuine quartic-order discord; it scales as
  // beta^4 = (relative tolerance scale) x (floor scale), hence scale2 here.
  const orc::DiscordResult d =
      orc::discord_exact(c.bath, c.t, seq, beta_s, cap, ExecutionPolicy::Serial);
  m.discord_err = floored_relative(d.d_bits, point.d_abs, 1e-7 * scale2);
  m.classical_err = floored_relative(d.c_bits, point.c_abs, 1e-7 * scale2);

  // Projection channel: trace preserved, projecting twice = projecting once.
  const orc::MeasurementAxis axis{0.7, 0.0};
  const orc::DenseOperator projected = orc::projected_state(rho, axis);
  const orc::DenseOperator twice = orc::projected_state(projected, axis);
  m.projection_err = std::max(std::abs(projected.mat().trace().real() - 1.0),
                              (twice.mat() - projected.mat()).cwiseAbs().maxCoeff());

  if (n == 1) {
    m.n1_d_red = point.d_red;
    m.n1_d_exact = std::abs(d.d_bits);
  }
  return m;
}

}  // namespace

std::uint64_t CaseRng::next_word() {
  // splitmix64: tiny, stable across platforms, good enough for test cases.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CaseRng::uniform(double lo, double hi) {
  const double unit = double(next_word() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::vector<OracleCase> draw_cases(std::uint64_t seed, int n_spins, int count) {
  CaseRng rng(seed + 0x1000u * std::uint64_t(n_spins));
  std::vector<OracleCase> cases;
  cases.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    OracleCase c;
    for (int j = 0; j < n_spins; ++j) {
      c.bath.spins.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
    }
    c.t = rng.uniform(0.0, 20.0);
    cases.push_back(std::move(c));
  }
  return cases;
}

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

VerifyReport run_verify(const VerifyOptions& options) {
  namespace orc = centralspin::oracle;
  const double beta_ratio = options.beta_s / 0.01;
  const double scale2 = std::max(1.0, beta_ratio * beta_ratio);
  const double scale4 = scale2 * scale2;

  struct Suite {
    OracleCase c;
    SequenceKind seq;
  };
  std::vector<Suite> suite;
  bool has_n1 = false;
  for (int n : options.n_values) {
    if (n < 0 || std::size_t(n) > options.oracle_cap) {
      throw std::invalid_argument("verify: n exceeds oracle cap");
    }
    has_n1 = has_n1 || n == 1;
    for (auto& c : draw_cases(options.seed, n, options.cases_per_n)) {
      suite.push_back({c, SequenceKind::Fid});
      suite.push_back({std::move(c), SequenceKind::Echo});
    }
  }

  std::vector<CaseMetrics> metrics(suite.size());
  const bool parallel = options.policy == ExecutionPolicy::Parallel;
  const std::ptrdiff_t count = std::ptrdiff_t(suite.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    metrics[std::size_t(i)] = evaluate_case(suite[std::size_t(i)].c, suite[std::size_t(i)].seq,
                                            options.beta_s, options.oracle_cap, scale2);
  }

  CaseMetrics worst;
  for (const auto& m : metrics) {
    worst.signal_err = std::max(worst.signal_err, m.signal_err);
    worst.construction_err = std::max(worst.construction_err, m.construction_err);
    worst.phase_err = std::max(worst.phase_err, m.phase_err);
    worst.mi_err = std::max(worst.mi_err, m.mi_err);
    worst.discord_err = std::max(worst.discord_err, m.discord_err);
    worst.classical_err = std::max(worst.classical_err, m.classical_err);
    worst.projection_err = std::max(worst.projection_err, m.projection_err);
    worst.n1_d_red = std::max(worst.n1_d_red, m.n1_d_red);
    worst.n1_d_exact = std::max(worst.n1_d_exact, m.n1_d_exact);
  }

  // In-plane optimality on its own smaller suite (n <= 3): a coarse
  // full-sphere scan must never beat the refined a_z = 0 maximum.
  double sphere_excess = 0.0;
  {
    std::vector<OracleCase> cases;
    CaseRng nrng(options.seed ^ 0xa5a5a5a5ULL);
    for (int i = 0; i < options.sphere_cases; ++i) {
      const int n = 1 + int(nrng.uniform(0.0, 3.0));
      auto drawn = draw_cases(options.seed + 77u * std::uint64_t(i + 1), n, 1);
      cases.push_back(std::move(drawn.front()));
    }
    std::vector<double> excess(cases.size());
    const std::ptrdiff_t sc = std::ptrdiff_t(cases.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t i = 0; i < sc; ++i) {
      const auto& c = cases[std::size_t(i)];
      const SequenceKind seq = i % 2 == 0 ? SequenceKind::Fid : SequenceKind::Echo;
      const orc::DiscordResult d =
          orc::discord_exact(c.bath, c.t, seq, options.beta_s, options.oracle_cap,
                             ExecutionPolicy::Serial);
      const orc::DenseOperator rho =
          orc::density_matrix(c.bath, c.t, seq, options.beta_s, options.oracle_cap);
      excess[std::size_t(i)] = orc::max_projected_mi_sphere(rho) - d.c_bits;
    }
    for (double e : excess) sphere_excess = std::max(sphere_excess, e);
  }

  VerifyReport report;
  report.options = options;
  auto add = [&](const std::string& name, double got, double tol) {
    report.checks.push_back({name, got, tol, got <= tol});
  };
  add("signal-trace equivalence", worst.signal_err, 1e-12);
  add("construction equivalence (pulse path)", worst.construction_err, 1e-12);
  add("eigenphase factorization", worst.phase_err, 1e-9);
  add("mutual information equivalence", worst.mi_err, 1e-3 * scale2);
  add("discord equivalence", worst.discord_err, 1e-2 * scale2);
  add("classical correlation equivalence", worst.classical_err, 1e-2 * scale2);
  add("projection idempotence and trace", worst.projection_err, 1e-12);
  add("in-plane measurement optimality", sphere_excess, 1e-9);
  if (has_n1) {
    add("n=1 zero discord (analytic)", worst.n1_d_red, 1e-12);
    add("n=1 zero discord (oracle)", worst.n1_d_exact, 1e-7 * scale4);
  }
  return report;
}

void print_report(const VerifyReport& report, std::ostream& os) {
  os << "seed: " << report.options.seed << "  cases per n: " << report.options.cases_per_n
     << "  beta_S: " << report.options.beta_s << "\n";
  char line[160];
  for (const auto& check : report.checks) {
    std::snprintf(line, sizeof line, "%-42s %11.3e  (tol %8.1e)  %s", check.name.c_str(),
                  check.worst, check.tol, check.pass ? "PASS" : "FAIL");
    os << line << "\n";
  }
  os << (report.all_pass() ? "verify: all checks passed" : "verify: FAILURES present") << "\n";
}

}  // namespace centralspin::verify
