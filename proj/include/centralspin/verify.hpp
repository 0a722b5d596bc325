#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "centralspin/execution.hpp"
#include "centralspin/spin_model.hpp"

namespace centralspin::verify {

// Deterministic case generator: couplings and Larmor frequencies uniform in
// [-2, 2], times uniform in [0, 20]. The mapping from engine output to
// doubles is fixed here (not the standard library's distribution) so the
// same seed draws the same cases with any compiler.
class CaseRng {
 public:
  explicit CaseRng(std::uint64_t seed) : state_(seed) {}
  double uniform(double lo, double hi);

 private:
  std::uint64_t next_word();
  std::uint64_t state_;
};

struct OracleCase {
  SpinBath bath;
  double t = 0.0;
};

std::vector<OracleCase> draw_cases(std::uint64_t seed, int n_spins, int count);

struct VerifyOptions {
  std::uint64_t seed = 12345;
  int cases_per_n = 100;
  std::vector<int> n_values = {1, 2, 3, 4};
  double beta_s = 0.01;
  std::size_t oracle_cap = 8;
  int sphere_cases = 20;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

struct CheckResult {
  std::string name;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Runs every oracle-vs-analytic equivalence check over the seeded random
// suite (each case evaluated for both FID and echo). Truncation-limited
// tolerances scale with (beta_s/0.01)^2; the quartic n = 1 discord floor
// scales with the fourth power.
VerifyReport run_verify(const VerifyOptions& options);

// One pass/fail line per check plus the seed header.
void print_report(const VerifyReport& report, std::ostream& os);

}  // namespace centralspin::verify
