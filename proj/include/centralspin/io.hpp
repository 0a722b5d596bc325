#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "centralspin/sweep.hpp"

namespace centralspin::io {

enum class OutputFormat { Csv, Json };

struct SweepSpec {
  SweepVariable variable = SweepVariable::Time;
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;
};

// Parsed run description. The bath comes from exactly one source (explicit
// list XOR equal-coupling shorthand); bath_template enforces that before
// any computation.
struct RunConfig {
  SequenceKind sequence = SequenceKind::Fid;
  std::optional<SpinBath> bath;
  std::optional<EqualCoupling> equal;
  double beta_s = 0.01;
  std::optional<SweepSpec> sweep;
  std::string out;  // empty means stdout
  OutputFormat format = OutputFormat::Csv;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the single-JSON-object configuration document. Defaults:
// beta_S = 0.01, format = csv. Errors name the offending field.
RunConfig parse_config(const std::string& json_text);

// JSON list of {"A_x": ..., "omega": ...} entries.
SpinBath parse_bath_json(const std::string& json_text);
SpinBath load_bath_file(const std::string& path);

std::variant<SpinBath, EqualCoupling> bath_template(const RunConfig& cfg);

// Column names for a sweep result: the fixed schema
// x,g,K,phi_opt,I_red,C_red,D_red,ratio,I_abs,C_abs,D_abs,v_1..v_n,
// plus a trailing I_norm (= I_red/2) for v sweeps.
std::vector<std::string> record_columns(const SweepResult& result);

// CSV: fixed header row, %.17g values, LF line endings, newline-terminated.
// JSON: array of flat objects with the same keys. Requires >= 1 record.
void emit_records(const SweepResult& result, OutputFormat format, std::ostream& os);
void emit_records_to_file(const SweepResult& result, OutputFormat format,
                          const std::string& path);

// Round-trip-exact double formatting used by the CSV writer.
std::string format_double(double x);

}  // namespace centralspin::io
