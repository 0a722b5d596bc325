#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "centralspin/io.hpp"
#include "centralspin/sweep.hpp"

using namespace centralspin;

namespace {

const ExperimentConfig kCfg{0.01};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::string emit_to_string(const SweepResult& result, io::OutputFormat fmt) {
  std::ostringstream os;
  io::emit_records(result, fmt, os);
  return os.str();
}

}  // namespace

TEST_CASE("minimal config with defaults") {
  const io::RunConfig cfg = io::parse_config(
      R"({"sequence": "fid",
          "equal": {"n": 2, "A": 1.0, "omega": 0.5},
          "sweep": {"variable": "time", "start": 0, "stop": 10, "steps": 101}})");
  CHECK(cfg.sequence == SequenceKind::Fid);
  REQUIRE(cfg.equal.has_value());
  CHECK(cfg.equal->n == 2);
  CHECK(cfg.equal->a_x == 1.0);
  CHECK(cfg.equal->omega == 0.5);
  CHECK(cfg.beta_s == 0.01);
  CHECK(cfg.format == io::OutputFormat::Csv);
  REQUIRE(cfg.sweep.has_value());
  CHECK(cfg.sweep->steps == 101);
}

TEST_CASE("config errors carry the field path") {
  using io::ConfigError;
  using io::parse_config;

  CHECK_THROWS_WITH_AS(
      parse_config(R"({"equal": {"n": 1, "A": 1, "omega": 0}, "bath": [{"A_x": 1, "omega": 0}]})"),
      doctest::Contains("bath/equal"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"sweep": {"variable": "time", "start": 0, "stop": 1, "steps": 1}})"),
      doctest::Contains("steps: must be >= 2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("{nonsense"), doctest::Contains("malformed"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"sequence": "sequency"})"),
                       doctest::Contains("sequence"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"betaS": 0.01})"), doctest::Contains("unknown key"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"beta_S": -0.5})"), doctest::Contains("beta_S"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"sweep": {"variable": "v", "start": 0, "stop": 3, "steps": 5}})"),
      doctest::Contains("[0, 2]"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"sweep": {"variable": "time", "start": 5, "stop": 1, "steps": 5}})"),
      doctest::Contains("start"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"bath": [{"A_x": 1}]})"), doctest::Contains("omega"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[1, 2]"), doctest::Contains("object"), ConfigError);
}

TEST_CASE("bath template requires exactly one source") {
  io::RunConfig cfg;
  CHECK_THROWS_WITH_AS(io::bath_template(cfg), doctest::Contains("none present"),
                       io::ConfigError);
  cfg.equal = EqualCoupling{2, 1.0, 0.0};
  CHECK_NOTHROW(io::bath_template(cfg));
  cfg.bath = SpinBath::equal_coupling(1, 1.0, 1.0);
  CHECK_THROWS_WITH_AS(io::bath_template(cfg), doctest::Contains("both present"),
                       io::ConfigError);
}

TEST_CASE("bath list parsing") {
  const SpinBath bath =
      io::parse_bath_json(R"([{"A_x": 1.5, "omega": -0.25}, {"A_x": -1.0, "omega": 0.0}])");
  REQUIRE(bath.size() == 2);
  CHECK(bath.spins[0].a_x == 1.5);
  CHECK(bath.spins[0].omega == -0.25);
  CHECK(bath.spins[1].a_x == -1.0);
}

TEST_CASE("CSV schema and the trivial first row") {
  SweepGrid grid;
  grid.variable = SweepVariable::Time;
  grid.start = 0.0;
  grid.stop = 0.0;
  grid.bath = EqualCoupling{2, 1.0, 0.5};
  const SweepResult result = run_time_sweep(grid, kCfg);
  const std::string csv = emit_to_string(result, io::OutputFormat::Csv);

  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "x,g,K,phi_opt,I_red,C_red,D_red,ratio,I_abs,C_abs,D_abs,v_1,v_2");
  CHECK(lines[1] == "0,1,0,0,0,0,0,0,0,0,0,0,0");
  CHECK(csv.back() == '\n');
}

TEST_CASE("v-sweep CSV carries the trailing normalized column") {
  const auto [n2, n10] = figure2_grids();
  const SweepResult result = run_v_sweep(n2, kCfg);
  const std::string csv = emit_to_string(result, io::OutputFormat::Csv);
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == 202);  // header + 201 records
  CHECK(lines[0] == "x,g,K,phi_opt,I_red,C_red,D_red,ratio,I_abs,C_abs,D_abs,v_1,v_2,I_norm");
  const auto fields = split(lines[101], ',');
  REQUIRE(fields.size() == 14);
  CHECK(fields[0] == "1");      // v = 1
  CHECK(fields[7] == "0");      // ratio
  CHECK(fields[4] == "2");      // I_red
  CHECK(fields[13] == "1");     // I_norm
}

TEST_CASE("CSV round-trips bit-exactly") {
  SweepGrid grid;
  grid.variable = SweepVariable::Time;
  grid.start = 0.0;
  grid.stop = 17.3;
  grid.steps = 57;
  grid.sequence = SequenceKind::Echo;
  grid.bath = SpinBath{{{0.9, 0.31}, {-1.7, 1.21}}};
  const SweepResult result = run_time_sweep(grid, kCfg);
  const std::string csv = emit_to_string(result, io::OutputFormat::Csv);

  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == result.records.size() + 1);
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto fields = split(lines[i + 1], ',');
    REQUIRE(fields.size() == 13);
    const auto& rec = result.records[i];
    const double parsed[13] = {
        std::strtod(fields[0].c_str(), nullptr),  std::strtod(fields[1].c_str(), nullptr),
        std::strtod(fields[2].c_str(), nullptr),  std::strtod(fields[3].c_str(), nullptr),
        std::strtod(fields[4].c_str(), nullptr),  std::strtod(fields[5].c_str(), nullptr),
        std::strtod(fields[6].c_str(), nullptr),  std::strtod(fields[7].c_str(), nullptr),
        std::strtod(fields[8].c_str(), nullptr),  std::strtod(fields[9].c_str(), nullptr),
        std::strtod(fields[10].c_str(), nullptr), std::strtod(fields[11].c_str(), nullptr),
        std::strtod(fields[12].c_str(), nullptr)};
    CHECK(parsed[0] == rec.x);
    CHECK(parsed[1] == rec.point.g);
    CHECK(parsed[2] == rec.point.k);
    CHECK(parsed[3] == rec.point.phi_opt);
    CHECK(parsed[4] == rec.point.i_red);
    CHECK(parsed[5] == rec.point.c_red);
    CHECK(parsed[6] == rec.point.d_red);
    CHECK(parsed[7] == rec.point.ratio);
    CHECK(parsed[8] == rec.point.i_abs);
    CHECK(parsed[9] == rec.point.c_abs);
    CHECK(parsed[10] == rec.point.d_abs);
    CHECK(parsed[11] == rec.v[0]);
    CHECK(parsed[12] == rec.v[1]);
  }
}

TEST_CASE("JSON output carries identical keys and values") {
  SweepGrid grid;
  grid.variable = SweepVariable::Time;
  grid.start = 0.0;
  grid.stop = 3.0;
  grid.steps = 4;
  grid.bath = EqualCoupling{1, 1.0, 0.5};
  const SweepResult result = run_time_sweep(grid, kCfg);
  const std::string json = emit_to_string(result, io::OutputFormat::Json);
  CHECK(json.find("\"x\":") != std::string::npos);
  CHECK(json.find("\"v_1\":") != std::string::npos);
  CHECK(json.find("\"I_abs\":") != std::string::npos);
  CHECK(json.find("I_norm") == std::string::npos);  // time sweep: fixed schema only
  CHECK(json.back() == '\n');
}

TEST_CASE("emitting an empty record list is an error") {
  SweepResult empty;
  std::ostringstream os;
  CHECK_THROWS_AS(io::emit_records(empty, io::OutputFormat::Csv, os), std::invalid_argument);
}

TEST_CASE("unwritable output path reports an error") {
  SweepGrid grid;
  grid.variable = SweepVariable::Time;
  grid.start = 0.0;
  grid.stop = 0.0;
  grid.bath = EqualCoupling{1, 1.0, 0.5};
  const SweepResult result = run_time_sweep(grid, kCfg);
  CHECK_THROWS_AS(
      io::emit_records_to_file(result, io::OutputFormat::Csv, "/nonexistent-dir/out.csv"),
      std::runtime_error);
}

TEST_CASE("double formatting survives the round trip") {
  for (double x : {0.1 + 0.2, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 0.0, 2.0}) {
    const std::string s = io::format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("repeated emission is byte-identical") {
  const auto [n2, n10] = figure2_grids();
  const std::string a = emit_to_string(run_v_sweep(n2, kCfg), io::OutputFormat::Csv);
  const std::string b = emit_to_string(run_v_sweep(n2, kCfg), io::OutputFormat::Csv);
  CHECK(a == b);
}
