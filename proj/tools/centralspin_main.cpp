// Command-line front end: closed-form correlation sweeps for an electron
// spin coupled to n nuclear spins under FID and spin-echo sequences, plus
// the exact dense-matrix verification suite.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "centralspin/correlations.hpp"
#include "centralspin/io.hpp"
#include "centralspin/oracle.hpp"
#include "centralspin/sweep.hpp"
#include "centralspin/verify.hpp"

namespace {

using namespace centralspin;

struct CommonArgs {
  std::string config_path;
  std::string seq;
  std::string equal_spec;  // "n,A,omega"
  std::string bath_path;
  double beta = -1.0;  // <0 means "not given"
  std::string sweep_var;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<long long> steps;
  std::string out;
  bool out_given = false;
  std::string format;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool with_sweep) {
  cmd->add_option("--config", args.config_path, "JSON configuration file; flags override it");
  cmd->add_option("--seq", args.seq, "pulse sequence")->check(CLI::IsMember({"fid", "echo"}));
  cmd->add_option("--equal", args.equal_spec,
                  "equal-coupling bath shorthand: n,A,omega");
  cmd->add_option("--bath", args.bath_path, "JSON file with a list of {A_x, omega}");
  cmd->add_option("--beta", args.beta, "electron polarization beta_S (default 0.01)");
  if (with_sweep) {
    cmd->add_option("--sweep", args.sweep_var, "sweep variable; must match the subcommand")
        ->check(CLI::IsMember({"time", "field", "v"}));
    cmd->add_option("--start", args.start, "sweep start");
    cmd->add_option("--stop", args.stop, "sweep stop");
    cmd->add_option("--steps", args.steps, "grid point count (>= 2)");
  }
  cmd->add_option("--out", args.out, "output path (default: stdout)")
      ->each([&args](const std::string&) { args.out_given = true; });
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

EqualCoupling parse_equal_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::string field;
  std::vector<std::string> parts;
  while (std::getline(in, field, ',')) parts.push_back(field);
  if (parts.size() != 3) {
    throw io::ConfigError("--equal: expected n,A,omega");
  }
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(parts[0], &pos);
    if (pos != parts[0].size() || n < 0) throw std::invalid_argument("n");
    EqualCoupling eq;
    eq.n = std::size_t(n);
    eq.a_x = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw std::invalid_argument("A");
    eq.omega = std::stod(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument("omega");
    return eq;
  } catch (const std::exception&) {
    throw io::ConfigError("--equal: expected n,A,omega with integer n");
  }
}

io::RunConfig load_config(const CommonArgs& args) {
  io::RunConfig cfg;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw io::ConfigError("config: cannot open file: " + args.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    cfg = io::parse_config(buf.str());
  }
  if (!args.seq.empty()) {
    cfg.sequence = args.seq == "fid" ? SequenceKind::Fid : SequenceKind::Echo;
  }
  if (!args.equal_spec.empty() && !args.bath_path.empty()) {
    throw io::ConfigError("bath/equal: exactly one bath source must be given (both flags)");
  }
  if (!args.equal_spec.empty()) {
    cfg.equal = parse_equal_spec(args.equal_spec);
    cfg.bath.reset();
  }
  if (!args.bath_path.empty()) {
    cfg.bath = io::load_bath_file(args.bath_path);
    cfg.equal.reset();
  }
  if (args.beta >= 0.0) {
    if (!(args.beta > 0.0)) throw io::ConfigError("--beta: must be > 0");
    cfg.beta_s = args.beta;
  }
  if (args.out_given) cfg.out = args.out;
  if (!args.format.empty()) {
    cfg.format = args.format == "json" ? io::OutputFormat::Json : io::OutputFormat::Csv;
  }
  if (cfg.beta_s > 0.1) {
    std::cerr << "warning: beta_S = " << cfg.beta_s
              << " is large; the quadratic-order formulas degrade above ~0.1\n";
  }
  return cfg;
}

const char* variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::Time: return "time";
    case SweepVariable::FieldRatio: return "field";
    case SweepVariable::VParameter: return "v";
  }
  return "?";
}

SweepGrid merge_grid(const CommonArgs& args, const io::RunConfig& cfg, SweepVariable expected,
                     double def_start, double def_stop, std::size_t def_steps) {
  SweepGrid grid;
  grid.variable = expected;
  grid.start = def_start;
  grid.stop = def_stop;
  grid.steps = def_steps;
  if (cfg.sweep) {
    if (cfg.sweep->variable != expected) {
      throw io::ConfigError(std::string("sweep.variable: this subcommand sweeps \"") +
                            variable_name(expected) + "\"");
    }
    grid.start = cfg.sweep->start;
    grid.stop = cfg.sweep->stop;
    grid.steps = cfg.sweep->steps;
  }
  if (!args.sweep_var.empty()) {
    const std::string expect_name = variable_name(expected);
    if (args.sweep_var != expect_name) {
      throw io::ConfigError("--sweep: this subcommand sweeps \"" + expect_name + "\"");
    }
  }
  if (args.start) grid.start = *args.start;
  if (args.stop) grid.stop = *args.stop;
  if (args.steps) {
    if (*args.steps < 2) throw io::ConfigError("--steps: must be >= 2");
    grid.steps = std::size_t(*args.steps);
  }
  grid.sequence = cfg.sequence;
  grid.bath = io::bath_template(cfg);
  return grid;
}

void write_result(const SweepResult& result, const io::RunConfig& cfg) {
  if (cfg.out.empty()) {
    io::emit_records(result, cfg.format, std::cout);
  } else {
    io::emit_records_to_file(result, cfg.format, cfg.out);
  }
}

// figure presets write one file per variant: base.csv -> base.<tag>.csv.
std::string tagged_path(const std::string& base, const std::string& tag) {
  const std::string::size_type dot = base.find_last_of('.');
  if (dot == std::string::npos || base.find_first_of("/\\", dot) != std::string::npos) {
    return base + "." + tag;
  }
  return base.substr(0, dot) + "." + tag + base.substr(dot);
}

int run_single_point(const CommonArgs& args, double t, bool with_asymptotics) {
  const io::RunConfig cfg = load_config(args);
  if (!(t >= 0.0)) throw io::ConfigError("--t: must be >= 0");
  SweepGrid grid;
  grid.variable = SweepVariable::Time;
  grid.start = t;
  grid.stop = t;
  grid.sequence = cfg.sequence;
  grid.bath = io::bath_template(cfg);
  const SweepResult result = run_time_sweep(grid, ExperimentConfig{cfg.beta_s});
  write_result(result, cfg);
  if (with_asymptotics) {
    const AsymptoticEstimates est = asymptotic_estimates(result.records.front().v, cfg.beta_s);
    std::cerr << "diagnostic estimates (exact formulas are authoritative):\n"
              << "  I_small     " << io::format_double(est.i_small) << "\n"
              << "  ratio_small " << io::format_double(est.ratio_small) << "\n"
              << "  ratio_mid   " << io::format_double(est.ratio_mid) << "\n"
              << "  I_sat       " << io::format_double(est.i_sat) << "\n"
              << "  ratio_sat   " << io::format_double(est.ratio_sat) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlations of a central electron spin in a nuclear spin bath"};
  app.require_subcommand(1);

  CommonArgs signal_args, corr_args, field_args, vsweep_args, fig1_args, fig2_args;
  double corr_t = 0.0;
  bool corr_asym = false;

  CLI::App* signal_cmd =
      app.add_subcommand("signal", "Time sweep of the FID/echo amplitude and correlations");
  add_common_options(signal_cmd, signal_args, true);

  CLI::App* corr_cmd =
      app.add_subcommand("correlations", "Correlation measures at a single time");
  add_common_options(corr_cmd, corr_args, false);
  corr_cmd->add_option("--t", corr_t, "evaluation time (echo: inter-pulse delay)")->required();
  corr_cmd->add_flag("--asymptotics", corr_asym,
                     "print labeled small/large-time estimates to stderr");

  CLI::App* field_cmd =
      app.add_subcommand("sweep-field", "Envelope sweep over the field ratio 2*omega/A");
  add_common_options(field_cmd, field_args, true);

  CLI::App* vsweep_cmd =
      app.add_subcommand("sweep-v", "Sweep treating the dephasing parameter v directly");
  add_common_options(vsweep_cmd, vsweep_args, true);

  CLI::App* fig1_cmd = app.add_subcommand(
      "figure1", "Preset: field-ratio envelope 0..4 x 401, FID and echo files");
  add_common_options(fig1_cmd, fig1_args, false);

  CLI::App* fig2_cmd =
      app.add_subcommand("figure2", "Preset: v sweep 0..2 x 201 for n = 2 and n = 10");
  add_common_options(fig2_cmd, fig2_args, false);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Exact-oracle vs closed-form equivalence suite");
  verify::VerifyOptions vopt;
  long long verify_seed = 12345;
  std::vector<int> verify_n;
  long long verify_cap = 8;
  bool verify_serial = false;
  verify_cmd->add_option("--seed", verify_seed, "random suite seed (default 12345)");
  verify_cmd->add_option("--cases", vopt.cases_per_n, "cases per spin count (default 100)");
  verify_cmd->add_option("--n", verify_n, "spin counts to test (default 1 2 3 4)");
  verify_cmd->add_option("--beta", vopt.beta_s, "beta_S for oracle runs (default 0.01)");
  verify_cmd->add_option("--oracle-cap", verify_cap, "max nuclear spins (default 8)");
  verify_cmd->add_option("--sphere-cases", vopt.sphere_cases,
                         "full-sphere optimality cases (default 20)");
  verify_cmd->add_flag("--serial", verify_serial, "run the suite on the serial reference path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (signal_cmd->parsed()) {
      const io::RunConfig cfg = load_config(signal_args);
      const SweepGrid grid = merge_grid(signal_args, cfg, SweepVariable::Time, 0.0, 10.0, 101);
      write_result(run_time_sweep(grid, ExperimentConfig{cfg.beta_s}), cfg);
    } else if (corr_cmd->parsed()) {
      return run_single_point(corr_args, corr_t, corr_asym);
    } else if (field_cmd->parsed()) {
      const io::RunConfig cfg = load_config(field_args);
      const SweepGrid grid =
          merge_grid(field_args, cfg, SweepVariable::FieldRatio, 0.0, 4.0, 401);
      write_result(run_field_sweep(grid, ExperimentConfig{cfg.beta_s}), cfg);
    } else if (vsweep_cmd->parsed()) {
      const io::RunConfig cfg = load_config(vsweep_args);
      const SweepGrid grid =
          merge_grid(vsweep_args, cfg, SweepVariable::VParameter, 0.0, 2.0, 201);
      write_result(run_v_sweep(grid, ExperimentConfig{cfg.beta_s}), cfg);
    } else if (fig1_cmd->parsed()) {
      io::RunConfig cfg = load_config(fig1_args);
      if (!cfg.bath && !cfg.equal) cfg.equal = EqualCoupling{1, 1.0, 0.0};
      const auto* eq = cfg.equal ? &*cfg.equal : nullptr;
      if (eq == nullptr) throw io::ConfigError("figure1 requires an equal-coupling bath");
      const std::string base = cfg.out.empty() ? "figure1.csv" : cfg.out;
      for (SequenceKind seq : {SequenceKind::Fid, SequenceKind::Echo}) {
        SweepGrid grid = figure1_grid(seq, eq->n);
        const SweepResult result = run_field_sweep(grid, ExperimentConfig{cfg.beta_s});
        const std::string path =
            tagged_path(base, seq == SequenceKind::Fid ? "fid" : "echo");
        io::emit_records_to_file(result, cfg.format, path);
        std::cerr << "wrote " << path << "\n";
      }
    } else if (fig2_cmd->parsed()) {
      const io::RunConfig cfg = load_config(fig2_args);
      const std::string base = cfg.out.empty() ? "figure2.csv" : cfg.out;
      const auto [grid_n2, grid_n10] = figure2_grids();
      for (const auto& [grid, tag] :
           {std::pair{grid_n2, std::string("n2")}, std::pair{grid_n10, std::string("n10")}}) {
        const SweepResult result = run_v_sweep(grid, ExperimentConfig{cfg.beta_s});
        const std::string path = tagged_path(base, tag);
        io::emit_records_to_file(result, cfg.format, path);
        std::cerr << "wrote " << path << "\n";
      }
    } else if (verify_cmd->parsed()) {
      vopt.seed = std::uint64_t(verify_seed);
      if (!verify_n.empty()) vopt.n_values = verify_n;
      if (verify_cap < 0) throw io::ConfigError("--oracle-cap: must be >= 0");
      vopt.oracle_cap = std::size_t(verify_cap);
      if (verify_serial) vopt.policy = ExecutionPolicy::Serial;
      if (vopt.beta_s > 0.1) {
        std::cerr << "warning: beta_S = " << vopt.beta_s
                  << " loosens the truncation tolerances by (beta_S/0.01)^2\n";
      }
      const verify::VerifyReport report = verify::run_verify(vopt);
      verify::print_report(report, std::cout);
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
