#include "centralspin/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace centralspin::io {

namespace {

using nlohmann::ordered_json;

double require_finite_number(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) {
    throw ConfigError(path + ": must be a number");
  }
  const double x = j.get<double>();
  if (!std::isfinite(x)) {
    throw ConfigError(path + ": must be finite");
  }
  return x;
}

std::size_t require_count(const ordered_json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError(path + ": must be a non-negative integer");
  }
  return std::size_t(j.get<long long>());
}

void reject_unknown_keys(const ordered_json& obj, const std::vector<std::string>& known,
                         const std::string& path) {
  for (const auto& item : obj.items()) {
    bool found = false;
    for (const auto& k : known) {
      if (item.key() == k) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConfigError(path + item.key() + ": unknown key");
    }
  }
}

SequenceKind parse_sequence(const ordered_json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "fid") return SequenceKind::Fid;
    if (s == "echo") return SequenceKind::Echo;
  }
  throw ConfigError(path + ": must be \"fid\" or \"echo\"");
}

SweepVariable parse_variable(const ordered_json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "time") return SweepVariable::Time;
    if (s == "field") return SweepVariable::FieldRatio;
    if (s == "v") return SweepVariable::VParameter;
  }
  throw ConfigError(path + ": must be \"time\", \"field\" or \"v\"");
}

SpinBath parse_bath_array(const ordered_json& arr, const std::string& path) {
  if (!arr.is_array()) {
    throw ConfigError(path + ": must be a list of {A_x, omega} objects");
  }
  SpinBath bath;
  bath.spins.reserve(arr.size());
  std::size_t idx = 0;
  for (const auto& item : arr) {
    const std::string p = path + "[" + std::to_string(idx) + "]";
    if (!item.is_object()) throw ConfigError(p + ": must be an object");
    reject_unknown_keys(item, {"A_x", "omega"}, p + ".");
    if (!item.contains("A_x") || !item.contains("omega")) {
      throw ConfigError(p + ": needs both A_x and omega");
    }
    NuclearSpinParam spin;
    spin.a_x = require_finite_number(item.at("A_x"), p + ".A_x");
    spin.omega = require_finite_number(item.at("omega"), p + ".omega");
    bath.spins.push_back(spin);
    ++idx;
  }
  return bath;
}

SweepSpec parse_sweep_spec(const ordered_json& obj, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + ": must be an object");
  reject_unknown_keys(obj, {"variable", "start", "stop", "steps"}, path + ".");
  for (const char* key : {"variable", "start", "stop", "steps"}) {
    if (!obj.contains(key)) throw ConfigError(path + "." + key + ": missing");
  }
  SweepSpec spec;
  spec.variable = parse_variable(obj.at("variable"), path + ".variable");
  spec.start = require_finite_number(obj.at("start"), path + ".start");
  spec.stop = require_finite_number(obj.at("stop"), path + ".stop");
  spec.steps = require_count(obj.at("steps"), path + ".steps");
  if (spec.steps < 2) throw ConfigError(path + ".steps: must be >= 2");
  if (spec.start > spec.stop) throw ConfigError(path + ".start: must be <= stop");
  if (spec.variable == SweepVariable::VParameter && (spec.start < 0.0 || spec.stop > 2.0)) {
    throw ConfigError(path + ": v sweep range must lie in [0, 2]");
  }
  if (spec.variable == SweepVariable::Time && spec.start < 0.0) {
    throw ConfigError(path + ".start: time must be >= 0");
  }
  return spec;
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("config: malformed JSON: ") + err.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  const ordered_json doc = parse_document(json_text);
  if (!doc.is_object()) {
    throw ConfigError("config: top-level value must be a JSON object");
  }
  reject_unknown_keys(doc, {"sequence", "equal", "bath", "beta_S", "sweep", "out", "format"},
                      "");

  RunConfig cfg;
  if (doc.contains("sequence")) {
    cfg.sequence = parse_sequence(doc.at("sequence"), "sequence");
  }
  if (doc.contains("equal")) {
    const auto& eq = doc.at("equal");
    if (!eq.is_object()) throw ConfigError("equal: must be an object");
    reject_unknown_keys(eq, {"n", "A", "omega"}, "equal.");
    for (const char* key : {"n", "A", "omega"}) {
      if (!eq.contains(key)) throw ConfigError(std::string("equal.") + key + ": missing");
    }
    EqualCoupling e;
    e.n = require_count(eq.at("n"), "equal.n");
    e.a_x = require_finite_number(eq.at("A"), "equal.A");
    e.omega = require_finite_number(eq.at("omega"), "equal.omega");
    cfg.equal = e;
  }
  if (doc.contains("bath")) {
    cfg.bath = parse_bath_array(doc.at("bath"), "bath");
  }
  if (cfg.bath && cfg.equal) {
    throw ConfigError("bath/equal: exactly one bath source must be given (both present)");
  }
  if (doc.contains("beta_S")) {
    cfg.beta_s = require_finite_number(doc.at("beta_S"), "beta_S");
    if (!(cfg.beta_s > 0.0)) throw ConfigError("beta_S: must be > 0");
  }
  if (doc.contains("sweep")) {
    cfg.sweep = parse_sweep_spec(doc.at("sweep"), "sweep");
  }
  if (doc.contains("out")) {
    if (!doc.at("out").is_string()) throw ConfigError("out: must be a string");
    cfg.out = doc.at("out").get<std::string>();
  }
  if (doc.contains("format")) {
    const auto& f = doc.at("format");
    if (f.is_string() && f.get<std::string>() == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (f.is_string() && f.get<std::string>() == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ConfigError("format: must be \"csv\" or \"json\"");
    }
  }
  return cfg;
}

SpinBath parse_bath_json(const std::string& json_text) {
  return parse_bath_array(parse_document(json_text), "bath");
}

SpinBath load_bath_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("bath: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_bath_json(buf.str());
}

std::variant<SpinBath, EqualCoupling> bath_template(const RunConfig& cfg) {
  if (cfg.bath && cfg.equal) {
    throw ConfigError("bath/equal: exactly one bath source must be given (both present)");
  }
  if (cfg.bath) return *cfg.bath;
  if (cfg.equal) return *cfg.equal;
  throw ConfigError("bath/equal: exactly one bath source must be given (none present)");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> record_columns(const SweepResult& result) {
  std::vector<std::string> cols = {"x",     "g",     "K",     "phi_opt", "I_red", "C_red",
                                   "D_red", "ratio", "I_abs", "C_abs",   "D_abs"};
  const std::size_t n = result.records.empty() ? 0 : result.records.front().v.size();
  for (std::size_t j = 1; j <= n; ++j) {
    cols.push_back("v_" + std::to_string(j));
  }
  if (result.variable == SweepVariable::VParameter) {
    cols.push_back("I_norm");
  }
  return cols;
}

namespace {

std::vector<double> record_values(const SweepRecord& rec, bool with_i_norm) {
  std::vector<double> vals = {rec.x,           rec.point.g,     rec.point.k,
                              rec.point.phi_opt, rec.point.i_red, rec.point.c_red,
                              rec.point.d_red, rec.point.ratio, rec.point.i_abs,
                              rec.point.c_abs, rec.point.d_abs};
  vals.insert(vals.end(), rec.v.begin(), rec.v.end());
  if (with_i_norm) vals.push_back(0.5 * rec.point.i_red);
  return vals;
}

}  // namespace

void emit_records(const SweepResult& result, OutputFormat format, std::ostream& os) {
  if (result.records.empty()) {
    throw std::invalid_argument("emit_records: record list must be non-empty");
  }
  const std::vector<std::string> cols = record_columns(result);
  const bool with_i_norm = result.variable == SweepVariable::VParameter;

  if (format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i > 0) os << ',';
      os << cols[i];
    }
    os << '\n';
    for (const auto& rec : result.records) {
      const std::vector<double> vals = record_values(rec, with_i_norm);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i > 0) os << ',';
        os << format_double(vals[i]);
      }
      os << '\n';
    }
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& rec : result.records) {
      const std::vector<double> vals = record_values(rec, with_i_norm);
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < cols.size(); ++i) obj[cols[i]] = vals[i];
      arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
  }
  if (!os) {
    throw std::runtime_error("emit_records: write failed");
  }
}

void emit_records_to_file(const SweepResult& result, OutputFormat format,
                          const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("emit_records: cannot open output file: " + path);
  }
  emit_records(result, format, os);
}

}  // namespace centralspin::io
