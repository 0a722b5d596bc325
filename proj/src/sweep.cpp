#include "centralspin/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace centralspin {

namespace {

std::vector<double> grid_points(const SweepGrid& grid) {
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop)) {
    throw std::invalid_argument("sweep: start/stop must be finite");
  }
  if (grid.start > grid.stop) {
    throw std::invalid_argument("sweep: start must be <= stop");
  }
  if (grid.start == grid.stop) {
    // Degenerate grid: a single evaluation point.
    return {grid.start};
  }
  if (grid.steps < 2) {
    throw std::invalid_argument("sweep: steps must be >= 2");
  }
  const double step = (grid.stop - grid.start) / double(grid.steps - 1);
  std::vector<double> xs(grid.steps);
  for (std::size_t i = 0; i < grid.steps; ++i) {
    xs[i] = i + 1 == grid.steps ? grid.stop : grid.start + double(i) * step;
  }
  return xs;
}

SpinBath materialize(const std::variant<SpinBath, EqualCoupling>& tpl) {
  if (const auto* bath = std::get_if<SpinBath>(&tpl)) return *bath;
  const auto& eq = std::get<EqualCoupling>(tpl);
  return SpinBath::equal_coupling(eq.n, eq.a_x, eq.omega);
}

std::size_t equal_spin_count(const SweepGrid& grid, const char* what) {
  const auto* eq = std::get_if<EqualCoupling>(&grid.bath);
  if (eq == nullptr) {
    throw std::invalid_argument(std::string(what) + " requires an equal-coupling bath template");
  }
  return eq->n;
}

template <typename MakeRecord>
SweepResult evaluate(const SweepGrid& grid, ExecutionPolicy policy, MakeRecord make_record) {
  const std::vector<double> xs = grid_points(grid);
  SweepResult out;
  out.variable = grid.variable;
  out.records.resize(xs.size());
  const bool parallel = policy == ExecutionPolicy::Parallel;
  const std::ptrdiff_t count = std::ptrdiff_t(xs.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out.records[std::size_t(i)] = make_record(xs[std::size_t(i)]);
  }
  return out;
}

}  // namespace

SweepResult run_time_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                           ExecutionPolicy policy) {
  if (grid.variable != SweepVariable::Time) {
    throw std::invalid_argument("run_time_sweep: grid variable must be time");
  }
  if (grid.start < 0.0) {
    throw std::invalid_argument("run_time_sweep: time must be >= 0");
  }
  const SpinBath bath = materialize(grid.bath);
  return evaluate(grid, policy, [&](double t) {
    SweepRecord rec;
    rec.x = t;
    rec.v = branch_v_list(bath, t, grid.sequence);
    rec.point = correlation_point_from_v(rec.v, cfg.beta_s);
    return rec;
  });
}

double field_envelope_v(double x, SequenceKind seq) {
  const double x2 = x * x;
  const double denom = 1.0 + x2;
  if (seq == SequenceKind::Fid) {
    return 2.0 / denom;
  }
  return 8.0 * x2 / (denom * denom);
}

SweepResult run_field_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                            ExecutionPolicy policy) {
  if (grid.variable != SweepVariable::FieldRatio) {
    throw std::invalid_argument("run_field_sweep: grid variable must be field_ratio");
  }
  const std::size_t n = equal_spin_count(grid, "run_field_sweep");
  return evaluate(grid, policy, [&](double x) {
    SweepRecord rec;
    rec.x = x;
    rec.v.assign(n, field_envelope_v(x, grid.sequence));
    rec.point = correlation_point_from_v(rec.v, cfg.beta_s);
    return rec;
  });
}

SweepResult run_v_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                        ExecutionPolicy policy) {
  if (grid.variable != SweepVariable::VParameter) {
    throw std::invalid_argument("run_v_sweep: grid variable must be v_parameter");
  }
  if (grid.start < 0.0 || grid.stop > 2.0) {
    throw std::invalid_argument("run_v_sweep: v must lie in [0, 2]");
  }
  const std::size_t n = equal_spin_count(grid, "run_v_sweep");
  return evaluate(grid, policy, [&](double v) {
    SweepRecord rec;
    rec.x = v;
    rec.v.assign(n, v);
    rec.point = correlation_point_from_v(rec.v, cfg.beta_s);
    return rec;
  });
}

SweepResult run_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                      ExecutionPolicy policy) {
  switch (grid.variable) {
    case SweepVariable::Time: return run_time_sweep(grid, cfg, policy);
    case SweepVariable::FieldRatio: return run_field_sweep(grid, cfg, policy);
    case SweepVariable::VParameter: return run_v_sweep(grid, cfg, policy);
  }
  throw std::logic_error("run_sweep: unknown variable");
}

SweepGrid figure1_grid(SequenceKind seq, std::size_t n) {
  SweepGrid grid;
  grid.variable = SweepVariable::FieldRatio;
  grid.start = 0.0;
  grid.stop = 4.0;
  grid.steps = 401;
  grid.sequence = seq;
  grid.bath = EqualCoupling{n, 1.0, 0.0};
  return grid;
}

std::pair<SweepGrid, SweepGrid> figure2_grids() {
  SweepGrid base;
  base.variable = SweepVariable::VParameter;
  base.start = 0.0;
  base.stop = 2.0;
  base.steps = 201;
  base.sequence = SequenceKind::Fid;
  SweepGrid n2 = base;
  n2.bath = EqualCoupling{2, 1.0, 0.0};
  SweepGrid n10 = base;
  n10.bath = EqualCoupling{10, 1.0, 0.0};
  return {n2, n10};
}

}  // namespace centralspin
