#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "centralspin/correlations.hpp"
#include "centralspin/execution.hpp"
#include "centralspin/spin_model.hpp"

namespace centralspin {

enum class SweepVariable { Time, FieldRatio, VParameter };

// Shorthand bath template: n identical spins.
struct EqualCoupling {
  std::size_t n = 1;
  double a_x = 1.0;
  double omega = 0.0;
};

// Declarative 1-D sweep. field_ratio is the dimensionless 2*omega/a_x axis;
// the v sweep treats v itself as the independent variable for all spins.
struct SweepGrid {
  SweepVariable variable = SweepVariable::Time;
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;
  SequenceKind sequence = SequenceKind::Fid;
  std::variant<SpinBath, EqualCoupling> bath = EqualCoupling{};
};

// One grid point: the sweep value, the per-spin v list and every
// correlation quantity at that point.
struct SweepRecord {
  double x = 0.0;
  std::vector<double> v;
  CorrelationPoint point;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::Time;
  std::vector<SweepRecord> records;
};

// Grid points are independent; the parallel policy evaluates them under
// OpenMP and stores each record at its grid index, so the output is
// bit-identical to the serial reference path.
SweepResult run_time_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                           ExecutionPolicy policy = ExecutionPolicy::Parallel);
SweepResult run_field_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                            ExecutionPolicy policy = ExecutionPolicy::Parallel);
SweepResult run_v_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                        ExecutionPolicy policy = ExecutionPolicy::Parallel);
SweepResult run_sweep(const SweepGrid& grid, const ExperimentConfig& cfg,
                      ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Time-envelope of the dephasing parameter as a function of x = 2*omega/a_x:
// sin^2(t Omega/2) = 1 for FID (v = 2/(1+x^2)), sin^4 = 1 for the echo
// (v = 8x^2/(1+x^2)^2).
double field_envelope_v(double x, SequenceKind seq);

// Fixed presets. figure1: field ratio 0..4, 401 steps, per sequence.
// figure2: v 0..2, 201 steps, for n = 2 and n = 10 equal-coupling baths.
SweepGrid figure1_grid(SequenceKind seq, std::size_t n = 1);
std::pair<SweepGrid, SweepGrid> figure2_grids();

}  // namespace centralspin
