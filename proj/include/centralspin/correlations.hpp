#pragma once

#include <vector>

#include "centralspin/spin_model.hpp"

namespace centralspin {

// All correlation measures at one evaluation point. Reduced quantities are
// in units of beta_s^2/(16 ln 2); absolute quantities are in bits.
//
// Invariants maintained by correlation_point:
//   i_red == c_red + d_red  (bit-exact),  0 <= d_red,  ratio in [0, 1/2].
struct CorrelationPoint {
  double g = 1.0;        // signal amplitude, prod_j (1 - v_j)
  double k = 0.0;        // interference factor K
  double phi_opt = 0.0;  // optimal measurement angle, 0 or pi/2
  double i_red = 0.0;    // total correlations (reduced units)
  double c_red = 0.0;    // classical part (reduced units)
  double d_red = 0.0;    // quantum discord (reduced units)
  double ratio = 0.0;    // d/i, in [0, 1/2]
  double i_abs = 0.0;    // total correlations, bits
  double c_abs = 0.0;    // classical part, bits
  double d_abs = 0.0;    // quantum discord, bits
};

// FID / echo amplitude g = prod_j (1 - v_j); 1 for an empty bath.
double signal_from_v(const std::vector<double>& v_list);
double signal(const SpinBath& bath, double t, SequenceKind seq);

struct MutualInformationValue {
  double reduced = 0.0;  // 2(1 - g^2), units of beta_s^2/(16 ln 2)
  double bits = 0.0;     // beta_s^2 (1 - g^2) / (8 ln 2)
};

// Total (classical + quantum) correlations between electron and bath.
MutualInformationValue mutual_information(double g, double beta_s);

// K = prod_j (1 - v_j)^2 - prod_j [2(1 - v_j)^2 - 1]; 0 for an empty list.
double k_factor(const std::vector<double>& v_list);

// Measurement angle maximizing the projected mutual information:
// 0 for K < 0, pi/2 for K > 0, 0 for the K = 0 tie.
double optimal_angle(double k);

// Assembles every correlation quantity from the branch parameters.
CorrelationPoint correlation_point_from_v(const std::vector<double>& v_list, double beta_s);
CorrelationPoint correlation_point(const SpinBath& bath, double t, SequenceKind seq,
                                   const ExperimentConfig& cfg);

// Small-time / intermediate / saturation estimates. Diagnostic only: the
// exact product formulas above are always authoritative. ratio_small keeps
// the literal small-time reading sum_j v_j even though the exact expansion
// behaves like (n-1)v for n equal spins.
struct AsymptoticEstimates {
  double i_small = 0.0;      // beta_s^2 sum(v) / (4 ln 2)
  double ratio_small = 0.0;  // sum(v)
  double ratio_mid = 0.0;    // (1 - exp(-2 sum(v))) / 2
  double i_sat = 0.0;        // beta_s^2 / (8 ln 2)
  double ratio_sat = 0.5;
};

AsymptoticEstimates asymptotic_estimates(const std::vector<double>& v_list, double beta_s);

}  // namespace centralspin
