#include "centralspin/correlations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace centralspin {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_v_range(const std::vector<double>& v_list) {
  for (double v : v_list) {
    if (!(v >= 0.0 && v <= 2.0)) {
      throw std::invalid_argument("v must lie in [0, 2]");
    }
  }
}

}  // namespace

double signal_from_v(const std::vector<double>& v_list) {
  double g = 1.0;
  for (double v : v_list) g *= (1.0 - v);
  return g;
}

double signal(const SpinBath& bath, double t, SequenceKind seq) {
  return signal_from_v(branch_v_list(bath, t, seq));
}

MutualInformationValue mutual_information(double g, double beta_s) {
  if (!(std::abs(g) <= 1.0)) {
    throw std::invalid_argument("mutual_information: |g| must be <= 1");
  }
  const double one_minus_g2 = 1.0 - g * g;
  MutualInformationValue mi;
  mi.reduced = 2.0 * one_minus_g2;
  mi.bits = beta_s * beta_s * one_minus_g2 / (8.0 * kLn2);
  return mi;
}

double k_factor(const std::vector<double>& v_list) {
  check_v_range(v_list);
  if (v_list.empty()) return 0.0;
  double cos2 = 1.0;   // prod cos^2(theta_j) = prod (1 - v_j)^2
  double cos2t = 1.0;  // prod cos(2 theta_j) = prod [2(1 - v_j)^2 - 1]
  for (double v : v_list) {
    const double c = (1.0 - v) * (1.0 - v);
    cos2 *= c;
    cos2t *= 2.0 * c - 1.0;
  }
  return cos2 - cos2t;
}

double optimal_angle(double k) {
  if (!std::isfinite(k)) {
    throw std::invalid_argument("optimal_angle: K must be finite");
  }
  return k > 0.0 ? 0.5 * std::numbers::pi : 0.0;
}

CorrelationPoint correlation_point_from_v(const std::vector<double>& v_list, double beta_s) {
  CorrelationPoint p;
  p.g = signal_from_v(v_list);
  p.k = k_factor(v_list);
  p.phi_opt = optimal_angle(p.k);

  const double a = 1.0 - p.g * p.g;
  // |K| <= 1 - g^2 analytically (equality for n = 1); rounding may
  // overshoot by an ulp, which would break 0 <= d_red and the ratio bound.
  const double b = std::min(std::abs(p.k), a);

  p.i_red = 2.0 * a;
  p.c_red = a + b;
  // Sterbenz: exact, so c_red + d_red == i_red bitwise and d_red >= 0.
  p.d_red = p.i_red - p.c_red;
  p.ratio = a < 1e-15 ? 0.0 : 0.5 * (1.0 - b / a);

  const double unit = beta_s * beta_s / (16.0 * kLn2);
  p.i_abs = p.i_red * unit;
  p.c_abs = p.c_red * unit;
  p.d_abs = p.d_red * unit;
  return p;
}

CorrelationPoint correlation_point(const SpinBath& bath, double t, SequenceKind seq,
                                   const ExperimentConfig& cfg) {
  return correlation_point_from_v(branch_v_list(bath, t, seq), cfg.beta_s);
}

AsymptoticEstimates asymptotic_estimates(const std::vector<double>& v_list, double beta_s) {
  double sum = 0.0;
  for (double v : v_list) {
    if (!(v >= 0.0)) throw std::invalid_argument("asymptotic_estimates: v must be >= 0");
    sum += v;
  }
  AsymptoticEstimates est;
  est.i_small = beta_s * beta_s * sum / (4.0 * kLn2);
  est.ratio_small = sum;
  est.ratio_mid = 0.5 * (1.0 - std::exp(-2.0 * sum));
  est.i_sat = beta_s * beta_s / (8.0 * kLn2);
  est.ratio_sat = 0.5;
  return est;
}

}  // namespace centralspin
