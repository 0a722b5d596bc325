#include "centralspin/spin_model.hpp"

#include <cmath>
#include <stdexcept>

namespace centralspin {

SpinBath SpinBath::equal_coupling(std::size_t n, double a_x, double omega) {
  SpinBath bath;
  bath.spins.assign(n, NuclearSpinParam{a_x, omega});
  return bath;
}

BranchParams derive_branch(const NuclearSpinParam& spin, double t, SequenceKind seq) {
  if (!std::isfinite(spin.a_x) || !std::isfinite(spin.omega)) {
    throw std::invalid_argument("derive_branch: spin parameters must be finite");
  }
  if (!(t >= 0.0)) {
    throw std::invalid_argument("derive_branch: t must be >= 0");
  }

  const double omega_sq = spin.omega * spin.omega + 0.25 * spin.a_x * spin.a_x;
  if (omega_sq == 0.0) {
    return BranchParams{};
  }

  BranchParams b;
  b.omega_eff = std::sqrt(omega_sq);
  b.n_x = spin.a_x / (2.0 * b.omega_eff);
  b.n_z = spin.omega / b.omega_eff;

  const double s = std::sin(0.5 * t * b.omega_eff);
  const double s2 = s * s;
  double v;
  if (seq == SequenceKind::Fid) {
    v = 2.0 * b.n_x * b.n_x * s2;
  } else {
    v = 8.0 * b.n_x * b.n_x * b.n_z * b.n_z * s2 * s2;
  }
  // The closed forms bound v by 2; rounding may overshoot by an ulp.
  if (v < 0.0) v = 0.0;
  if (v > 2.0) v = 2.0;
  b.v = v;
  b.theta = 2.0 * std::asin(std::sqrt(0.5 * v));
  return b;
}

std::vector<double> branch_v_list(const SpinBath& bath, double t, SequenceKind seq) {
  std::vector<double> v;
  v.reserve(bath.size());
  for (const auto& spin : bath.spins) {
    v.push_back(derive_branch(spin, t, seq).v);
  }
  return v;
}

}  // namespace centralspin
