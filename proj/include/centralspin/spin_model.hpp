#pragma once

#include <cstddef>
#include <vector>

namespace centralspin {

// One nuclear spin of the bath. Both fields are angular frequencies in a
// common unit (time is measured in the reciprocal unit). a_x may carry
// either sign; only its square enters the dephasing parameter.
struct NuclearSpinParam {
  double a_x = 0.0;    // hyperfine coupling constant
  double omega = 0.0;  // nuclear Larmor frequency
};

// Ordered collection of nuclear spins coupled to the central electron spin.
struct SpinBath {
  std::vector<NuclearSpinParam> spins;

  std::size_t size() const { return spins.size(); }

  // n identical spins, all with coupling a_x and Larmor frequency omega.
  static SpinBath equal_coupling(std::size_t n, double a_x, double omega);
};

// Pulse sequence applied to the electron spin. For Echo the time argument t
// everywhere in this library is the inter-pulse delay; the echo amplitude
// refers to the observation time 2t.
enum class SequenceKind { Fid, Echo };

struct ExperimentConfig {
  // Electron polarization (hbar*omega_e/kT). The electron Larmor frequency
  // enters the model only through this number. Quadratic-order formulas
  // degrade above ~0.1.
  double beta_s = 0.01;
};

// Per-spin derived quantities that feed every closed-form correlation
// expression. theta satisfies cos(theta) = 1 - v with theta in [0, pi];
// sign combinations are generated downstream where needed.
struct BranchParams {
  double omega_eff = 0.0;  // precession frequency about the tilted axis
  double n_x = 0.0;        // transverse direction cosine
  double n_z = 0.0;        // longitudinal direction cosine
  double v = 0.0;          // dephasing strength, 0 <= v <= 2
  double theta = 0.0;      // branch phase, radians
};

// Pure function of (spin, t, seq). The degenerate axis omega_eff = 0
// (a_x = omega = 0) returns all-zero branch parameters: a decoupled,
// field-free spin contributes no dephasing.
BranchParams derive_branch(const NuclearSpinParam& spin, double t, SequenceKind seq);

// v_j for every spin of the bath at time t.
std::vector<double> branch_v_list(const SpinBath& bath, double t, SequenceKind seq);

}  // namespace centralspin
