#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "centralspin/execution.hpp"
#include "centralspin/spin_model.hpp"

// Exact dense-matrix reference implementation used to validate the closed
// forms independently. Everything here works on the full Hilbert space:
// joint states live on electron (x) nuclear with the electron as the first
// (most significant) tensor factor. All dynamics are in the electron
// rotating frame: the omega_e S_z term is dropped. The FID signal picks up
// only a global rotation from it and the echo phase cancels identically,
// so no reported quantity depends on omega_e.
namespace centralspin::oracle {

// Default cap on the nuclear spin count (nuclear space 256, joint 512).
inline constexpr std::size_t kDefaultCap = 8;

enum class OperatorRole { Hamiltonian, Unitary, Density, Observable };

// Complex square matrix with a role tag. Construction enforces the role's
// invariant: Hermitian roles to 1e-12 max entry deviation, unitarity
// U^dag U = 1 to 1e-12, density trace 1 and eigenvalues >= -1e-12.
class DenseOperator {
 public:
  DenseOperator(Eigen::MatrixXcd entries, OperatorRole role);

  const Eigen::MatrixXcd& mat() const { return mat_; }
  OperatorRole role() const { return role_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Eigen::MatrixXcd mat_;
  OperatorRole role_;
};

// Measurement direction on the electron Bloch sphere:
// a_x = cos(phi) s, a_y = sin(phi) s, a_z, with s = sqrt(1 - a_z^2).
struct MeasurementAxis {
  double phi = 0.0;
  double a_z = 0.0;
};

// Multiset of eigenvalue arguments of an evolution unitary, radians.
struct PhaseSpectrum {
  std::vector<double> phases;
};

struct DiscordResult {
  double d_bits = 0.0;
  double phi_star = 0.0;
  double i_bits = 0.0;
  double c_bits = 0.0;
};

// Spin-1/2 component operator at `site` of an n_total-spin register
// (identity on every other site). axis is 'x', 'y' or 'z'.
DenseOperator spin_operator(std::size_t n_total, std::size_t site, char axis);

// Nuclear-space Hamiltonian for a fixed electron projection:
// H_pm = -sum_j omega_j I_jz +- (1/2) sum_j a_jx I_jx.
DenseOperator nuclear_hamiltonian(const SpinBath& bath, int s_sign,
                                  std::size_t cap = kDefaultCap);

// exp(sign * (-i t H)) through the Hermitian eigendecomposition of H.
DenseOperator expm_hermitian(const DenseOperator& h, double t, int sign);

// The nuclear-space sequence operator U+: Re Tr(U+)/2^n is the signal.
DenseOperator evolution_unitary(const SpinBath& bath, double t, SequenceKind seq,
                                std::size_t cap = kDefaultCap);

// Joint density matrix (1/Z)[1 - (beta_s/2)(S+ (x) U+ + S- (x) U+^dag)],
// Z = 2^(n+1). Requires beta_s < 2 so the state stays positive.
DenseOperator density_matrix(const SpinBath& bath, double t, SequenceKind seq, double beta_s,
                             std::size_t cap = kDefaultCap);

// Independent construction path: evolves (1 - beta_s S_x (x) 1)/Z under the
// joint rotating-frame Hamiltonian, conjugating by the 180-degree electron
// pulse at time t for the echo. Must agree with density_matrix to 1e-12.
DenseOperator density_matrix_pulsed(const SpinBath& bath, double t, SequenceKind seq,
                                    double beta_s, std::size_t cap = kDefaultCap);

// -sum lambda log2 lambda; 0 log 0 := 0. Throws on eigenvalues < -1e-12.
double von_neumann_entropy(const DenseOperator& rho);

// Partial traces of a joint (2N x 2N) operator; electron is the first factor.
Eigen::MatrixXcd partial_trace_electron(const Eigen::MatrixXcd& joint);  // -> N x N
Eigen::MatrixXcd partial_trace_nuclear(const Eigen::MatrixXcd& joint);   // -> 2 x 2

// S(rho_S) + S(rho_I) - S(rho) in bits, splitting electron from nuclei.
double mutual_information_exact(const DenseOperator& rho);

// Projective measurement of the electron along `axis`:
// (Pi+ (x) 1) rho (Pi+ (x) 1) + (Pi- (x) 1) rho (Pi- (x) 1).
DenseOperator projected_state(const DenseOperator& rho, const MeasurementAxis& axis);

// Mutual information that survives measuring the electron along `axis`.
double projected_mutual_information(const DenseOperator& rho, const MeasurementAxis& axis);

// Quantum discord via the measurement maximization: scans phi over a
// uniform 721-point grid on [0, pi) at a_z = 0, refines the best bracket
// by golden section to width 1e-10, and returns I - max_phi I(Pi(rho)).
DiscordResult discord_exact(const SpinBath& bath, double t, SequenceKind seq, double beta_s,
                            std::size_t cap = kDefaultCap,
                            ExecutionPolicy policy = ExecutionPolicy::Parallel);

// Coarse full-sphere scan (a_z != 0 included) used as a symmetry check
// against the in-plane maximum. Returns the best projected MI found.
double max_projected_mi_sphere(const DenseOperator& rho, std::size_t n_phi = 72,
                               std::size_t n_az = 11);

// Eigenvalue arguments of a unitary, via complex eigendecomposition.
PhaseSpectrum eigenphase_spectrum(const DenseOperator& u);

// The analytic multiset {sum_j s_j theta_j : s in {-1,+1}^n}, 2^n entries.
std::vector<double> branch_phase_multiset(const std::vector<double>& thetas);

// Max circular distance after optimally matching two phase multisets
// (sorted comparison mod 2pi over all cyclic alignments).
double phase_multiset_distance(std::vector<double> a, std::vector<double> b);

}  // namespace centralspin::oracle
