#include "centralspin/oracle.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace centralspin::oracle {

namespace {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using std::complex;

constexpr double kHermTol = 1e-12;
constexpr double kPi = std::numbers::pi;

const Matrix2cd& pauli_half(char axis) {
  static const Matrix2cd sx = (Matrix2cd() << 0.0, 0.5, 0.5, 0.0).finished();
  static const Matrix2cd sy =
      (Matrix2cd() << 0.0, complex<double>(0, -0.5), complex<double>(0, 0.5), 0.0).finished();
  static const Matrix2cd sz = (Matrix2cd() << 0.5, 0.0, 0.0, -0.5).finished();
  switch (axis) {
    case 'x': return sx;
    case 'y': return sy;
    case 'z': return sz;
    default: throw std::invalid_argument("spin_operator: axis must be x, y or z");
  }
}

void check_cap(const SpinBath& bath, std::size_t cap) {
  if (bath.size() > cap) {
    throw std::invalid_argument("oracle: bath size " + std::to_string(bath.size()) +
                                " exceeds cap " + std::to_string(cap));
  }
}

double max_abs(const MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("oracle: eigendecomposition failed");
  }
  return solver.eigenvalues();
}

double entropy_bits(const MatrixXcd& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double lambda = ev[i];
    if (lambda < -1e-12) {
      throw std::domain_error("von_neumann_entropy: eigenvalue below -1e-12");
    }
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

Matrix2cd projector_plus(const MeasurementAxis& axis) {
  const double s = std::sqrt(std::max(0.0, 1.0 - axis.a_z * axis.a_z));
  const double ax = std::cos(axis.phi) * s;
  const double ay = std::sin(axis.phi) * s;
  return 0.5 * Matrix2cd::Identity() + ax * pauli_half('x') + ay * pauli_half('y') +
         axis.a_z * pauli_half('z');
}

// (P (x) 1) rho (P (x) 1) for a 2x2 electron operator P, done blockwise.
MatrixXcd conjugate_electron(const MatrixXcd& rho, const Matrix2cd& p) {
  const Eigen::Index n = rho.rows() / 2;
  MatrixXcd out(rho.rows(), rho.cols());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      MatrixXcd blk = MatrixXcd::Zero(n, n);
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          const complex<double> w = p(i, k) * p(l, j);
          if (w != 0.0) blk.noalias() += w * rho.block(k * n, l * n, n, n);
        }
      }
      out.block(i * n, j * n, n, n) = blk;
    }
  }
  return out;
}

MatrixXcd apply_projection(const MatrixXcd& rho, const MeasurementAxis& axis) {
  const Matrix2cd pp = projector_plus(axis);
  const Matrix2cd pm = Matrix2cd::Identity() - pp;
  return conjugate_electron(rho, pp) + conjugate_electron(rho, pm);
}

// Everything the measurement scan needs besides the angle.
struct ScanContext {
  const MatrixXcd* rho;
  double s_nuclear;  // entropy of Tr_S rho; electron projections leave it fixed
};

double projected_mi_value(const ScanContext& ctx, double phi, double a_z) {
  const MatrixXcd projected = apply_projection(*ctx.rho, MeasurementAxis{phi, a_z});
  return entropy_bits(partial_trace_nuclear(projected)) + ctx.s_nuclear -
         entropy_bits(projected);
}

double wrap_2pi(double x) {
  x = std::fmod(x, 2.0 * kPi);
  if (x < 0.0) x += 2.0 * kPi;
  return x;
}

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  const double r = std::fmod(d, 2.0 * kPi);
  return std::min(r, 2.0 * kPi - r);
}

}  // namespace

DenseOperator::DenseOperator(MatrixXcd entries, OperatorRole role)
    : mat_(std::move(entries)), role_(role) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw std::invalid_argument("DenseOperator: matrix must be square and non-empty");
  }
  switch (role_) {
    case OperatorRole::Hamiltonian:
    case OperatorRole::Observable:
      if (max_abs(mat_ - mat_.adjoint()) > kHermTol) {
        throw std::invalid_argument("DenseOperator: Hermitian role violated");
      }
      break;
    case OperatorRole::Unitary:
      if (max_abs(mat_.adjoint() * mat_ - MatrixXcd::Identity(mat_.rows(), mat_.cols())) >
          kHermTol) {
        throw std::invalid_argument("DenseOperator: unitary role violated");
      }
      break;
    case OperatorRole::Density: {
      if (max_abs(mat_ - mat_.adjoint()) > kHermTol) {
        throw std::invalid_argument("DenseOperator: density matrix not Hermitian");
      }
      if (std::abs(mat_.trace() - complex<double>(1.0)) > kHermTol) {
        throw std::invalid_argument("DenseOperator: density trace must be 1");
      }
      if (hermitian_eigenvalues(mat_).minCoeff() < -1e-12) {
        throw std::invalid_argument("DenseOperator: density matrix not positive");
      }
      break;
    }
  }
}

DenseOperator spin_operator(std::size_t n_total, std::size_t site, char axis) {
  if (site >= n_total) {
    throw std::out_of_range("spin_operator: site index out of range");
  }
  const Matrix2cd& s = pauli_half(axis);
  MatrixXcd op = MatrixXcd::Identity(1, 1);
  for (std::size_t k = 0; k < n_total; ++k) {
    if (k == site) {
      op = Eigen::kroneckerProduct(op, s).eval();
    } else {
      op = Eigen::kroneckerProduct(op, Matrix2cd::Identity()).eval();
    }
  }
  return DenseOperator(std::move(op), OperatorRole::Observable);
}

DenseOperator nuclear_hamiltonian(const SpinBath& bath, int s_sign, std::size_t cap) {
  check_cap(bath, cap);
  if (s_sign != 1 && s_sign != -1) {
    throw std::invalid_argument("nuclear_hamiltonian: s_sign must be +-1");
  }
  const std::size_t n = bath.size();
  const Eigen::Index dim = Eigen::Index(1) << n;
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    h -= bath.spins[j].omega * spin_operator(n, j, 'z').mat();
    h += (0.5 * s_sign * bath.spins[j].a_x) * spin_operator(n, j, 'x').mat();
  }
  return DenseOperator(std::move(h), OperatorRole::Hamiltonian);
}

DenseOperator expm_hermitian(const DenseOperator& h, double t, int sign) {
  if (max_abs(h.mat() - h.mat().adjoint()) > kHermTol) {
    throw std::invalid_argument("expm_hermitian: input not Hermitian");
  }
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("expm_hermitian: sign must be +-1");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h.mat());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    phases[i] = std::exp(complex<double>(0.0, -sign * t * ev[i]));
  }
  MatrixXcd u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
  return DenseOperator(std::move(u), OperatorRole::Unitary);
}

DenseOperator evolution_unitary(const SpinBath& bath, double t, SequenceKind seq,
                                std::size_t cap) {
  check_cap(bath, cap);
  if (!(t >= 0.0)) throw std::invalid_argument("evolution_unitary: t must be >= 0");
  const DenseOperator h_plus = nuclear_hamiltonian(bath, +1, cap);
  const DenseOperator h_minus = nuclear_hamiltonian(bath, -1, cap);
  const MatrixXcd e_p_fwd = expm_hermitian(h_plus, t, +1).mat();    // exp(-it H+)
  const MatrixXcd e_m_bwd = expm_hermitian(h_minus, t, -1).mat();   // exp(+it H-)
  MatrixXcd u;
  if (seq == SequenceKind::Fid) {
    u = e_p_fwd * e_m_bwd;
  } else {
    const MatrixXcd e_m_fwd = expm_hermitian(h_minus, t, +1).mat();  // exp(-it H-)
    const MatrixXcd e_p_bwd = expm_hermitian(h_plus, t, -1).mat();   // exp(+it H+)
    u = e_p_fwd * e_m_fwd * e_p_bwd * e_m_bwd;
  }
  return DenseOperator(std::move(u), OperatorRole::Unitary);
}

DenseOperator density_matrix(const SpinBath& bath, double t, SequenceKind seq, double beta_s,
                             std::size_t cap) {
  if (!(beta_s >= 0.0 && beta_s < 2.0)) {
    throw std::invalid_argument("density_matrix: need 0 <= beta_s < 2 for positivity");
  }
  const MatrixXcd u = evolution_unitary(bath, t, seq, cap).mat();
  const Eigen::Index dim = 2 * u.rows();
  static const Matrix2cd s_plus = (Matrix2cd() << 0.0, 1.0, 0.0, 0.0).finished();
  static const Matrix2cd s_minus = (Matrix2cd() << 0.0, 0.0, 1.0, 0.0).finished();
  MatrixXcd pert = Eigen::kroneckerProduct(s_plus, u).eval();
  pert += Eigen::kroneckerProduct(s_minus, u.adjoint()).eval();
  MatrixXcd rho = (MatrixXcd::Identity(dim, dim) - (0.5 * beta_s) * pert) / double(dim);
  return DenseOperator(std::move(rho), OperatorRole::Density);
}

DenseOperator density_matrix_pulsed(const SpinBath& bath, double t, SequenceKind seq,
                                    double beta_s, std::size_t cap) {
  check_cap(bath, cap);
  if (!(beta_s >= 0.0 && beta_s < 2.0)) {
    throw std::invalid_argument("density_matrix_pulsed: need 0 <= beta_s < 2");
  }
  const std::size_t n = bath.size();
  const Eigen::Index dim = Eigen::Index(1) << (n + 1);

  // Joint rotating-frame Hamiltonian: -sum_j omega_j I_jz + S_z sum_j a_jx I_jx.
  MatrixXcd h = MatrixXcd::Zero(dim, dim);
  const MatrixXcd sz0 = spin_operator(n + 1, 0, 'z').mat();
  for (std::size_t j = 0; j < n; ++j) {
    const MatrixXcd ix = spin_operator(n + 1, j + 1, 'x').mat();
    h -= bath.spins[j].omega * spin_operator(n + 1, j + 1, 'z').mat();
    h += bath.spins[j].a_x * (sz0 * ix);
  }
  const DenseOperator h_op(std::move(h), OperatorRole::Hamiltonian);

  const MatrixXcd sx0 = spin_operator(n + 1, 0, 'x').mat();
  MatrixXcd rho = (MatrixXcd::Identity(dim, dim) - beta_s * sx0) / double(dim);

  const MatrixXcd e = expm_hermitian(h_op, t, +1).mat();  // exp(-itH)
  rho = e * rho * e.adjoint();
  if (seq == SequenceKind::Echo) {
    const DenseOperator sx_gen(sx0, OperatorRole::Hamiltonian);
    const MatrixXcd p180 = expm_hermitian(sx_gen, kPi, +1).mat();
    rho = p180 * rho * p180.adjoint();
    rho = e * rho * e.adjoint();
  }
  return DenseOperator(std::move(rho), OperatorRole::Density);
}

double von_neumann_entropy(const DenseOperator& rho) {
  if (rho.role() != OperatorRole::Density) {
    throw std::invalid_argument("von_neumann_entropy: density role required");
  }
  return entropy_bits(rho.mat());
}

Eigen::MatrixXcd partial_trace_electron(const MatrixXcd& joint) {
  const Eigen::Index n = joint.rows() / 2;
  return joint.topLeftCorner(n, n) + joint.bottomRightCorner(n, n);
}

Eigen::MatrixXcd partial_trace_nuclear(const MatrixXcd& joint) {
  const Eigen::Index n = joint.rows() / 2;
  Matrix2cd out;
  out(0, 0) = joint.topLeftCorner(n, n).trace();
  out(0, 1) = joint.topRightCorner(n, n).trace();
  out(1, 0) = joint.bottomLeftCorner(n, n).trace();
  out(1, 1) = joint.bottomRightCorner(n, n).trace();
  return out;
}

double mutual_information_exact(const DenseOperator& rho) {
  if (rho.role() != OperatorRole::Density) {
    throw std::invalid_argument("mutual_information_exact: density role required");
  }
  if (rho.dim() % 2 != 0) {
    throw std::invalid_argument("mutual_information_exact: joint dimension must be even");
  }
  return entropy_bits(partial_trace_nuclear(rho.mat())) +
         entropy_bits(partial_trace_electron(rho.mat())) - entropy_bits(rho.mat());
}

DenseOperator projected_state(const DenseOperator& rho, const MeasurementAxis& axis) {
  if (rho.role() != OperatorRole::Density) {
    throw std::invalid_argument("projected_state: density role required");
  }
  return DenseOperator(apply_projection(rho.mat(), axis), OperatorRole::Density);
}

double projected_mutual_information(const DenseOperator& rho, const MeasurementAxis& axis) {
  if (rho.role() != OperatorRole::Density) {
    throw std::invalid_argument("projected_mutual_information: density role required");
  }
  const ScanContext ctx{&rho.mat(), entropy_bits(partial_trace_electron(rho.mat()))};
  return projected_mi_value(ctx, axis.phi, axis.a_z);
}

DiscordResult discord_exact(const SpinBath& bath, double t, SequenceKind seq, double beta_s,
                            std::size_t cap, ExecutionPolicy policy) {
  const DenseOperator rho = density_matrix(bath, t, seq, beta_s, cap);
  const ScanContext ctx{&rho.mat(), entropy_bits(partial_trace_electron(rho.mat()))};
  const double s_electron = entropy_bits(partial_trace_nuclear(rho.mat()));
  const double i_bits = s_electron + ctx.s_nuclear - entropy_bits(rho.mat());

  // Deterministic grid scan: values are computed independently (possibly in
  // parallel) and reduced serially, so thread count never changes the result.
  constexpr int kGrid = 721;
  const double h = kPi / kGrid;
  std::vector<double> vals(kGrid);
  const bool parallel = policy == ExecutionPolicy::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < kGrid; ++i) {
    vals[i] = projected_mi_value(ctx, i * h, 0.0);
  }
  int best_i = 0;
  for (int i = 1; i < kGrid; ++i) {
    if (vals[i] > vals[best_i]) best_i = i;
  }

  // Golden-section refinement of the bracketing interval. The objective is
  // pi-periodic and smooth, so the bracket may spill past [0, pi).
  double best_x = best_i * h;
  double best_f = vals[best_i];
  const auto consider = [&](double x, double f) {
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  };
  double a = best_x - h;
  double b = best_x + h;
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = projected_mi_value(ctx, c, 0.0);
  double fd = projected_mi_value(ctx, d, 0.0);
  consider(c, fc);
  consider(d, fd);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = projected_mi_value(ctx, c, 0.0);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = projected_mi_value(ctx, d, 0.0);
      consider(d, fd);
    }
  }

  DiscordResult out;
  out.i_bits = i_bits;
  out.c_bits = best_f;
  out.d_bits = i_bits - best_f;
  out.phi_star = std::fmod(best_x, kPi);
  if (out.phi_star < 0.0) out.phi_star += kPi;
  return out;
}

double max_projected_mi_sphere(const DenseOperator& rho, std::size_t n_phi, std::size_t n_az) {
  if (rho.role() != OperatorRole::Density) {
    throw std::invalid_argument("max_projected_mi_sphere: density role required");
  }
  if (n_phi < 2 || n_az < 2) {
    throw std::invalid_argument("max_projected_mi_sphere: grid too small");
  }
  const ScanContext ctx{&rho.mat(), entropy_bits(partial_trace_electron(rho.mat()))};
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n_az; ++k) {
    const double a_z = -0.9 + 1.8 * double(k) / double(n_az - 1);
    for (std::size_t i = 0; i < n_phi; ++i) {
      const double phi = 2.0 * kPi * double(i) / double(n_phi);
      best = std::max(best, projected_mi_value(ctx, phi, a_z));
    }
  }
  return best;
}

PhaseSpectrum eigenphase_spectrum(const DenseOperator& u) {
  if (u.role() != OperatorRole::Unitary) {
    throw std::invalid_argument("eigenphase_spectrum: unitary role required");
  }
  Eigen::ComplexEigenSolver<MatrixXcd> solver(u.mat(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenphase_spectrum: eigendecomposition failed");
  }
  PhaseSpectrum spec;
  spec.phases.reserve(std::size_t(u.dim()));
  for (Eigen::Index i = 0; i < u.dim(); ++i) {
    spec.phases.push_back(std::arg(solver.eigenvalues()[i]));
  }
  return spec;
}

std::vector<double> branch_phase_multiset(const std::vector<double>& thetas) {
  if (thetas.size() > 26) {
    throw std::invalid_argument("branch_phase_multiset: too many spins");
  }
  const std::size_t count = std::size_t(1) << thetas.size();
  std::vector<double> sums;
  sums.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    double s = 0.0;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      s += (mask >> j) & 1u ? thetas[j] : -thetas[j];
    }
    sums.push_back(s);
  }
  return sums;
}

double phase_multiset_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.empty()) return 0.0;
  for (double& x : a) x = wrap_2pi(x);
  for (double& x : b) x = wrap_2pi(x);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t n = a.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, circular_distance(a[i], b[(i + shift) % n]));
      if (worst >= best) break;
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace centralspin::oracle
