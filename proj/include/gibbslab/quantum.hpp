#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gibbslab/logcomb.hpp"

namespace gibbslab::quantum {

template <typename Scalar>
using StateVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using Operator = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using StateVectorXcd = StateVector<double>;
using OperatorXcd = Operator<double>;

enum class Compartment { Left, Right };
enum class Statistics { Bose, Fermi, Distinguishable };

/// X one-particle modes, each localized in one compartment.
struct ModeBasis {
  std::vector<Compartment> partition_map;

  std::int64_t size() const { return static_cast<std::int64_t>(partition_map.size()); }
  /// First half of the modes Left, the rest Right.
  static ModeBasis split(std::int64_t x);
};

inline constexpr std::int64_t kMaxEnumerationParticles = 6;
inline constexpr std::int64_t kMaxEnumerationModes = 8;

/// Exhaustive count of N-particle states: labelled assignments
/// (Distinguishable), occupation vectors with n_i >= 0 (Bose) or n_i in {0,1}
/// (Fermi). Throws SizeLimitError beyond N <= 6, X <= 8.
std::int64_t enumerate_states(std::int64_t n, const ModeBasis& basis, Statistics statistics);

/// Before/after log-counts for a partitioned gas under two symmetrization
/// bookkeepings:
///  - flawed: X^N/N! per compartment before, (X_l+X_r)^(N_tot)/N_tot! after;
///  - correct: the single total-state factor 1/N_tot! in both.
struct SymmetrizationLedger {
  LogQuantity flawed_before;
  LogQuantity flawed_after;
  LogQuantity correct_before;
  LogQuantity correct_after;

  double flawed_delta() const { return flawed_after.ln_value() - flawed_before.ln_value(); }
  double correct_delta() const { return correct_after.ln_value() - correct_before.ln_value(); }
};
SymmetrizationLedger symmetrization_bookkeeping(std::int64_t n_left, std::int64_t n_right,
                                                std::int64_t x_left, std::int64_t x_right);

enum class Symmetry { Symmetric, Antisymmetric, None };

/// Amplitudes a(i, j) on |i>_1 |j>_2.
class TwoParticleState {
 public:
  TwoParticleState(OperatorXcd amplitudes, Symmetry symmetry);

  const OperatorXcd& amplitudes() const { return amplitudes_; }
  Symmetry symmetry() const { return symmetry_; }
  std::int64_t modes() const { return amplitudes_.rows(); }
  /// Throws DomainError if the normalization or symmetry invariant fails at `tol`.
  void validate(double tol = 1e-12) const;

 private:
  OperatorXcd amplitudes_;
  Symmetry symmetry_;
};

/// (|phi>_1 |psi>_2 - |psi>_1 |phi>_2) / sqrt(2). Inputs must be normalized and orthogonal.
TwoParticleState antisymmetrize(const StateVectorXcd& phi, const StateVectorXcd& psi);
/// |phi>_1 |psi>_2.
TwoParticleState product_state(const StateVectorXcd& phi, const StateVectorXcd& psi);
/// (U ⊗ U) applied to the state; preserves the symmetry flag.
TwoParticleState apply_one_particle_unitary(const TwoParticleState& state, const OperatorXcd& u);

class DensityMatrix {
 public:
  explicit DensityMatrix(OperatorXcd rho) : rho_(std::move(rho)) {}
  const OperatorXcd& matrix() const { return rho_; }
  Eigen::VectorXd eigenvalues() const;
  /// Hermitian, unit trace, eigenvalues >= -tol.
  void validate(double tol = 1e-12) const;

 private:
  OperatorXcd rho_;
};

enum class Label { First, Second };
/// Partial trace over the other label.
DensityMatrix reduced_density_matrix(const TwoParticleState& state, Label which);

/// max_k |<U^k phi | U^k psi>| for k = 1..steps. U must be unitary within 1e-12.
double evolve_and_check_orthogonality(const StateVectorXcd& phi, const StateVectorXcd& psi,
                                      const OperatorXcd& u, std::int64_t steps);

/// Basis vector e_mode of dimension x.
StateVectorXcd mode_state(std::int64_t x, std::int64_t mode);
/// Uniform superposition over the modes of one compartment.
StateVectorXcd compartment_state(const ModeBasis& basis, Compartment c);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal folded back into Q.
template <typename Rng>
OperatorXcd haar_unitary(std::int64_t x, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  OperatorXcd z(x, x);
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index i = 0; i < z.rows(); ++i) z(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<OperatorXcd> qr(z);
  OperatorXcd q = qr.householderQ();
  const OperatorXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < x; ++j) {
    const auto d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : std::complex<double>(1.0, 0.0);
  }
  return q;
}

/// Random normalized complex vector (Gaussian components).
template <typename Rng>
StateVectorXcd random_state(std::int64_t x, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVectorXcd v(x);
  for (Eigen::Index i = 0; i < x; ++i) v(i) = {gauss(rng), gauss(rng)};
  return v / v.norm();
}

}  // namespace gibbslab::quantum
