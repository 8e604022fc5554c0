#include "gibbslab/quantum.hpp"

#include <cmath>
#include <string>

#include "gibbslab/errors.hpp"

namespace gibbslab::quantum {

ModeBasis ModeBasis::split(std::int64_t x) {
  if (x < 1) throw DomainError("ModeBasis: need at least one mode");
  ModeBasis b;
  b.partition_map.resize(static_cast<std::size_t>(x), Compartment::Right);
  for (std::int64_t i = 0; i < (x + 1) / 2; ++i)
    b.partition_map[static_cast<std::size_t>(i)] = Compartment::Left;
  return b;
}

std::int64_t enumerate_states(std::int64_t n, const ModeBasis& basis, Statistics statistics) {
  const std::int64_t x = basis.size();
  if (n < 0) throw DomainError("enumerate_states: N must be >= 0");
  if (x < 1) throw DomainError("enumerate_states: X must be >= 1");
  if (n > kMaxEnumerationParticles || x > kMaxEnumerationModes)
    throw SizeLimitError("enumerate_states: exhaustive enumeration limited to N <= 6, X <= 8");
  if (statistics == Statistics::Fermi && n > x)
    throw InfeasibleStateError("enumerate_states: Fermi statistics need N <= X");

  std::int64_t count = 0;
  if (statistics == Statistics::Distinguishable) {
    // Odometer over the mode of each labelled particle.
    std::vector<std::int64_t> assignment(static_cast<std::size_t>(n), 0);
    while (true) {
      ++count;
      std::size_t pos = 0;
      while (pos < assignment.size() && ++assignment[pos] == x) assignment[pos++] = 0;
      if (pos == assignment.size()) break;
    }
    return count;
  }

  // Odometer over occupation vectors with entries in [0, cap].
  const std::int64_t cap = statistics == Statistics::Fermi ? 1 : n;
  std::vector<std::int64_t> occupation(static_cast<std::size_t>(x), 0);
  while (true) {
    std::int64_t total = 0;
    for (auto o : occupation) total += o;
    if (total == n) ++count;
    std::size_t pos = 0;
    while (pos < occupation.size() && ++occupation[pos] > cap) occupation[pos++] = 0;
    if (pos == occupation.size()) break;
  }
  return count;
}

SymmetrizationLedger symmetrization_bookkeeping(std::int64_t n_left, std::int64_t n_right,
                                                std::int64_t x_left, std::int64_t x_right) {
  if (n_left < 0 || n_right < 0) throw DomainError("symmetrization_bookkeeping: negative count");
  if (x_left < 1 || x_right < 1)
    throw DomainError("symmetrization_bookkeeping: each compartment needs >= 1 mode");
  auto n_ln = [](std::int64_t n, std::int64_t x) {
    return n == 0 ? 0.0 : static_cast<double>(n) * std::log(static_cast<double>(x));
  };
  const std::int64_t n_total = n_left + n_right;
  const double labelled_before = n_ln(n_left, x_left) + n_ln(n_right, x_right);
  const double labelled_after = n_ln(n_total, x_left + x_right);
  const double total_symmetrization = ln_factorial(n_total);

  SymmetrizationLedger out;
  out.flawed_before = LogQuantity((n_ln(n_left, x_left) - ln_factorial(n_left)) +
                                  (n_ln(n_right, x_right) - ln_factorial(n_right)));
  out.flawed_after = LogQuantity(labelled_after - total_symmetrization);
  out.correct_before = LogQuantity(labelled_before - total_symmetrization);
  out.correct_after = LogQuantity(labelled_after - total_symmetrization);
  return out;
}

TwoParticleState::TwoParticleState(OperatorXcd amplitudes, Symmetry symmetry)
    : amplitudes_(std::move(amplitudes)), symmetry_(symmetry) {
  if (amplitudes_.rows() != amplitudes_.cols() || amplitudes_.rows() == 0)
    throw DomainError("TwoParticleState: amplitude matrix must be square and non-empty");
}

void TwoParticleState::validate(double tol) const {
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol)
    throw DomainError("TwoParticleState: not normalized");
  if (symmetry_ == Symmetry::Antisymmetric &&
      (amplitudes_ + amplitudes_.transpose()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("TwoParticleState: antisymmetry violated");
  if (symmetry_ == Symmetry::Symmetric &&
      (amplitudes_ - amplitudes_.transpose()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("TwoParticleState: symmetry violated");
}

namespace {

void require_normalized(const StateVectorXcd& v, const char* name) {
  if (v.size() == 0 || std::abs(v.norm() - 1.0) > 1e-12)
    throw DomainError(std::string(name) + " must be a normalized one-particle state");
}

}  // namespace

TwoParticleState antisymmetrize(const StateVectorXcd& phi, const StateVectorXcd& psi) {
  require_normalized(phi, "phi");
  require_normalized(psi, "psi");
  if (phi.size() != psi.size()) throw DomainError("antisymmetrize: dimension mismatch");
  if (std::abs(phi.dot(psi)) > 1e-12)
    throw DomainError("antisymmetrize: one-particle states must be orthogonal");
  OperatorXcd a = (phi * psi.transpose() - psi * phi.transpose()) / std::sqrt(2.0);
  return TwoParticleState(std::move(a), Symmetry::Antisymmetric);
}

TwoParticleState product_state(const StateVectorXcd& phi, const StateVectorXcd& psi) {
  require_normalized(phi, "phi");
  require_normalized(psi, "psi");
  if (phi.size() != psi.size()) throw DomainError("product_state: dimension mismatch");
  return TwoParticleState(phi * psi.transpose(), Symmetry::None);
}

TwoParticleState apply_one_particle_unitary(const TwoParticleState& state, const OperatorXcd& u) {
  if (u.rows() != state.modes() || u.cols() != state.modes())
    throw DomainError("apply_one_particle_unitary: dimension mismatch");
  return TwoParticleState(u * state.amplitudes() * u.transpose(), state.symmetry());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<OperatorXcd> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void DensityMatrix::validate(double tol) const {
  if (rho_.rows() != rho_.cols()) throw DomainError("DensityMatrix: not square");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > tol)
    throw DomainError("DensityMatrix: trace differs from 1");
  if (eigenvalues().minCoeff() < -tol) throw DomainError("DensityMatrix: negative eigenvalue");
}

DensityMatrix reduced_density_matrix(const TwoParticleState& state, Label which) {
  const auto& a = state.amplitudes();
  // rho_1(i, i') = sum_j a(i, j) conj(a(i', j));  rho_2(j, j') = sum_i a(i, j) conj(a(i, j')).
  if (which == Label::First) return DensityMatrix(a * a.adjoint());
  return DensityMatrix(a.transpose() * a.conjugate());
}

double evolve_and_check_orthogonality(const StateVectorXcd& phi, const StateVectorXcd& psi,
                                      const OperatorXcd& u, std::int64_t steps) {
  if (phi.size() != psi.size() || u.rows() != phi.size() || u.cols() != phi.size())
    throw DomainError("evolve_and_check_orthogonality: dimension mismatch");
  if (steps < 0) throw DomainError("evolve_and_check_orthogonality: steps must be >= 0");
  if (std::abs(phi.dot(psi)) > 1e-12)
    throw DomainError("evolve_and_check_orthogonality: initial states must be orthogonal");
  const OperatorXcd id = OperatorXcd::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-12)
    throw DomainError("evolve_and_check_orthogonality: operator is not unitary");

  StateVectorXcd a = phi;
  StateVectorXcd b = psi;
  double max_overlap = 0.0;
  for (std::int64_t k = 0; k < steps; ++k) {
    a = u * a;
    b = u * b;
    max_overlap = std::max(max_overlap, std::abs(a.dot(b)));
  }
  return max_overlap;
}

StateVectorXcd mode_state(std::int64_t x, std::int64_t mode) {
  if (mode < 0 || mode >= x) throw DomainError("mode_state: mode index out of range");
  StateVectorXcd v = StateVectorXcd::Zero(x);
  v(mode) = 1.0;
  return v;
}

StateVectorXcd compartment_state(const ModeBasis& basis, Compartment c) {
  StateVectorXcd v = StateVectorXcd::Zero(basis.size());
  for (std::int64_t i = 0; i < basis.size(); ++i)
    if (basis.partition_map[static_cast<std::size_t>(i)] == c) v(i) = 1.0;
  if (v.norm() == 0.0) throw DomainError("compartment_state: compartment has no modes");
  return v / v.norm();
}

}  // namespace gibbslab::quantum
