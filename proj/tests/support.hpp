#pragma once

// Shared oracles and fixtures for the test binaries. Oracles here are written
// from the defining formulas with explicit loops and do not call the library
// routine they check.

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qit/matquant.hpp"
#include "qit/random.hpp"

namespace qit::testing {

inline Rng seeded(std::uint64_t seed) { return Rng(seed); }

/// −Σ λ log₂ λ over eigenvalues of a Hermitian matrix, via Eigen directly.
inline double entropy_oracle(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues().size(); ++i) {
    const double l = s.eigenvalues()(i);
    if (l > 1e-15) h -= l * std::log2(l);
  }
  return h;
}

/// W_ij = tr(E_i ρ E_j†); its entropy equals the entropy exchange.
inline double w_matrix_entropy(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& kraus) {
  const auto k = static_cast<Eigen::Index>(kraus.size());
  ComplexMatrix w(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) w(i, j) = (kraus[i] * rho * kraus[j].adjoint()).trace();
  return entropy_oracle(w);
}

/// Partial trace written out over explicit indices; keep_a selects the factor kept.
inline ComplexMatrix partial_trace_oracle(const ComplexMatrix& m, Eigen::Index da, Eigen::Index db, bool keep_a) {
  if (keep_a) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline DensityMatrix diag_state(const std::vector<double>& p, std::vector<std::size_t> dims = {}) {
  const auto d = static_cast<Eigen::Index>(p.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
  return DensityMatrix::from_matrix(m, std::move(dims));
}

inline PureState bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState::from_amplitudes(v);
}

/// ½|0⟩⟨0| + ½|+⟩⟨+|.
inline DensityMatrix half_zero_half_plus() {
  const ComplexMatrix m = 0.5 * PureState::basis(2, 0).projector().matrix() + 0.5 * plus_state().projector().matrix();
  return DensityMatrix::from_matrix(m);
}

/// −Σ λ log₂ λ at λ = (1 ± √(1 + 2p² − 2p))/2, the closed form for p|0⟩⟨0| + (1−p)|+⟩⟨+|.
inline double mixed_fixture_entropy(double p) {
  const double root = std::sqrt(1.0 + 2.0 * p * p - 2.0 * p);
  const double l1 = (1.0 + root) / 2.0, l2 = (1.0 - root) / 2.0;
  return -l1 * std::log2(l1) - l2 * std::log2(l2);
}

inline double hbin(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace qit::testing
