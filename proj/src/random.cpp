#include "qit/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qit {

namespace {

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

// Columns of Q from a QR factorization with the diagonal phases of R removed,
// which makes the result Haar distributed.
ComplexMatrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace

PureState random_pure_state(std::size_t dim, Rng& rng) {
  ComplexVector v = ginibre(static_cast<Eigen::Index>(dim), 1, rng).col(0);
  return PureState::from_amplitudes(v / v.norm());
}

UnitaryMatrix random_unitary(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix::from_matrix(haar_isometry(d, d, rng));
}

DensityMatrix random_density(std::size_t dim, Rng& rng) { return random_density_of_rank(dim, dim, rng); }

DensityMatrix random_density_of_rank(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank == 0 || rank > dim) throw DimensionError("rank must lie in [1, dim]");
  const ComplexMatrix g = ginibre(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank), rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_matrix(0.5 * (rho + rho.adjoint()));
}

QuantumOperation random_channel(std::size_t dim, std::size_t kraus_count, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const auto k = static_cast<Eigen::Index>(kraus_count);
  // A (k·d)×d isometry split into k blocks satisfies Σ E_i†E_i = V†V = I.
  const ComplexMatrix v = haar_isometry(k * d, d, rng);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = 0; i < k; ++i) kraus.push_back(v.block(i * d, 0, d, d));
  return QuantumOperation::from_kraus(std::move(kraus));
}

ComplexMatrix random_projector(std::size_t dim, std::size_t rank, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const ComplexMatrix q = haar_isometry(d, static_cast<Eigen::Index>(rank), rng);
  return q * q.adjoint();
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const ComplexMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

std::vector<ComplexMatrix> random_povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> raw;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t y = 0; y < outcomes; ++y) {
    const ComplexMatrix g = ginibre(d, d, rng);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  // E_y = S^{-1/2} A_y S^{-1/2} with S = Σ A_y.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sum);
  const RealVector inv_sqrt = solver.eigenvalues().array().rsqrt();
  const ComplexMatrix s = solver.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
  for (auto& a : raw) {
    a = s * a * s;
    a = 0.5 * (a + a.adjoint());
  }
  return raw;
}

}  // namespace qit
