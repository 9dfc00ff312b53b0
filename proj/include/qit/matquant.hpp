#pragma once

// Dense complex linear algebra and finite-dimensional quantum state machinery:
// density matrices, unitaries, measurements, Kraus channels, purification and
// the Schmidt decomposition.
//
// Subsystem ordering: the leftmost tensor factor is subsystem A and owns the
// slowest-varying index of the composite basis.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qit/errors.hpp"

namespace qit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double norm = 1e-9;
inline constexpr double herm = 1e-9;
inline constexpr double unit = 1e-8;
inline constexpr double eig = 1e-9;
inline constexpr double recon = 1e-7;
inline constexpr double prob = 1e-12;
// Pure-state inputs within this distance of unit norm are renormalized.
inline constexpr double renormalize = 1e-6;
}  // namespace tol

/// Largest absolute entry of `m`.
double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::herm);
bool is_unitary(const ComplexMatrix& m, double tolerance = tol::unit);

class DensityMatrix;

class PureState {
 public:
  /// Accepts vectors within `tol::renormalize` of unit norm and normalizes them.
  static PureState from_amplitudes(ComplexVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  DensityMatrix projector(std::vector<std::size_t> subsystem_dims = {}) const;

 private:
  explicit PureState(ComplexVector a) : amplitudes_(std::move(a)) {}
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity. Throws DomainError.
  static DensityMatrix from_matrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims = {});
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix basis_state(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& subsystem_dims() const { return subsystem_dims_; }
  DensityMatrix with_subsystems(std::vector<std::size_t> dims) const;

  // Construction path for results of operations that preserve validity by
  // construction. Skips the spectral check.
  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix m, std::vector<std::size_t> subsystem_dims = {});

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> subsystem_dims_;
};

class UnitaryMatrix {
 public:
  static UnitaryMatrix from_matrix(ComplexMatrix m);
  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  explicit UnitaryMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

/// Measurement operators {M_m} satisfying the completeness relation.
class MeasurementSet {
 public:
  static MeasurementSet from_operators(std::vector<ComplexMatrix> ops,
                                       std::vector<std::string> labels = {});
  /// Rank-one projectors onto the columns of `basis`.
  static MeasurementSet projective(const ComplexMatrix& basis);

  std::size_t dim() const { return static_cast<std::size_t>(ops_.front().rows()); }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  MeasurementSet(std::vector<ComplexMatrix> ops, std::vector<std::string> labels)
      : ops_(std::move(ops)), labels_(std::move(labels)) {}
  std::vector<ComplexMatrix> ops_;
  std::vector<std::string> labels_;
};

/// Trace-preserving map ρ ↦ Σ E_i ρ E_i†.
class QuantumOperation {
 public:
  static QuantumOperation from_kraus(std::vector<ComplexMatrix> kraus);
  static QuantumOperation identity(std::size_t dim);
  static QuantumOperation unitary(const UnitaryMatrix& u);
  /// (1-f)ρ + f·I/2 on a qubit, as the Pauli Kraus set.
  static QuantumOperation depolarizing(double f);
  /// `second` after `first`.
  static QuantumOperation compose(const QuantumOperation& second, const QuantumOperation& first);
  /// I_{left} ⊗ E: the operation acting on the right factor of a composite system.
  QuantumOperation extend_left(std::size_t left_dim) const;
  /// E ⊗ I_{right}.
  QuantumOperation extend_right(std::size_t right_dim) const;

  std::size_t in_dim() const { return static_cast<std::size_t>(kraus_.front().cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(kraus_.front().rows()); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  explicit QuantumOperation(std::vector<ComplexMatrix> k) : kraus_(std::move(k)) {}
  std::vector<ComplexMatrix> kraus_;
};

class Hamiltonian {
 public:
  static Hamiltonian from_matrix(ComplexMatrix m);
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  explicit Hamiltonian(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

// Gates and common states.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
PureState plus_state();
PureState minus_state();

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// Subsystem dims are concatenated; a factor without dims contributes [dim].
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

enum class Subsystem { A, B };

/// Bipartite partial trace; `rho` must carry subsystem_dims = [dA, dB].
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);
/// Keeps the listed subsystems (ascending indices into subsystem_dims), tracing out the rest.
DensityMatrix reduce(const DensityMatrix& rho, std::span<const std::size_t> keep);

struct HermitianEigen {
  RealVector values;      // descending
  ComplexMatrix vectors;  // columns are eigenvectors
};

/// Throws DomainError for non-Hermitian input.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// Eigenvalues of a density matrix, descending, with dust in [-tol::eig, 0) clamped to
/// zero. Throws DomainError below -tol::eig.
RealVector clamped_spectrum(const ComplexMatrix& rho);

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u);

struct MeasurementOutcome {
  double probability;
  std::optional<DensityMatrix> post_state;  // empty when probability < tol::prob
};

std::vector<MeasurementOutcome> measure(const DensityMatrix& rho, const MeasurementSet& ms);
/// Σ_m M_m ρ M_m†: the post-measurement state when outcomes are not recorded.
DensityMatrix measure_nonselective(const DensityMatrix& rho, const MeasurementSet& ms);

DensityMatrix apply_operation(const DensityMatrix& rho, const QuantumOperation& op);

/// Canonical purification Σ_i √λ_i |i⟩_R |v_i⟩_Q on R ⊗ Q, with dim R = dim Q.
PureState purify(const DensityMatrix& rho);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, nonzero only
  ComplexMatrix basis_a;             // columns paired with coefficients
  ComplexMatrix basis_b;
};

SchmidtDecomposition schmidt_decompose(const PureState& psi, std::size_t dim_a, std::size_t dim_b);

DensityMatrix thermal_state(const Hamiltonian& h, double beta);

struct CyclicAveraging {
  std::vector<UnitaryMatrix> unitaries;
  ComplexMatrix average;  // Σ U_i A U_i†
};

/// Unitaries U_i = V_i·W, W diagonalizing A and V_i the cyclic shifts of the
/// diagonal, with Σ U_i A U_i† = tr(A)·I. Requires a normal matrix.
CyclicAveraging cyclic_averaging(const ComplexMatrix& a);

struct ProjectorMixture {
  UnitaryMatrix u1;  // Q - P
  UnitaryMatrix u2;  // Q + P = I
  double weight;     // ½
};

/// PρP + QρQ = ½U₁ρU₁† + ½U₂ρU₂† with Q = I − P.
ProjectorMixture projector_unitary_mixture(const ComplexMatrix& p);

}  // namespace qit
