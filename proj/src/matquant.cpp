#include "qit/matquant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qit {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix");
  }
}

void check_subsystem_dims(const std::vector<std::size_t>& dims, std::size_t total) {
  if (dims.empty()) return;
  if (std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end() || product(dims) != total) {
    throw DimensionError("subsystem dims do not multiply to the state dimension");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Rotates `v` so that its largest-magnitude entry is real and positive.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  Eigen::Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  const double mag = std::abs(v(best));
  if (mag > 0.0) v *= std::conj(v(best)) / mag;
}

}  // namespace

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tolerance;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const auto id = ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(m * m.adjoint() - id) < tolerance;
}

// ---------------------------------------------------------------------------
// PureState

PureState PureState::from_amplitudes(ComplexVector amplitudes) {
  if (amplitudes.size() == 0) throw DimensionError("pure state must have positive dimension");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > tol::renormalize) {
    throw DomainError("pure state amplitudes are not normalized (norm " + std::to_string(norm) + ")");
  }
  amplitudes /= norm;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix PureState::projector(std::vector<std::size_t> subsystem_dims) const {
  check_subsystem_dims(subsystem_dims, dim());
  return DensityMatrix(DensityMatrix::Trusted{}, amplitudes_ * amplitudes_.adjoint(),
                       std::move(subsystem_dims));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Trusted, ComplexMatrix m, std::vector<std::size_t> subsystem_dims)
    : matrix_(std::move(m)), subsystem_dims_(std::move(subsystem_dims)) {}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims) {
  require_square(m, "density matrix");
  check_subsystem_dims(subsystem_dims, static_cast<std::size_t>(m.rows()));
  if (!is_hermitian(m)) throw DomainError("density matrix is not Hermitian");
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol::norm) {
    throw DomainError("density matrix trace is " + std::to_string(trace) + ", expected 1");
  }
  ComplexMatrix h = hermitian_part(m);
  clamped_spectrum(h);  // throws on negative eigenvalues
  return DensityMatrix(Trusted{}, std::move(h), std::move(subsystem_dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw DimensionError("dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityMatrix(Trusted{}, ComplexMatrix::Identity(d, d) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t index) {
  return PureState::basis(dim, index).projector();
}

DensityMatrix DensityMatrix::with_subsystems(std::vector<std::size_t> dims) const {
  check_subsystem_dims(dims, dim());
  return DensityMatrix(Trusted{}, matrix_, std::move(dims));
}

// ---------------------------------------------------------------------------
// UnitaryMatrix, MeasurementSet, QuantumOperation, Hamiltonian

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix m) {
  require_square(m, "unitary");
  if (!is_unitary(m)) throw DomainError("matrix is not unitary");
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(d, d));
}

MeasurementSet MeasurementSet::from_operators(std::vector<ComplexMatrix> ops,
                                              std::vector<std::string> labels) {
  if (ops.empty()) throw DimensionError("measurement set is empty");
  require_square(ops.front(), "measurement operator");
  const auto d = ops.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& m : ops) {
    if (m.rows() != d || m.cols() != d) throw DimensionError("measurement operators differ in shape");
    sum += m.adjoint() * m;
  }
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) >= tol::unit) {
    throw DomainError("measurement operators violate the completeness relation");
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < ops.size(); ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != ops.size()) {
    throw DimensionError("label count does not match operator count");
  }
  return MeasurementSet(std::move(ops), std::move(labels));
}

MeasurementSet MeasurementSet::projective(const ComplexMatrix& basis) {
  require_square(basis, "measurement basis");
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) ops.push_back(basis.col(i) * basis.col(i).adjoint());
  return from_operators(std::move(ops));
}

QuantumOperation QuantumOperation::from_kraus(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) throw DimensionError("quantum operation needs at least one Kraus operator");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("empty Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& e : kraus) {
    if (e.rows() != rows || e.cols() != cols) throw DimensionError("Kraus operators differ in shape");
    sum += e.adjoint() * e;
  }
  if (max_abs(sum - ComplexMatrix::Identity(cols, cols)) >= tol::unit) {
    throw DomainError("quantum operation is not trace preserving");
  }
  return QuantumOperation(std::move(kraus));
}

QuantumOperation QuantumOperation::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return QuantumOperation({ComplexMatrix::Identity(d, d)});
}

QuantumOperation QuantumOperation::unitary(const UnitaryMatrix& u) { return QuantumOperation({u.matrix()}); }

QuantumOperation QuantumOperation::depolarizing(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("depolarizing parameter must lie in [0,1]");
  return QuantumOperation({std::sqrt(1.0 - 0.75 * f) * ComplexMatrix::Identity(2, 2),
                           std::sqrt(f / 4.0) * pauli_x(), std::sqrt(f / 4.0) * pauli_y(),
                           std::sqrt(f / 4.0) * pauli_z()});
}

QuantumOperation QuantumOperation::compose(const QuantumOperation& second, const QuantumOperation& first) {
  if (second.in_dim() != first.out_dim()) throw DimensionError("cannot compose operations: dims differ");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(second.kraus_.size() * first.kraus_.size());
  for (const auto& f : second.kraus_)
    for (const auto& e : first.kraus_) kraus.push_back(f * e);
  return QuantumOperation(std::move(kraus));
}

QuantumOperation QuantumOperation::extend_left(std::size_t left_dim) const {
  const auto d = static_cast<Eigen::Index>(left_dim);
  std::vector<ComplexMatrix> kraus;
  for (const auto& e : kraus_) kraus.push_back(tensor_product(ComplexMatrix::Identity(d, d), e));
  return QuantumOperation(std::move(kraus));
}

QuantumOperation QuantumOperation::extend_right(std::size_t right_dim) const {
  const auto d = static_cast<Eigen::Index>(right_dim);
  std::vector<ComplexMatrix> kraus;
  for (const auto& e : kraus_) kraus.push_back(tensor_product(e, ComplexMatrix::Identity(d, d)));
  return QuantumOperation(std::move(kraus));
}

Hamiltonian Hamiltonian::from_matrix(ComplexMatrix m) {
  require_square(m, "Hamiltonian");
  if (!is_hermitian(m)) throw DomainError("Hamiltonian is not Hermitian");
  return Hamiltonian(hermitian_part(m));
}

// ---------------------------------------------------------------------------
// Gates

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

PureState plus_state() {
  ComplexVector v(2);
  v << 1, 1;
  return PureState::from_amplitudes(v / std::sqrt(2.0));
}

PureState minus_state() {
  ComplexVector v(2);
  v << 1, -1;
  return PureState::from_amplitudes(v / std::sqrt(2.0));
}

// ---------------------------------------------------------------------------
// Operations

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims = a.subsystem_dims().empty() ? std::vector{a.dim()} : a.subsystem_dims();
  if (b.subsystem_dims().empty()) {
    dims.push_back(b.dim());
  } else {
    dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
  }
  return DensityMatrix(DensityMatrix::Trusted{}, tensor_product(a.matrix(), b.matrix()), std::move(dims));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  ComplexVector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  return PureState::from_amplitudes(std::move(v));
}

DensityMatrix reduce(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto& dims = rho.subsystem_dims();
  if (dims.empty()) throw DimensionError("partial trace requires subsystem dims");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size()) throw DimensionError("subsystem index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw DimensionError("kept subsystems must be strictly ascending");
    kept[keep[i]] = true;
  }
  std::vector<std::size_t> out_dims;
  for (auto k : keep) out_dims.push_back(dims[k]);
  const std::size_t out_dim = product(out_dims);
  const std::size_t total = rho.dim();

  // Split every composite index into its kept and traced parts.
  std::vector<std::size_t> kept_index(total), traced_index(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx, k = 0, t = 0, k_stride = 1, t_stride = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        k += digit * k_stride;
        k_stride *= dims[s];
      } else {
        t += digit * t_stride;
        t_stride *= dims[s];
      }
    }
    kept_index[idx] = k;
    traced_index[idx] = t;
  }

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (traced_index[i] == traced_index[j])
        out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  if (out_dims.size() < 2) out_dims.clear();
  return DensityMatrix(DensityMatrix::Trusted{}, hermitian_part(out), std::move(out_dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  if (rho.subsystem_dims().size() != 2) throw DimensionError("partial trace requires bipartite subsystem dims");
  const std::size_t index = keep == Subsystem::A ? 0 : 1;
  return reduce(rho, std::span<const std::size_t>(&index, 1));
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eigendecomposition");
  if (!is_hermitian(m)) throw DomainError("eigendecomposition requires a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition did not converge");
  const auto n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto& vals = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals(a) > vals(b); });
  HermitianEigen out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = vals(order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    fix_phase(out.vectors.col(i));
  }
  return out;
}

RealVector clamped_spectrum(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  RealVector vals = solver.eigenvalues().reverse();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol::eig) throw DomainError("density matrix has a negative eigenvalue");
    if (vals(i) < 0.0) vals(i) = 0.0;
  }
  return vals;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (u.dim() != rho.dim()) throw DimensionError("unitary and state dimensions differ");
  return DensityMatrix(DensityMatrix::Trusted{}, hermitian_part(u.matrix() * rho.matrix() * u.matrix().adjoint()),
                       rho.subsystem_dims());
}

std::vector<MeasurementOutcome> measure(const DensityMatrix& rho, const MeasurementSet& ms) {
  if (ms.dim() != rho.dim()) throw DimensionError("measurement and state dimensions differ");
  std::vector<MeasurementOutcome> out;
  out.reserve(ms.operators().size());
  for (const auto& m : ms.operators()) {
    ComplexMatrix post = m * rho.matrix() * m.adjoint();
    const double p = std::max(0.0, post.trace().real());
    if (p < tol::prob) {
      out.push_back({p, std::nullopt});
    } else {
      out.push_back({p, DensityMatrix(DensityMatrix::Trusted{}, hermitian_part(post / p), rho.subsystem_dims())});
    }
  }
  return out;
}

DensityMatrix measure_nonselective(const DensityMatrix& rho, const MeasurementSet& ms) {
  if (ms.dim() != rho.dim()) throw DimensionError("measurement and state dimensions differ");
  ComplexMatrix sum = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& m : ms.operators()) sum += m * rho.matrix() * m.adjoint();
  return DensityMatrix(DensityMatrix::Trusted{}, hermitian_part(sum), rho.subsystem_dims());
}

DensityMatrix apply_operation(const DensityMatrix& rho, const QuantumOperation& op) {
  if (op.in_dim() != rho.dim()) throw DimensionError("operation and state dimensions differ");
  const auto d = static_cast<Eigen::Index>(op.out_dim());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : op.kraus()) sum += e * rho.matrix() * e.adjoint();
  auto dims = op.in_dim() == op.out_dim() ? rho.subsystem_dims() : std::vector<std::size_t>{};
  return DensityMatrix(DensityMatrix::Trusted{}, hermitian_part(sum), std::move(dims));
}

PureState purify(const DensityMatrix& rho) {
  const auto eig = eig_hermitian(rho.matrix());
  const auto d = static_cast<Eigen::Index>(rho.dim());
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lambda = std::max(0.0, eig.values(i));
    if (lambda == 0.0) continue;
    psi.segment(i * d, d) = std::sqrt(lambda) * eig.vectors.col(i);
  }
  return PureState::from_amplitudes(std::move(psi));
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != psi.dim()) {
    throw DimensionError("Schmidt decomposition dims do not match the state dimension");
  }
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  ComplexMatrix amp(da, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < db; ++b) amp(a, b) = psi.amplitudes()(a * db + b);
  Eigen::JacobiSVD<ComplexMatrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-10) ++rank;
  SchmidtDecomposition out;
  out.basis_a = svd.matrixU().leftCols(rank);
  out.basis_b = svd.matrixV().leftCols(rank).conjugate();
  for (Eigen::Index i = 0; i < rank; ++i) out.coefficients.push_back(s(i));
  return out;
}

DensityMatrix thermal_state(const Hamiltonian& h, double beta) {
  if (!(beta >= 0.0)) throw DomainError("inverse temperature must be non-negative");
  const auto eig = eig_hermitian(h.matrix());
  const double ground = eig.values.minCoeff();
  RealVector weights = (-beta * (eig.values.array() - ground)).exp();
  weights /= weights.sum();
  ComplexMatrix rho = eig.vectors * weights.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix(DensityMatrix::Trusted{}, hermitian_part(rho));
}

CyclicAveraging cyclic_averaging(const ComplexMatrix& a) {
  require_square(a, "cyclic averaging");
  const double scale = std::max(1.0, max_abs(a) * max_abs(a));
  if (max_abs(a * a.adjoint() - a.adjoint() * a) > tol::herm * scale) {
    throw DomainError("cyclic averaging requires a normal matrix");
  }
  const auto d = a.rows();
  // For a normal matrix the complex Schur form is diagonal: A = Q T Q†.
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  const ComplexMatrix w = schur.matrixU().adjoint();

  CyclicAveraging out{{}, ComplexMatrix::Zero(d, d)};
  for (Eigen::Index shift = 0; shift < d; ++shift) {
    ComplexMatrix v = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) v(k, (k + shift) % d) = 1.0;
    ComplexMatrix u = v * w;
    out.average += u * a * u.adjoint();
    out.unitaries.push_back(UnitaryMatrix::from_matrix(std::move(u)));
  }
  return out;
}

ProjectorMixture projector_unitary_mixture(const ComplexMatrix& p) {
  require_square(p, "projector");
  if (!is_hermitian(p) || max_abs(p * p - p) > tol::recon) throw DomainError("matrix is not an orthogonal projector");
  const auto d = p.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix q = id - p;
  return {UnitaryMatrix::from_matrix(q - p), UnitaryMatrix::from_matrix(q + p), 0.5};
}

}  // namespace qit
