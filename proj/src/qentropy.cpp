#include "qit/qentropy.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qit/random.hpp"

namespace qit {

namespace {

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  const RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

const std::vector<std::size_t>& bipartite_dims(const DensityMatrix& rho) {
  if (rho.subsystem_dims().size() != 2) throw DimensionError("bipartite measure requires subsystem dims [dA, dB]");
  return rho.subsystem_dims();
}

// Joint state of reference and channel output for the canonical purification.
DensityMatrix joint_output(const DensityMatrix& rho, const QuantumOperation& op) {
  if (op.in_dim() != rho.dim()) throw DimensionError("operation and state dimensions differ");
  const PureState rq = purify(rho);
  return apply_operation(rq.projector({rho.dim(), rho.dim()}), op.extend_left(rho.dim()));
}

}  // namespace

Ensemble::Ensemble(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("ensemble is empty");
  std::vector<double> w;
  for (const auto& e : entries_) {
    if (e.state.dim() != entries_.front().state.dim()) throw DimensionError("ensemble states differ in dimension");
    w.push_back(e.probability);
  }
  ProbDist check(std::move(w));
}

ProbDist Ensemble::weights() const {
  std::vector<double> w;
  for (const auto& e : entries_) w.push_back(e.probability);
  return ProbDist(std::move(w));
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_spectrum(clamped_spectrum(rho.matrix())); }

double q_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative entropy needs equal dimensions");
  const auto er = eig_hermitian(rho.matrix());
  const auto es = eig_hermitian(sigma.matrix());
  const auto d = er.values.size();

  // tr(ρ log ρ) over ρ's support.
  double rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double l = er.values(i);
    if (l > tol::eig) rho_log_rho += l * std::log2(l);
  }
  // tr(ρ log σ) in σ's eigenbasis: Σ_j ⟨s_j|ρ|s_j⟩ log σ_j.
  double rho_log_sigma = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double weight = (es.vectors.col(j).adjoint() * rho.matrix() * es.vectors.col(j))(0, 0).real();
    const double s = es.values(j);
    if (s > tol::eig) {
      rho_log_sigma += weight * std::log2(s);
    } else if (weight > tol::recon) {
      return kInfinity;
    }
  }
  return std::max(0.0, rho_log_rho - rho_log_sigma);
}

double subsystem_entropy(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  if (keep.size() == rho.subsystem_dims().size()) return von_neumann_entropy(rho);
  return von_neumann_entropy(reduce(rho, keep));
}

double q_joint_entropy(const DensityMatrix& rho) {
  bipartite_dims(rho);
  return von_neumann_entropy(rho);
}

double q_conditional_entropy(const DensityMatrix& rho) {
  bipartite_dims(rho);
  return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, Subsystem::B));
}

double q_mutual_information(const DensityMatrix& rho) {
  bipartite_dims(rho);
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
         von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
}

bool is_entangled_pure(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  return schmidt_decompose(psi, dim_a, dim_b).coefficients.size() > 1;
}

DensityMatrix ensemble_state(const Ensemble& e) {
  const auto d = static_cast<Eigen::Index>(e.dim());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& entry : e.entries()) sum += entry.probability * entry.state.matrix();
  return DensityMatrix(DensityMatrix::Trusted{}, 0.5 * (sum + sum.adjoint()),
                       e.entries().front().state.subsystem_dims());
}

double holevo_chi(const Ensemble& e) {
  double average = 0.0;
  for (const auto& entry : e.entries()) average += entry.probability * von_neumann_entropy(entry.state);
  return std::max(0.0, von_neumann_entropy(ensemble_state(e)) - average);
}

double entropy_exchange(const DensityMatrix& rho, const QuantumOperation& op) {
  return von_neumann_entropy(joint_output(rho, op));
}

double coherent_information(const DensityMatrix& rho, const QuantumOperation& op) {
  return von_neumann_entropy(apply_operation(rho, op)) - entropy_exchange(rho, op);
}

double quantum_fano_gap(const DensityMatrix& rho, const QuantumOperation& op) {
  const double f = std::clamp(entanglement_fidelity(rho, op), 0.0, 1.0);
  const double d = static_cast<double>(rho.dim());
  return binary_entropy(f) + (1.0 - f) * std::log2(d * d - 1.0) - entropy_exchange(rho, op);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("fidelity needs equal dimensions");
  const ComplexMatrix root = matrix_sqrt_psd(rho.matrix());
  const ComplexMatrix inner = root * sigma.matrix() * root;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double f = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

double entanglement_fidelity(const DensityMatrix& rho, const QuantumOperation& op) {
  const PureState rq = purify(rho);
  const DensityMatrix out = apply_operation(rq.projector({rho.dim(), rho.dim()}), op.extend_left(rho.dim()));
  const Complex overlap = rq.amplitudes().adjoint() * out.matrix() * rq.amplitudes();
  return std::clamp(overlap.real(), 0.0, 1.0);
}

double entanglement_fidelity_kraus(const DensityMatrix& rho, const QuantumOperation& op) {
  if (op.in_dim() != rho.dim() || op.out_dim() != rho.dim()) {
    throw DimensionError("entanglement fidelity needs a channel from the state space to itself");
  }
  double f = 0.0;
  for (const auto& e : op.kraus()) f += std::norm((rho.matrix() * e).trace());
  return std::clamp(f, 0.0, 1.0);
}

double ensemble_average_fidelity(const Ensemble& e, const QuantumOperation& op) {
  double total = 0.0;
  for (const auto& entry : e.entries()) {
    const double f = fidelity(entry.state, apply_operation(entry.state, op));
    total += entry.probability * f * f;
  }
  return total;
}

double pure_state_fidelity(const QuantumOperation& op, const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != op.in_dim() || op.in_dim() != op.out_dim()) {
    throw DimensionError("fidelity probe dimension does not match the channel");
  }
  double overlap = 0.0;
  for (const auto& e : op.kraus()) overlap += std::norm(psi.dot(e * psi));
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

double min_fidelity_estimate(const QuantumOperation& op, const MinFidelityOptions& options) {
  if (op.in_dim() != op.out_dim()) throw DimensionError("minimum fidelity needs a channel on one space");
  Rng rng(options.seed);
  const auto d = static_cast<Eigen::Index>(op.in_dim());
  double best = 1.0;
  for (std::size_t sample = 0; sample < options.samples; ++sample) {
    ComplexVector psi = random_pure_state(op.in_dim(), rng).amplitudes();
    double value = pure_state_fidelity(op, psi);
    double step = options.initial_step;
    for (std::size_t iter = 0; iter < options.refinement_steps; ++iter) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
          ComplexVector trial = psi;
          trial(k) += step * dir;
          trial.normalize();
          const double v = pure_state_fidelity(op, trial);
          if (v < value) {
            value = v;
            psi = std::move(trial);
          }
        }
      }
      step *= 0.5;
    }
    best = std::min(best, value);
  }
  return best;
}

}  // namespace qit
