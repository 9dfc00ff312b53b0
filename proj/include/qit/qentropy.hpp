#pragma once

// Von Neumann entropy and the derived quantum information measures, plus the
// fidelity family. Logarithms are base 2.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qit/centropy.hpp"
#include "qit/matquant.hpp"

namespace qit {

/// {(p_x, ρ_x)} with all states of one dimension.
class Ensemble {
 public:
  struct Entry {
    double probability;
    DensityMatrix state;
  };

  explicit Ensemble(std::vector<Entry> entries);

  std::size_t dim() const { return entries_.front().state.dim(); }
  const std::vector<Entry>& entries() const { return entries_; }
  ProbDist weights() const;

 private:
  std::vector<Entry> entries_;
};

/// −Σ λ log₂ λ over a spectrum; eigenvalue dust below zero must already be clamped.
double entropy_of_spectrum(const RealVector& eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);
/// S(ρ‖σ); +infinity when supp(ρ) ⊄ supp(σ).
double q_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Entropy of the reduced state on the listed subsystems (ascending).
double subsystem_entropy(const DensityMatrix& rho, std::vector<std::size_t> keep);

// Bipartite measures; `rho` carries subsystem_dims [dA, dB].
double q_joint_entropy(const DensityMatrix& rho);
/// S(A|B) = S(A,B) − S(B). Negative values signal entanglement.
double q_conditional_entropy(const DensityMatrix& rho);
double q_mutual_information(const DensityMatrix& rho);

/// True iff the Schmidt rank exceeds one, equivalently S(A|B) < −tol::eig.
bool is_entangled_pure(const PureState& psi, std::size_t dim_a, std::size_t dim_b);

DensityMatrix ensemble_state(const Ensemble& e);
/// χ = S(Σ p_x ρ_x) − Σ p_x S(ρ_x).
double holevo_chi(const Ensemble& e);

/// S(R′, Q′): entropy of the joint reference/output state after the channel
/// acts on Q of a purification of ρ.
double entropy_exchange(const DensityMatrix& rho, const QuantumOperation& op);
/// I(ρ, E) = S(E(ρ)) − S(ρ, E).
double coherent_information(const DensityMatrix& rho, const QuantumOperation& op);
/// H(F) + (1 − F)·log₂(d² − 1) − S(ρ, E) with F the entanglement fidelity.
double quantum_fano_gap(const DensityMatrix& rho, const QuantumOperation& op);

/// tr √(√ρ σ √ρ).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// ⟨RQ| (I ⊗ E)(|RQ⟩⟨RQ|) |RQ⟩ for the canonical purification.
double entanglement_fidelity(const DensityMatrix& rho, const QuantumOperation& op);
/// Σ_i |tr(ρ E_i)|², the Kraus-sum form of the entanglement fidelity.
double entanglement_fidelity_kraus(const DensityMatrix& rho, const QuantumOperation& op);
/// Σ_j p_j F(ρ_j, E(ρ_j))².
double ensemble_average_fidelity(const Ensemble& e, const QuantumOperation& op);

struct MinFidelityOptions {
  std::size_t samples = 256;
  std::size_t refinement_steps = 32;
  double initial_step = 0.25;
  std::uint64_t seed = 0x6d696e66ULL;
};

/// Upper estimate of min_ψ F(|ψ⟩, E(|ψ⟩⟨ψ|)). Each sampled pure state is
/// refined by coordinate descent independently, so the estimate never increases
/// when more samples are drawn from the same seed.
double min_fidelity_estimate(const QuantumOperation& op, const MinFidelityOptions& options = {});
/// F(|ψ⟩, E(|ψ⟩⟨ψ|)) = √⟨ψ|E(|ψ⟩⟨ψ|)|ψ⟩.
double pure_state_fidelity(const QuantumOperation& op, const ComplexVector& psi);

}  // namespace qit
