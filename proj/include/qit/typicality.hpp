#pragma once

// ε-typical sequences, the typical-set compression scheme, multinomial counts,
// and Schumacher compression on the typical subspace of ρ^{⊗n}.
//
// Sequences over an alphabet of size a are indexed lexicographically: the
// sequence (x_0, …, x_{n-1}) has index Σ x_i·a^{n-1-i}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qit/centropy.hpp"
#include "qit/matquant.hpp"

namespace qit {

struct SourceModel {
  ProbDist dist;
  std::size_t n;
  double epsilon;

  /// Throws DomainError unless n ≥ 1 and epsilon > 0.
  SourceModel(ProbDist d, std::size_t block_length, double eps);
  std::size_t alphabet() const { return dist.size(); }
};

struct QuantumSourceModel {
  DensityMatrix rho;
  std::size_t n;
  double epsilon;

  QuantumSourceModel(DensityMatrix r, std::size_t block_length, double eps);
};

using Sequence = std::vector<std::size_t>;

Sequence sequence_from_index(std::uint64_t index, std::size_t alphabet, std::size_t n);
std::uint64_t sequence_index(std::span<const std::size_t> seq, std::size_t alphabet);

/// −(1/n) log₂ p(seq); +infinity when a symbol has zero probability.
double sample_entropy(std::span<const std::size_t> seq, const ProbDist& dist);
/// |−(1/n) log₂ p(seq) − H(X)| ≤ ε.
bool is_eps_typical(std::span<const std::size_t> seq, const SourceModel& s);

struct TypicalSet {
  std::vector<std::uint64_t> indices;  // ascending
  double mass;                         // Σ p(x) over the set
  double lower_bound;                  // (1 − δ)·2^{n(H−ε)} with δ = 1 − mass
  double upper_bound;                  // 2^{n(H+ε)}
  bool within_bounds() const;
};

/// Exhaustive enumeration; requires a^n ≤ 2^24.
TypicalSet typical_set(const SourceModel& s);

struct MultinomialCount {
  std::vector<std::size_t> composition;  // n·p(x) rounded, summing to n
  double log2_exact;                     // log₂ of n!/Π k_x!
  double log2_approx;                    // n·H(X)
  std::optional<std::uint64_t> exact;    // when it fits
};

MultinomialCount multinomial_typical_count(const SourceModel& s);

/// Typical sequences get ⌊nR⌋-bit indices in lexicographic order; index
/// 2^{⌊nR⌋} − 1 is reserved for failure. When the typical set does not fit,
/// construction throws if R > H and otherwise keeps the lexicographically
/// first sequences.
class ShannonScheme {
 public:
  ShannonScheme(const SourceModel& s, double rate);

  std::size_t bits() const { return bits_; }
  std::uint64_t failure_index() const { return (std::uint64_t{1} << bits_) - 1; }
  std::uint64_t compress(std::span<const std::size_t> seq) const;
  std::optional<Sequence> decompress(std::uint64_t code) const;
  /// Exact probability that decompress(compress(x)) = x.
  double reliability() const { return reliability_; }
  const std::vector<std::uint64_t>& encoded() const { return encoded_; }

 private:
  std::size_t alphabet_, n_, bits_;
  std::vector<std::uint64_t> encoded_;  // codebook, ascending sequence indices
  double reliability_;
};

struct TypicalSubspace {
  ComplexMatrix projector;
  /// Indices of kept product eigenvectors in the lexicographic product basis.
  std::vector<std::uint64_t> kept;
  RealVector eigenvalues;      // of ρ, descending
  ComplexMatrix eigenvectors;  // of ρ
};

/// Requires dⁿ ≤ 256. With `rate`, only the first 2^{⌊nR⌋} typical vectors are kept.
TypicalSubspace typical_subspace(const QuantumSourceModel& q, std::optional<double> rate = std::nullopt);
ComplexMatrix typical_subspace_projector(const QuantumSourceModel& q);

/// 𝓒(σ) = PσP + Σ_i |0⟩⟨i|σ|i⟩⟨0| with i over the complement of the kept space.
DensityMatrix schumacher_compress(const QuantumSourceModel& q, const DensityMatrix& sigma,
                                  std::optional<double> rate = std::nullopt);
/// Entanglement fidelity of 𝓒 (decoder = identity) on ρ^{⊗n}.
double schumacher_fidelity(const QuantumSourceModel& q, std::optional<double> rate = std::nullopt);

}  // namespace qit
