#pragma once

// Monte-Carlo BB84 with CSS-code reconciliation and coset privacy
// amplification. Qubits travel one at a time as 2×2 density matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qit/gf2codes.hpp"
#include "qit/matquant.hpp"

namespace qit {

/// SplitMix64 evaluated at (key, counter): the i-th draw depends only on the
/// key and i, so streams can be replayed from any position.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  bool bit() { return (next() >> 63) != 0; }
  /// Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream key for a named purpose, e.g. "alice-bits".
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose);
/// Master seed of trial `index` inside a batch.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

enum class Basis : std::uint8_t { computational = 0, hadamard = 1 };

/// |ψ_00⟩ = |0⟩, |ψ_10⟩ = |1⟩, |ψ_01⟩ = |+⟩, |ψ_11⟩ = |−⟩ (subscript a, b).
struct Bb84State {
  bool bit;
  Basis basis;
  PureState state() const;
  DensityMatrix density() const;
};

struct ChannelModel {
  enum class Kind { ideal, depolarizing, intercept_resend };
  Kind kind = Kind::ideal;
  double parameter = 0.0;  // f for depolarizing, intercepted fraction for intercept_resend

  static ChannelModel ideal() { return {}; }
  static ChannelModel depolarizing(double f);
  static ChannelModel intercept_resend(double fraction);
  /// The qubit map seen by Bob; intercept-resend becomes the corresponding
  /// mixture of measure-and-prepare channels.
  QuantumOperation operation() const;
  std::string name() const;
};

struct ProtocolConfig {
  std::size_t n;
  double delta;
  std::size_t threshold_t;
  CssCode css;
  std::uint64_t master_seed;

  /// Validates delta ≥ 0 and threshold_t < n.
  ProtocolConfig(std::size_t n, double delta, std::size_t threshold_t, CssCode css, std::uint64_t master_seed);
  /// ⌈(4 + δ)·n⌉.
  std::size_t qubit_count() const;
  /// ⌊0.11·n⌋.
  static std::size_t default_threshold(std::size_t n);
};

using Bits = std::vector<std::uint8_t>;

struct ProtocolTranscript {
  std::uint64_t master_seed = 0;
  std::size_t n = 0;
  Bits alice_bits, alice_bases, bob_bases, bob_bits;
  // Per transmitted qubit; empty unless the channel is intercept-resend.
  Bits eve_active, eve_bases, eve_bits;
  Bits sift_mask;
  std::size_t sifted_count = 0;
  std::vector<std::size_t> check_indices;  // positions into the transmitted qubits
  std::vector<std::size_t> key_indices;
  std::size_t disagreements = 0;
  double qber_estimate = 0.0;
  bool aborted = false;
  std::string abort_reason;
  std::size_t blocks = 0;
  Bits announced_offset;  // x ⊕ v_k, concatenated over blocks
  Bits alice_key, bob_key;
  std::size_t reconciliation_failures = 0;  // blocks Bob could not decode

  bool keys_match() const { return !aborted && alice_key == bob_key; }
};

/// Outcome 1 probability when measuring `rho` in `basis` (Born rule via measure()).
double outcome_one_probability(const DensityMatrix& rho, Basis basis);
/// Samples one measurement outcome from the stream.
bool measure_qubit(const DensityMatrix& rho, Basis basis, CounterRng& rng);

ProtocolTranscript run_bb84(const ProtocolConfig& cfg, const ChannelModel& ch);

struct ReconciliationResult {
  BitString key_a, key_b;
  bool success;
};

/// One CSS block: Bob decodes x_bob ⊕ (x_alice ⊕ v_k) with C₁ and both sides
/// take the coset label of their v_k.
ReconciliationResult reconcile_and_amplify(const CssCode& code, const BitString& x_alice, const BitString& x_bob,
                                           const BitString& v_k);

/// Coherent information I(ρ, 𝓔).
double privacy_lower_bound(const DensityMatrix& rho, const QuantumOperation& op);

struct EveInformation {
  double mutual_information;  // plug-in I(A : E, basis match) per sifted bit
  double holevo_bound;        // χ^E of Eve's induced ensemble, scaled by the intercepted fraction
  std::size_t samples;
};

EveInformation eve_information_estimate(const std::vector<ProtocolTranscript>& transcripts);

/// Trials use trial_seed(cfg.master_seed, i) and run concurrently; the result
/// is ordered by trial index.
std::vector<ProtocolTranscript> run_batch(const ProtocolConfig& cfg, const ChannelModel& ch, std::size_t trials);

struct BatchSummary {
  std::size_t trials;
  double mean_qber;  // over trials that reached the check step
  double abort_rate;
  double key_match_rate;
};

BatchSummary summarize(const std::vector<ProtocolTranscript>& transcripts);

}  // namespace qit
