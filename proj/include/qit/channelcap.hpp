#pragma once

// Classical channel capacity (Blahut–Arimoto), product-state HSW capacity
// estimation by direct search over pure-state ensembles, and the square-root
// measurement.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qit/centropy.hpp"
#include "qit/matquant.hpp"

namespace qit {

/// Transition matrix p(y|x); rows are inputs.
class ClassicalChannel {
 public:
  explicit ClassicalChannel(std::vector<std::vector<double>> rows) : transition_(std::move(rows)) {}
  static ClassicalChannel identity(std::size_t size);
  /// Binary symmetric channel with flip probability f.
  static ClassicalChannel bsc(double f);
  /// Binary erasure channel; outputs (0, 1, erased).
  static ClassicalChannel bec(double e);

  std::size_t inputs() const { return transition_.inputs(); }
  std::size_t outputs() const { return transition_.outputs(); }
  double operator()(std::size_t x, std::size_t y) const { return transition_(x, y); }
  const StochasticMatrix& transition() const { return transition_; }

 private:
  StochasticMatrix transition_;
};

/// H(X:Y) for the joint p(x)·p(y|x).
double channel_mutual_info(const ProbDist& px, const ClassicalChannel& ch);

struct CapacityOptions {
  double tol = 1e-9;
  std::size_t max_iterations = 10000;
};

struct CapacityResult {
  double capacity;         // I(X:Y) at `input`
  ProbDist input;
  double upper_bound;      // max_x D(p(·|x) ‖ q), always ≥ the true capacity
  std::size_t iterations;
};

class CapacityNotConverged : public std::runtime_error {
 public:
  CapacityNotConverged(const std::string& what, CapacityResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CapacityResult& best() const { return best_; }

 private:
  CapacityResult best_;
};

/// Iterates until upper_bound − capacity ≤ tol. Throws CapacityNotConverged
/// after max_iterations, carrying the best iterate.
CapacityResult capacity(const ClassicalChannel& ch, const CapacityOptions& options = {});

/// Pure-state input ensemble {(p_j, |ψ_j⟩)}.
class ChannelEnsembleCandidate {
 public:
  struct Entry {
    double probability;
    PureState state;
  };
  explicit ChannelEnsembleCandidate(std::vector<Entry> entries);
  std::size_t dim() const { return entries_.front().state.dim(); }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// S(𝓔(Σ p_j ρ_j)) − Σ p_j S(𝓔(ρ_j)).
double hsw_chi_of_ensemble(const QuantumOperation& op, const ChannelEnsembleCandidate& e);

struct HswOptions {
  std::size_t restarts = 16;
  double tol = 1e-10;              // simplex size at which a search stops
  std::size_t max_iterations = 4000;
  std::uint64_t seed = 0x68737731ULL;
};

struct HswResult {
  double chi;                                 // best over all restarts
  ChannelEnsembleCandidate ensemble;
  std::vector<double> restart_values;         // per restart, in seed order
};

/// Lower estimate of C^{(1)}(𝓔) over ensembles of d² pure states. Restart i
/// uses a seed derived from (seed, i), so the estimate is nondecreasing in the
/// restart count.
HswResult hsw_capacity_estimate(const QuantumOperation& op, const HswOptions& options = {});

struct SquareRootMeasurement {
  std::vector<ComplexMatrix> elements;  // E_M, one per signal
  ComplexMatrix support;                // projector onto supp(Σ P P_M P)
  ComplexMatrix completion;             // I − support
};

/// E_M = S^{-½} P P_M P S^{-½} with S = Σ P P_M' P, inverse square root taken
/// on the support of S (dim ≤ 16).
SquareRootMeasurement square_root_measurement(const ComplexMatrix& global_projector,
                                              const std::vector<ComplexMatrix>& signals);

}  // namespace qit
