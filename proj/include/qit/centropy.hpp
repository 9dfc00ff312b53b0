#pragma once

// Classical information measures over discrete distributions. All logarithms
// are base 2 and zero-probability cells contribute nothing (0·log 0 = 0).

#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class ProbDist {
 public:
  /// Throws DomainError unless entries are non-negative and sum to 1 within tol::norm.
  explicit ProbDist(std::vector<double> probs, std::vector<std::string> labels = {});
  static ProbDist uniform(std::size_t size);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

/// Joint distribution over several discrete variables, stored row-major with
/// axis 0 varying slowest.
class JointDist {
 public:
  JointDist(std::vector<std::size_t> cardinalities, std::vector<double> table);

  std::size_t axes() const { return cards_.size(); }
  const std::vector<std::size_t>& cardinalities() const { return cards_; }
  const std::vector<double>& table() const { return table_; }
  double at(std::span<const std::size_t> index) const;

  /// Marginal over the listed axes (ascending), returned as a JointDist.
  JointDist marginal(std::vector<std::size_t> keep) const;
  /// Flattened marginal distribution of the listed axes.
  ProbDist marginal_dist(std::vector<std::size_t> keep) const;

 private:
  std::vector<std::size_t> cards_;
  std::vector<double> table_;
};

/// Row-stochastic matrix p(column | row).
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::vector<std::vector<double>> rows);

  std::size_t inputs() const { return rows_.size(); }
  std::size_t outputs() const { return rows_.front().size(); }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x][y]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<double>> rows_;
};

struct MarkovChainSpec {
  ProbDist dist_x;
  StochasticMatrix transition_xy;
  StochasticMatrix transition_yz;

  MarkovChainSpec(ProbDist x, StochasticMatrix xy, StochasticMatrix yz);
};

/// −Σ p log₂ p over raw weights; no normalization check.
double entropy_of_weights(std::span<const double> weights);

double shannon_entropy(const ProbDist& p);
double binary_entropy(double p);
/// D(p‖q); +infinity when supp(p) ⊄ supp(q).
double relative_entropy(const ProbDist& p, const ProbDist& q);

double joint_entropy(const JointDist& j);
/// Entropy of the marginal on `axes`.
double marginal_entropy(const JointDist& j, std::vector<std::size_t> axes);
/// H(target | given) = H(target ∪ given) − H(given).
double conditional_entropy(const JointDist& j, std::vector<std::size_t> target, std::vector<std::size_t> given);
/// Two-axis form: entropy of the other axis conditioned on `given_axis`.
double conditional_entropy(const JointDist& j, std::size_t given_axis);
/// H(a : b) = H(a) + H(b) − H(a, b).
double mutual_information(const JointDist& j, std::vector<std::size_t> a, std::vector<std::size_t> b);
double mutual_information(const JointDist& j);

/// H_bin(p_e) + p_e·log₂(|X| − 1).
double fano_bound(double error_probability, std::size_t alphabet_size);

/// p(x, y, z) = p(x)·p(y|x)·p(z|y).
JointDist markov_joint(const MarkovChainSpec& m);

/// Cells drawn from Exp(1) and normalized; full support.
JointDist random_joint(std::vector<std::size_t> cardinalities, std::mt19937_64& rng);
ProbDist random_dist(std::size_t size, std::mt19937_64& rng);
StochasticMatrix random_stochastic(std::size_t inputs, std::size_t outputs, std::mt19937_64& rng);

}  // namespace qit
