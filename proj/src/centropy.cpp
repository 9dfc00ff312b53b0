#include "qit/centropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qit/matquant.hpp"

namespace qit {

namespace {

void check_weights(const std::vector<double>& w, const char* what) {
  if (w.empty()) throw DimensionError(std::string(what) + " is empty");
  double sum = 0.0;
  for (double p : w) {
    if (!(p >= 0.0)) throw DomainError(std::string(what) + " has a negative or NaN entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::norm) {
    throw DomainError(std::string(what) + " sums to " + std::to_string(sum) + ", expected 1");
  }
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> axes) {
  std::sort(axes.begin(), axes.end());
  axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
  return axes;
}

std::vector<std::size_t> merge(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return sorted_unique(std::move(a));
}

}  // namespace

ProbDist::ProbDist(std::vector<double> probs, std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  check_weights(probs_, "probability distribution");
  if (!labels_.empty() && labels_.size() != probs_.size()) {
    throw DimensionError("label count does not match distribution size");
  }
}

ProbDist ProbDist::uniform(std::size_t size) {
  if (size == 0) throw DimensionError("uniform distribution needs a positive size");
  return ProbDist(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

JointDist::JointDist(std::vector<std::size_t> cardinalities, std::vector<double> table)
    : cards_(std::move(cardinalities)), table_(std::move(table)) {
  if (cards_.empty()) throw DimensionError("joint distribution needs at least one axis");
  const std::size_t cells =
      std::accumulate(cards_.begin(), cards_.end(), std::size_t{1}, std::multiplies<>());
  if (cells == 0 || cells != table_.size()) throw DimensionError("joint table size does not match cardinalities");
  check_weights(table_, "joint distribution");
}

double JointDist::at(std::span<const std::size_t> index) const {
  if (index.size() != cards_.size()) throw DimensionError("index rank does not match axis count");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < cards_.size(); ++a) {
    if (index[a] >= cards_[a]) throw DimensionError("index out of range");
    flat = flat * cards_[a] + index[a];
  }
  return table_[flat];
}

JointDist JointDist::marginal(std::vector<std::size_t> keep) const {
  keep = sorted_unique(std::move(keep));
  if (keep.empty()) throw DimensionError("marginal needs at least one axis");
  if (keep.back() >= cards_.size()) throw DimensionError("axis out of range");
  std::vector<std::size_t> out_cards;
  for (auto a : keep) out_cards.push_back(cards_[a]);
  const std::size_t out_cells =
      std::accumulate(out_cards.begin(), out_cards.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> out(out_cells, 0.0);
  std::vector<std::size_t> digits(cards_.size(), 0);
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = cards_.size(); a-- > 0;) {
      digits[a] = rem % cards_[a];
      rem /= cards_[a];
    }
    std::size_t target = 0;
    for (auto a : keep) target = target * cards_[a] + digits[a];
    out[target] += table_[flat];
  }
  // Re-normalize rounding drift so the marginal passes validation.
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& p : out) p /= sum;
  return JointDist(std::move(out_cards), std::move(out));
}

ProbDist JointDist::marginal_dist(std::vector<std::size_t> keep) const {
  return ProbDist(marginal(std::move(keep)).table());
}

StochasticMatrix::StochasticMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  if (rows_.empty() || rows_.front().empty()) throw DimensionError("stochastic matrix is empty");
  for (const auto& r : rows_) {
    if (r.size() != rows_.front().size()) throw DimensionError("stochastic matrix rows differ in length");
    check_weights(r, "stochastic matrix row");
  }
}

MarkovChainSpec::MarkovChainSpec(ProbDist x, StochasticMatrix xy, StochasticMatrix yz)
    : dist_x(std::move(x)), transition_xy(std::move(xy)), transition_yz(std::move(yz)) {
  if (transition_xy.inputs() != dist_x.size() || transition_yz.inputs() != transition_xy.outputs()) {
    throw DimensionError("Markov chain transition shapes do not chain");
  }
}

double entropy_of_weights(std::span<const double> weights) {
  double h = 0.0;
  for (double p : weights)
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(0.0, h);
}

double shannon_entropy(const ProbDist& p) { return entropy_of_weights(p.probs()); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary entropy argument must lie in [0,1]");
  const double w[2] = {p, 1.0 - p};
  return entropy_of_weights(w);
}

double relative_entropy(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) throw DimensionError("distributions differ in cardinality");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInfinity;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(0.0, d);
}

double joint_entropy(const JointDist& j) { return entropy_of_weights(j.table()); }

double marginal_entropy(const JointDist& j, std::vector<std::size_t> axes) {
  axes = sorted_unique(std::move(axes));
  if (axes.empty()) return 0.0;
  if (axes.back() >= j.axes()) throw DimensionError("axis out of range");
  if (axes.size() == j.axes()) return joint_entropy(j);
  return entropy_of_weights(j.marginal(std::move(axes)).table());
}

double conditional_entropy(const JointDist& j, std::vector<std::size_t> target, std::vector<std::size_t> given) {
  return marginal_entropy(j, merge(std::move(target), given)) - marginal_entropy(j, given);
}

double conditional_entropy(const JointDist& j, std::size_t given_axis) {
  if (j.axes() != 2 || given_axis > 1) throw DimensionError("two-axis conditional entropy needs axis 0 or 1");
  return conditional_entropy(j, {1 - given_axis}, {given_axis});
}

double mutual_information(const JointDist& j, std::vector<std::size_t> a, std::vector<std::size_t> b) {
  const double ha = marginal_entropy(j, a);
  const double hb = marginal_entropy(j, b);
  return ha + hb - marginal_entropy(j, merge(std::move(a), b));
}

double mutual_information(const JointDist& j) {
  if (j.axes() != 2) throw DimensionError("mutual information needs a two-axis joint");
  return mutual_information(j, {0}, {1});
}

double fano_bound(double error_probability, std::size_t alphabet_size) {
  if (alphabet_size < 2) throw DomainError("Fano bound needs an alphabet of at least two symbols");
  return binary_entropy(error_probability) +
         error_probability * std::log2(static_cast<double>(alphabet_size - 1));
}

JointDist markov_joint(const MarkovChainSpec& m) {
  const std::size_t nx = m.dist_x.size();
  const std::size_t ny = m.transition_xy.outputs();
  const std::size_t nz = m.transition_yz.outputs();
  std::vector<double> table(nx * ny * nz);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z)
        table[(x * ny + y) * nz + z] = m.dist_x[x] * m.transition_xy(x, y) * m.transition_yz(y, z);
  return JointDist({nx, ny, nz}, std::move(table));
}

namespace {

std::vector<double> exponential_weights(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) sum += (x = exp(rng));
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace

JointDist random_joint(std::vector<std::size_t> cardinalities, std::mt19937_64& rng) {
  const std::size_t cells =
      std::accumulate(cardinalities.begin(), cardinalities.end(), std::size_t{1}, std::multiplies<>());
  return JointDist(std::move(cardinalities), exponential_weights(cells, rng));
}

ProbDist random_dist(std::size_t size, std::mt19937_64& rng) { return ProbDist(exponential_weights(size, rng)); }

StochasticMatrix random_stochastic(std::size_t inputs, std::size_t outputs, std::mt19937_64& rng) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < inputs; ++i) rows.push_back(exponential_weights(outputs, rng));
  return StochasticMatrix(std::move(rows));
}

}  // namespace qit
