#include "qit/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qit {

namespace {

constexpr std::uint64_t kMaxSequences = std::uint64_t{1} << 24;
constexpr std::uint64_t kMaxSubspaceDim = 256;
// Slack on the typicality inequality so that exact ties survive rounding.
constexpr double kTypicalSlack = 1e-12;

std::uint64_t checked_power(std::size_t base, std::size_t exp, std::uint64_t cap, const char* what) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / base) throw DimensionError(std::string(what) + " exceeds the enumeration cap");
    v *= base;
  }
  if (v > cap) throw DimensionError(std::string(what) + " exceeds the enumeration cap");
  return v;
}

std::size_t rate_bits(std::size_t n, double rate) {
  const double nr = static_cast<double>(n) * rate;
  if (!(nr >= 1.0)) throw DomainError("rate must satisfy n·R ≥ 1");
  const auto bits = static_cast<std::size_t>(std::floor(nr + 1e-12));
  if (bits > 62) throw DimensionError("rate too large for 64-bit indices");
  return bits;
}

ProbDist spectrum_dist(const RealVector& spectrum) {
  std::vector<double> w(spectrum.data(), spectrum.data() + spectrum.size());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return ProbDist(std::move(w));
}

}  // namespace

SourceModel::SourceModel(ProbDist d, std::size_t block_length, double eps)
    : dist(std::move(d)), n(block_length), epsilon(eps) {
  if (n == 0) throw DomainError("block length must be at least 1");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

QuantumSourceModel::QuantumSourceModel(DensityMatrix r, std::size_t block_length, double eps)
    : rho(std::move(r)), n(block_length), epsilon(eps) {
  if (n == 0) throw DomainError("block length must be at least 1");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

Sequence sequence_from_index(std::uint64_t index, std::size_t alphabet, std::size_t n) {
  Sequence seq(n);
  for (std::size_t i = n; i-- > 0;) {
    seq[i] = static_cast<std::size_t>(index % alphabet);
    index /= alphabet;
  }
  return seq;
}

std::uint64_t sequence_index(std::span<const std::size_t> seq, std::size_t alphabet) {
  std::uint64_t v = 0;
  for (auto x : seq) {
    if (x >= alphabet) throw DomainError("symbol outside the alphabet");
    v = v * alphabet + x;
  }
  return v;
}

double sample_entropy(std::span<const std::size_t> seq, const ProbDist& dist) {
  if (seq.empty()) throw DimensionError("sequence is empty");
  double surprisal = 0.0;
  for (auto x : seq) {
    if (x >= dist.size()) throw DomainError("symbol outside the alphabet");
    if (dist[x] <= 0.0) return kInfinity;
    surprisal -= std::log2(dist[x]);
  }
  return surprisal / static_cast<double>(seq.size());
}

bool is_eps_typical(std::span<const std::size_t> seq, const SourceModel& s) {
  if (seq.size() != s.n) throw DimensionError("sequence length must equal the block length");
  const double h = sample_entropy(seq, s.dist);
  if (h == kInfinity) return false;
  return std::abs(h - shannon_entropy(s.dist)) <= s.epsilon + kTypicalSlack;
}

bool TypicalSet::within_bounds() const {
  const double size = static_cast<double>(indices.size());
  return size <= upper_bound * (1.0 + 1e-12) && size >= lower_bound * (1.0 - 1e-12);
}

TypicalSet typical_set(const SourceModel& s) {
  const std::size_t a = s.alphabet();
  const std::uint64_t total = checked_power(a, s.n, kMaxSequences, "sequence space");
  const double h = shannon_entropy(s.dist);
  std::vector<double> surprisal(a);
  for (std::size_t x = 0; x < a; ++x) surprisal[x] = s.dist[x] > 0.0 ? -std::log2(s.dist[x]) : kInfinity;

  TypicalSet t{};
  Sequence seq(s.n, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    double sum = 0.0;
    for (auto x : seq) sum += surprisal[x];
    const double rate = sum / static_cast<double>(s.n);
    if (rate != kInfinity && std::abs(rate - h) <= s.epsilon + kTypicalSlack) {
      t.indices.push_back(idx);
      t.mass += std::exp2(-sum);
    }
    // odometer increment, last symbol fastest
    for (std::size_t i = s.n; i-- > 0;) {
      if (++seq[i] < a) break;
      seq[i] = 0;
    }
  }
  const double n = static_cast<double>(s.n);
  t.upper_bound = std::exp2(n * (h + s.epsilon));
  t.lower_bound = std::max(0.0, t.mass) * std::exp2(n * (h - s.epsilon));
  return t;
}

MultinomialCount multinomial_typical_count(const SourceModel& s) {
  const std::size_t a = s.alphabet();
  MultinomialCount m{};
  m.composition.assign(a, 0);

  // Largest-remainder rounding of n·p(x) so the composition sums to n.
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t x = 0; x < a; ++x) {
    const double target = static_cast<double>(s.n) * s.dist[x];
    m.composition[x] = static_cast<std::size_t>(std::floor(target));
    assigned += m.composition[x];
    remainders.emplace_back(target - std::floor(target), x);
  }
  std::stable_sort(remainders.begin(), remainders.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  for (std::size_t i = 0; assigned < s.n; ++i, ++assigned) ++m.composition[remainders[i % a].second];

  m.log2_exact = std::lgamma(static_cast<double>(s.n) + 1.0);
  for (auto k : m.composition) m.log2_exact -= std::lgamma(static_cast<double>(k) + 1.0);
  m.log2_exact /= std::log(2.0);
  m.log2_approx = static_cast<double>(s.n) * shannon_entropy(s.dist);

  // Exact value as a product of binomials, each built incrementally.
  unsigned __int128 exact = 1;
  std::size_t placed = 0;
  bool fits = true;
  for (auto k : m.composition) {
    unsigned __int128 binom = 1;
    for (std::size_t j = 1; j <= k && fits; ++j) {
      binom = binom * (placed + j) / j;
      if (binom > std::numeric_limits<std::uint64_t>::max()) fits = false;
    }
    placed += k;
    exact *= binom;
    if (exact > std::numeric_limits<std::uint64_t>::max()) fits = false;
    if (!fits) break;
  }
  if (fits) m.exact = static_cast<std::uint64_t>(exact);
  return m;
}

ShannonScheme::ShannonScheme(const SourceModel& s, double rate)
    : alphabet_(s.alphabet()), n_(s.n), bits_(rate_bits(s.n, rate)), reliability_(0.0) {
  const TypicalSet t = typical_set(s);
  const std::uint64_t capacity = failure_index();
  encoded_ = t.indices;
  if (encoded_.size() > capacity) {
    if (rate > shannon_entropy(s.dist)) {
      throw DomainError("typical set of size " + std::to_string(encoded_.size()) + " does not fit in " +
                        std::to_string(bits_) + "-bit indices although R > H");
    }
    encoded_.resize(capacity);
  }
  for (auto idx : encoded_) {
    double p = 1.0;
    for (auto x : sequence_from_index(idx, alphabet_, n_)) p *= s.dist[x];
    reliability_ += p;
  }
}

std::uint64_t ShannonScheme::compress(std::span<const std::size_t> seq) const {
  if (seq.size() != n_) throw DimensionError("sequence length must equal the block length");
  const auto idx = sequence_index(seq, alphabet_);
  const auto it = std::lower_bound(encoded_.begin(), encoded_.end(), idx);
  if (it == encoded_.end() || *it != idx) return failure_index();
  return static_cast<std::uint64_t>(it - encoded_.begin());
}

std::optional<Sequence> ShannonScheme::decompress(std::uint64_t code) const {
  if (code >= encoded_.size()) return std::nullopt;
  return sequence_from_index(encoded_[code], alphabet_, n_);
}

TypicalSubspace typical_subspace(const QuantumSourceModel& q, std::optional<double> rate) {
  const std::size_t d = q.rho.dim();
  const std::uint64_t total = checked_power(d, q.n, kMaxSubspaceDim, "typical subspace dimension");
  const auto eig = eig_hermitian(q.rho.matrix());
  const RealVector spectrum = clamped_spectrum(q.rho.matrix());

  const SourceModel classical(spectrum_dist(spectrum), q.n, q.epsilon);
  TypicalSubspace ts{};
  ts.kept = typical_set(classical).indices;
  if (rate) {
    const std::uint64_t limit = std::uint64_t{1} << rate_bits(q.n, *rate);
    if (ts.kept.size() > limit) ts.kept.resize(limit);
  }
  ts.eigenvalues = spectrum;
  ts.eigenvectors = eig.vectors;

  const auto dim = static_cast<Eigen::Index>(total);
  ts.projector = ComplexMatrix::Zero(dim, dim);
  for (auto idx : ts.kept) {
    ComplexVector v = ComplexVector::Ones(1);
    for (auto x : sequence_from_index(idx, d, q.n)) {
      ComplexVector next(v.size() * static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < v.size(); ++i)
        next.segment(i * static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) = v(i) * eig.vectors.col(static_cast<Eigen::Index>(x));
      v = std::move(next);
    }
    ts.projector += v * v.adjoint();
  }
  return ts;
}

ComplexMatrix typical_subspace_projector(const QuantumSourceModel& q) { return typical_subspace(q).projector; }

DensityMatrix schumacher_compress(const QuantumSourceModel& q, const DensityMatrix& sigma, std::optional<double> rate) {
  const TypicalSubspace ts = typical_subspace(q, rate);
  if (static_cast<Eigen::Index>(sigma.dim()) != ts.projector.rows()) {
    throw DimensionError("input state must live on the n-fold source space");
  }
  const ComplexMatrix& p = ts.projector;
  ComplexMatrix out = p * sigma.matrix() * p;
  // Σ_i ⟨i|σ|i⟩ over the complement equals tr((I − P)σ).
  const double leaked = std::max(0.0, 1.0 - (p * sigma.matrix()).trace().real());
  out(0, 0) += leaked;
  return DensityMatrix(DensityMatrix::Trusted{}, 0.5 * (out + out.adjoint()), sigma.subsystem_dims());
}

double schumacher_fidelity(const QuantumSourceModel& q, std::optional<double> rate) {
  const std::size_t d = q.rho.dim();
  const std::uint64_t total = checked_power(d, q.n, kMaxSubspaceDim, "typical subspace dimension");
  const TypicalSubspace ts = typical_subspace(q, rate);
  std::vector<bool> kept(total, false);
  for (auto idx : ts.kept) kept[idx] = true;

  // ρ^{⊗n} is diagonal in the product eigenbasis: tr(ρ^{⊗n}P) is the kept mass
  // and ⟨i|ρ^{⊗n}|0⟩ = λ_i·⟨i|0⟩ for every discarded eigenvector i.
  double kept_mass = 0.0;
  double leak = 0.0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    double lambda = 1.0;
    double overlap = 1.0;
    for (auto x : sequence_from_index(idx, d, q.n)) {
      lambda *= ts.eigenvalues(static_cast<Eigen::Index>(x));
      overlap *= std::norm(ts.eigenvectors(0, static_cast<Eigen::Index>(x)));
    }
    if (kept[idx]) {
      kept_mass += lambda;
    } else {
      leak += lambda * lambda * overlap;
    }
  }
  return std::clamp(kept_mass * kept_mass + leak, 0.0, 1.0);
}

}  // namespace qit
