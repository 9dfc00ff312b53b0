#include "qit/bb84sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <thread>

#include "qit/centropy.hpp"
#include "qit/qentropy.hpp"

namespace qit {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t CounterRng::next() { return mix(key_ + kGamma * (++counter_)); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v;
  do v = next();
  while (v >= limit);
  return v % bound;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose) {
  // FNV-1a over the purpose name, folded into the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix(master ^ mix(h));
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return mix(derive_seed(master, "trial") + kGamma * (index + 1));
}

PureState Bb84State::state() const {
  if (basis == Basis::computational) return PureState::basis(2, bit ? 1 : 0);
  return bit ? minus_state() : plus_state();
}

DensityMatrix Bb84State::density() const { return state().projector(); }

ChannelModel ChannelModel::depolarizing(double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("depolarizing parameter must lie in [0, 1]");
  return {Kind::depolarizing, f};
}

ChannelModel ChannelModel::intercept_resend(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DomainError("intercepted fraction must lie in [0, 1]");
  return {Kind::intercept_resend, fraction};
}

QuantumOperation ChannelModel::operation() const {
  switch (kind) {
    case Kind::ideal:
      return QuantumOperation::identity(2);
    case Kind::depolarizing:
      return QuantumOperation::depolarizing(parameter);
    case Kind::intercept_resend: {
      std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - parameter) * ComplexMatrix::Identity(2, 2)};
      for (Basis b : {Basis::computational, Basis::hadamard})
        for (bool bit : {false, true}) kraus.push_back(std::sqrt(parameter / 2.0) * Bb84State{bit, b}.density().matrix());
      return QuantumOperation::from_kraus(std::move(kraus));
    }
  }
  throw DomainError("unknown channel kind");
}

std::string ChannelModel::name() const {
  switch (kind) {
    case Kind::ideal:
      return "ideal";
    case Kind::depolarizing:
      return "depolarizing";
    case Kind::intercept_resend:
      return "intercept_resend";
  }
  return "unknown";
}

ProtocolConfig::ProtocolConfig(std::size_t n_, double delta_, std::size_t threshold_t_, CssCode css_,
                               std::uint64_t master_seed_)
    : n(n_), delta(delta_), threshold_t(threshold_t_), css(std::move(css_)), master_seed(master_seed_) {
  if (n == 0) throw DomainError("key block length n must be positive");
  if (!(delta >= 0.0)) throw DomainError("delta must be non-negative");
  if (threshold_t >= n) throw DomainError("threshold t must be below n");
  if (css.logical_bits() == 0) throw DomainError("CSS code encodes no key bits");
  if (n < css.n()) throw DomainError("n is shorter than one CSS block");
}

std::size_t ProtocolConfig::qubit_count() const {
  return static_cast<std::size_t>(std::ceil((4.0 + delta) * static_cast<double>(n) - 1e-9));
}

std::size_t ProtocolConfig::default_threshold(std::size_t n) {
  return static_cast<std::size_t>(std::floor(0.11 * static_cast<double>(n)));
}

double outcome_one_probability(const DensityMatrix& rho, Basis basis) {
  if (rho.dim() != 2) throw DimensionError("BB84 measurements act on qubits");
  ComplexMatrix frame = ComplexMatrix::Identity(2, 2);
  if (basis == Basis::hadamard) frame = hadamard();
  const auto outcomes = measure(rho, MeasurementSet::projective(frame));
  return std::clamp(outcomes[1].probability, 0.0, 1.0);
}

bool measure_qubit(const DensityMatrix& rho, Basis basis, CounterRng& rng) {
  return rng.uniform() < outcome_one_probability(rho, basis);
}

namespace {

// p1[a][b][b'] = P(outcome 1 | prepared ψ_{a,b}, passed through op, measured in b').
using BornTable = std::array<std::array<std::array<double, 2>, 2>, 2>;

BornTable born_table(const QuantumOperation& op) {
  BornTable t{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const DensityMatrix out = apply_operation(Bb84State{a == 1, static_cast<Basis>(b)}.density(), op);
      for (int m = 0; m < 2; ++m) t[a][b][m] = outcome_one_probability(out, static_cast<Basis>(m));
    }
  return t;
}

BitString to_bitstring(const Bits& bits, std::size_t offset, std::size_t len) {
  return BitString(Bits(bits.begin() + static_cast<std::ptrdiff_t>(offset),
                        bits.begin() + static_cast<std::ptrdiff_t>(offset + len)));
}

void append(Bits& out, const BitString& s) { out.insert(out.end(), s.bits().begin(), s.bits().end()); }

}  // namespace

ProtocolTranscript run_bb84(const ProtocolConfig& cfg, const ChannelModel& ch) {
  const std::uint64_t seed = cfg.master_seed;
  CounterRng alice_bits(derive_seed(seed, "alice-bits"));
  CounterRng alice_bases(derive_seed(seed, "alice-bases"));
  CounterRng bob_bases(derive_seed(seed, "bob-bases"));
  CounterRng eve_bases(derive_seed(seed, "eve-bases"));
  CounterRng eve_select(derive_seed(seed, "eve-select"));
  CounterRng outcomes(derive_seed(seed, "outcomes"));
  CounterRng selection(derive_seed(seed, "selection"));
  CounterRng vk_stream(derive_seed(seed, "vk"));

  const std::size_t total = cfg.qubit_count();
  ProtocolTranscript tr;
  tr.master_seed = seed;
  tr.n = cfg.n;

  // Steps 1–2: random bits and bases.
  tr.alice_bits.resize(total);
  tr.alice_bases.resize(total);
  tr.bob_bases.resize(total);
  tr.bob_bits.resize(total);
  for (std::size_t i = 0; i < total; ++i) tr.alice_bits[i] = alice_bits.bit();
  for (std::size_t i = 0; i < total; ++i) tr.alice_bases[i] = alice_bases.bit();
  for (std::size_t i = 0; i < total; ++i) tr.bob_bases[i] = bob_bases.bit();

  // Steps 3 and 5: transmission and Bob's measurement.
  const bool eve = ch.kind == ChannelModel::Kind::intercept_resend;
  const BornTable direct = born_table(eve ? QuantumOperation::identity(2) : ch.operation());
  if (eve) {
    tr.eve_active.assign(total, 0);
    tr.eve_bases.assign(total, 0);
    tr.eve_bits.assign(total, 0);
  }
  for (std::size_t i = 0; i < total; ++i) {
    int a = tr.alice_bits[i];
    int b = tr.alice_bases[i];
    if (eve && eve_select.uniform() < ch.parameter) {
      const int eb = eve_bases.bit();
      const int e = outcomes.uniform() < direct[a][b][eb] ? 1 : 0;
      tr.eve_active[i] = 1;
      tr.eve_bases[i] = static_cast<std::uint8_t>(eb);
      tr.eve_bits[i] = static_cast<std::uint8_t>(e);
      a = e;  // resend the eigenstate of her outcome
      b = eb;
    }
    tr.bob_bits[i] = outcomes.uniform() < direct[a][b][tr.bob_bases[i]] ? 1 : 0;
  }

  // Steps 6–7: basis announcement and sifting.
  tr.sift_mask.resize(total);
  std::vector<std::size_t> sifted;
  for (std::size_t i = 0; i < total; ++i) {
    tr.sift_mask[i] = tr.alice_bases[i] == tr.bob_bases[i];
    if (tr.sift_mask[i]) sifted.push_back(i);
  }
  tr.sifted_count = sifted.size();
  if (sifted.size() < 2 * cfg.n) {
    tr.aborted = true;
    tr.abort_reason = "fewer than 2n sifted bits";
    return tr;
  }
  // Partial Fisher–Yates: the first 2n entries become a uniform random selection.
  for (std::size_t i = 0; i < 2 * cfg.n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(selection.below(sifted.size() - i));
    std::swap(sifted[i], sifted[j]);
  }
  tr.check_indices.assign(sifted.begin(), sifted.begin() + static_cast<std::ptrdiff_t>(cfg.n));
  tr.key_indices.assign(sifted.begin() + static_cast<std::ptrdiff_t>(cfg.n),
                        sifted.begin() + static_cast<std::ptrdiff_t>(2 * cfg.n));
  std::sort(tr.check_indices.begin(), tr.check_indices.end());
  std::sort(tr.key_indices.begin(), tr.key_indices.end());

  // Step 8: check bits.
  for (auto i : tr.check_indices) tr.disagreements += tr.alice_bits[i] != tr.bob_bits[i];
  tr.qber_estimate = static_cast<double>(tr.disagreements) / static_cast<double>(cfg.n);
  if (tr.disagreements > cfg.threshold_t) {
    tr.aborted = true;
    tr.abort_reason = "check-bit disagreements exceed t";
    return tr;
  }

  // Steps 4, 9, 10 per CSS block; leftover bits are discarded.
  Bits x_alice, x_bob;
  for (auto i : tr.key_indices) {
    x_alice.push_back(tr.alice_bits[i]);
    x_bob.push_back(tr.bob_bits[i]);
  }
  const CssCode& code = cfg.css;
  const std::size_t block = code.n();
  tr.blocks = cfg.n / block;
  for (std::size_t blk = 0; blk < tr.blocks; ++blk) {
    Bits message(code.c1().k());
    for (auto& m : message) m = vk_stream.bit();
    const BitString v_k = code.c1().encode(BitString(std::move(message)));
    const BitString xa = to_bitstring(x_alice, blk * block, block);
    const BitString xb = to_bitstring(x_bob, blk * block, block);
    append(tr.announced_offset, xa ^ v_k);
    const ReconciliationResult r = reconcile_and_amplify(code, xa, xb, v_k);
    if (!r.success) ++tr.reconciliation_failures;
    append(tr.alice_key, r.key_a);
    append(tr.bob_key, r.key_b);
  }
  return tr;
}

ReconciliationResult reconcile_and_amplify(const CssCode& code, const BitString& x_alice, const BitString& x_bob,
                                           const BitString& v_k) {
  const BitString announced = x_alice ^ v_k;
  const BitString received = x_bob ^ announced;  // v_k ⊕ (x_alice ⊕ x_bob)
  const BitString key_a = coset_label(code, v_k);
  const auto decoded = code.c1().decode(received, code.c1().correctable());
  if (!decoded) {
    // No codeword within radius t: Bob has no coset to label.
    return {key_a, BitString::zeros(key_a.size()), false};
  }
  const BitString key_b = coset_label(code, decoded->codeword);
  return {key_a, key_b, decoded->codeword == v_k};
}

double privacy_lower_bound(const DensityMatrix& rho, const QuantumOperation& op) {
  return coherent_information(rho, op);
}

EveInformation eve_information_estimate(const std::vector<ProtocolTranscript>& transcripts) {
  // Counts over (Alice bit, Eve symbol ∈ {0, 1, none}, Eve basis matched Alice's).
  std::vector<double> counts(2 * 3 * 2, 0.0);
  std::size_t samples = 0;
  std::size_t intercepted = 0;
  for (const auto& tr : transcripts) {
    if (tr.eve_active.empty()) continue;
    for (std::size_t i = 0; i < tr.sift_mask.size(); ++i) {
      if (!tr.sift_mask[i]) continue;
      const std::size_t a = tr.alice_bits[i];
      std::size_t e = 2;
      std::size_t match = 0;
      if (tr.eve_active[i]) {
        e = tr.eve_bits[i];
        match = tr.eve_bases[i] == tr.alice_bases[i];
        ++intercepted;
      }
      counts[(a * 3 + e) * 2 + match] += 1.0;
      ++samples;
    }
  }
  if (samples == 0) return {0.0, 0.0, 0};
  for (auto& c : counts) c /= static_cast<double>(samples);
  const JointDist joint({2, 3, 2}, std::move(counts));
  const double mi = std::max(0.0, mutual_information(joint, {0}, {1, 2}));

  // Eve's states given Alice's bit once the basis is public: χ per basis, then
  // weighted by the intercepted fraction (unintercepted qubits leave her nothing).
  double chi = 0.0;
  for (Basis b : {Basis::computational, Basis::hadamard}) {
    const Ensemble eve_view({{0.5, Bb84State{false, b}.density()}, {0.5, Bb84State{true, b}.density()}});
    chi += 0.5 * holevo_chi(eve_view);
  }
  const double fraction = static_cast<double>(intercepted) / static_cast<double>(samples);
  return {mi, fraction * chi, samples};
}

std::vector<ProtocolTranscript> run_batch(const ProtocolConfig& cfg, const ChannelModel& ch, std::size_t trials) {
  std::vector<ProtocolTranscript> out(trials);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < trials; i += workers) {
        ProtocolConfig trial_cfg = cfg;
        trial_cfg.master_seed = trial_seed(cfg.master_seed, i);
        out[i] = run_bb84(trial_cfg, ch);
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

BatchSummary summarize(const std::vector<ProtocolTranscript>& transcripts) {
  BatchSummary s{transcripts.size(), 0.0, 0.0, 0.0};
  if (transcripts.empty()) return s;
  std::size_t checked = 0, aborted = 0, matched = 0;
  for (const auto& tr : transcripts) {
    if (!tr.check_indices.empty()) {
      s.mean_qber += tr.qber_estimate;
      ++checked;
    }
    aborted += tr.aborted;
    matched += tr.keys_match();
  }
  if (checked > 0) s.mean_qber /= static_cast<double>(checked);
  s.abort_rate = static_cast<double>(aborted) / static_cast<double>(transcripts.size());
  s.key_match_rate = static_cast<double>(matched) / static_cast<double>(transcripts.size());
  return s;
}

}  // namespace qit
