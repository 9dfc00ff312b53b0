#include "qit/gf2codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qit/centropy.hpp"

namespace qit {

// ---------------------------------------------------------------------------
// BitString

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw DomainError("bit string must be non-empty");
  for (auto b : bits_)
    if (b > 1) throw DomainError("bit string entries must be 0 or 1");
}

BitString BitString::zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }

BitString BitString::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError("bit string contains a character other than 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::uint64_t value, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1U);
  return BitString(std::move(bits));
}

std::size_t BitString::weight() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

bool BitString::dot(const BitString& other) const {
  if (other.size() != size()) throw DimensionError("bit strings differ in length");
  unsigned acc = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) acc ^= bits_[i] & other.bits_[i];
  return acc != 0;
}

std::uint64_t BitString::to_index() const {
  if (bits_.size() > 64) throw DimensionError("bit string too long for an index");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

BitString BitString::operator^(const BitString& other) const {
  if (other.size() != size()) throw DimensionError("bit strings differ in length");
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ^ other.bits_[i];
  return BitString(std::move(out));
}

std::size_t hamming_distance(const BitString& a, const BitString& b) { return (a ^ b).weight(); }

bool in_sphere(const BitString& c, const BitString& s, std::size_t radius) { return hamming_distance(c, s) <= radius; }

// ---------------------------------------------------------------------------
// Gf2Matrix

namespace {

// Row reduction to reduced row-echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<std::uint8_t>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != row && m[r][c])
        for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] ^= m[row][k];
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw DimensionError("matrix needs at least one row");
  Gf2Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionError("matrix rows differ in length");
    const auto bits = BitString::from_string(rows[r]);
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, bits[c]);
  }
  return m;
}

Gf2Matrix Gf2Matrix::from_columns(const std::vector<BitString>& columns) {
  if (columns.empty()) throw DimensionError("matrix needs at least one column");
  Gf2Matrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m.rows_) throw DimensionError("matrix columns differ in length");
    for (std::size_t r = 0; r < m.rows_; ++r) m.set(r, c, columns[c][r]);
  }
  return m;
}

BitString Gf2Matrix::column(std::size_t c) const {
  std::vector<std::uint8_t> bits(rows_);
  for (std::size_t r = 0; r < rows_; ++r) bits[r] = data_[r * cols_ + c];
  return BitString(std::move(bits));
}

BitString Gf2Matrix::row(std::size_t r) const {
  return BitString(std::vector<std::uint8_t>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)));
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

BitString Gf2Matrix::operator*(const BitString& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector shapes do not match");
  std::vector<std::uint8_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    unsigned acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= data_[r * cols_ + c] & x.bits()[c];
    out[r] = static_cast<std::uint8_t>(acc);
  }
  return BitString(std::move(out));
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& other) const {
  if (other.rows_ != cols_) throw DimensionError("matrix shapes do not match");
  Gf2Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      unsigned acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc ^= data_[r * cols_ + k] & other.data_[k * other.cols_ + c];
      out.set(r, c, acc != 0);
    }
  return out;
}

bool Gf2Matrix::is_zero() const { return std::all_of(data_.begin(), data_.end(), [](auto b) { return b == 0; }); }

std::size_t Gf2Matrix::rank() const {
  std::vector<std::vector<std::uint8_t>> m(rows_);
  for (std::size_t r = 0; r < rows_; ++r) m[r] = std::vector<std::uint8_t>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_), data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  return rref(m, cols_).size();
}

std::vector<BitString> Gf2Matrix::null_space() const {
  std::vector<std::vector<std::uint8_t>> m(rows_);
  for (std::size_t r = 0; r < rows_; ++r) m[r] = row(r).bits();
  const auto pivots = rref(m, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitString> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint8_t> x(cols_, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][f];
    basis.emplace_back(std::move(x));
  }
  return basis;
}

std::optional<BitString> Gf2Matrix::solve(const BitString& b) const {
  if (b.size() != rows_) throw DimensionError("right-hand side length does not match matrix rows");
  std::vector<std::vector<std::uint8_t>> m(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    m[r] = row(r).bits();
    m[r].push_back(b.bits()[r]);
  }
  const auto pivots = rref(m, cols_);
  for (std::size_t r = pivots.size(); r < rows_; ++r)
    if (m[r][cols_]) return std::nullopt;
  std::vector<std::uint8_t> x(cols_, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][cols_];
  return BitString(std::move(x));
}

// ---------------------------------------------------------------------------
// LinearCode

namespace {

constexpr std::size_t kMaxExhaustiveK = 16;
constexpr std::size_t kMaxTableN = 24;

// Visits all weight-w subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t w, F&& visit) {
  std::vector<std::size_t> idx(w);
  for (std::size_t i = 0; i < w; ++i) idx[i] = i;
  if (w > n) return;
  while (true) {
    visit(idx);
    std::size_t i = w;
    while (i > 0 && idx[i - 1] == n - w + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

LinearCode::LinearCode(Gf2Matrix g, Gf2Matrix h, std::optional<std::size_t> d)
    : generator_(std::move(g)), parity_check_(std::move(h)), distance_(d) {
  if (!distance_ || n() > kMaxTableN) return;
  const std::size_t t = correctable();
  for (std::size_t w = 0; w <= t; ++w) {
    for_each_combination(n(), w, [&](const std::vector<std::size_t>& positions) {
      auto e = BitString::zeros(n());
      for (auto p : positions) e.flip(p);
      syndrome_table_.try_emplace(syndrome(e), e);
    });
  }
}

LinearCode LinearCode::from_generator(Gf2Matrix generator, std::optional<Gf2Matrix> parity_check,
                                      std::optional<std::size_t> distance) {
  const std::size_t n = generator.rows();
  const std::size_t k = generator.cols();
  if (n == 0 || k == 0 || k > n) throw DimensionError("generator must be n×k with 1 ≤ k ≤ n");
  if (generator.rank() != k) throw DomainError("generator columns are linearly dependent");

  Gf2Matrix h(n - k, n);
  if (parity_check) {
    h = std::move(*parity_check);
    if (h.rows() != n - k || h.cols() != n) throw DimensionError("parity check must be (n−k)×n");
    if (h.rank() != n - k) throw DomainError("parity-check rows are linearly dependent");
  } else {
    const auto basis = generator.transpose().null_space();
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) h.set(r, c, basis[r][c]);
  }
  if (h.rows() > 0 && !(h * generator).is_zero()) throw DomainError("parity check does not annihilate the generator (HG ≠ 0)");

  std::optional<std::size_t> exact;
  if (k <= kMaxExhaustiveK) {
    std::size_t best = n + 1;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) best = std::min(best, (generator * BitString::from_index(m, k)).weight());
    exact = best;
    if (distance && *distance != best) {
      throw DomainError("stated distance " + std::to_string(*distance) + " differs from exhaustive minimum weight " +
                        std::to_string(best));
    }
  } else {
    exact = distance;
  }
  return LinearCode(std::move(generator), std::move(h), exact);
}

std::size_t LinearCode::correctable() const { return distance_ ? (*distance_ - 1) / 2 : 0; }

BitString LinearCode::encode(const BitString& message) const {
  if (message.size() != k()) throw DimensionError("message length must equal k");
  return generator_ * message;
}

BitString LinearCode::syndrome(const BitString& received) const {
  if (received.size() != n()) throw DimensionError("received word length must equal n");
  if (parity_check_.rows() == 0) return BitString::zeros(1);
  return parity_check_ * received;
}

bool LinearCode::contains(const BitString& word) const { return syndrome(word).weight() == 0; }

BitString LinearCode::message_of(const BitString& word) const {
  auto m = generator_.solve(word);
  if (!m) throw DomainError("word is not a codeword");
  return *m;
}

std::vector<BitString> LinearCode::codewords() const {
  if (k() > 20) throw DimensionError("too many codewords to enumerate");
  std::vector<BitString> words;
  words.reserve(std::size_t{1} << k());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k()); ++m) words.push_back(generator_ * BitString::from_index(m, k()));
  return words;
}

std::optional<BitString> LinearCode::coset_leader(const BitString& syndrome, std::size_t t) const {
  if (!distance_) throw DomainError("decoding needs a known minimum distance");
  if (2 * t + 1 > *distance_) throw DomainError("cannot correct t errors: 2t + 1 exceeds the distance");
  if (n() > kMaxTableN) throw DimensionError("syndrome table limited to n ≤ 24");
  auto it = syndrome_table_.find(syndrome);
  if (it == syndrome_table_.end() || it->second.weight() > t) return std::nullopt;
  return it->second;
}

std::optional<DecodeResult> LinearCode::decode(const BitString& received, std::size_t t) const {
  auto e = coset_leader(syndrome(received), t);
  if (!e) return std::nullopt;
  return DecodeResult{received ^ *e, *e};
}

LinearCode dual_code(const LinearCode& c) {
  if (c.k() == c.n()) throw DimensionError("the dual of the full space is the zero code");
  return LinearCode::from_generator(c.parity_check().transpose(), c.generator().transpose());
}

bool is_subcode(const LinearCode& inner, const LinearCode& outer) {
  if (inner.n() != outer.n()) return false;
  for (std::size_t j = 0; j < inner.k(); ++j)
    if (!outer.contains(inner.generator().column(j))) return false;
  return true;
}

bool is_weakly_self_dual(const LinearCode& c) {
  for (std::size_t i = 0; i < c.k(); ++i)
    for (std::size_t j = 0; j < c.k(); ++j)
      if (c.generator().column(i).dot(c.generator().column(j))) return false;
  return true;
}

bool same_code(const LinearCode& a, const LinearCode& b) {
  return a.k() == b.k() && is_subcode(a, b) && is_subcode(b, a);
}

CodeBounds code_bounds(const LinearCode& c) {
  if (!c.distance()) throw DomainError("code bounds need a known minimum distance");
  CodeBounds r{};
  r.n = c.n();
  r.k = c.k();
  r.d = *c.distance();
  r.t = c.correctable();
  r.rate = static_cast<double>(r.k) / static_cast<double>(r.n);
  r.singleton_ok = r.n - r.k + 1 >= r.d;
  r.gv_rate = 1.0 - binary_entropy(static_cast<double>(r.t) / static_cast<double>(r.n));
  r.gv_applicable = r.t >= 1;
  r.gv_ok = !r.gv_applicable || r.rate >= r.gv_rate;
  return r;
}

// ---------------------------------------------------------------------------
// CSS codes

CssCode::CssCode(LinearCode c1, LinearCode c2, LinearCode c2_dual, BitString u, BitString v, std::size_t t)
    : c1_(std::move(c1)), c2_(std::move(c2)), c2_dual_(std::move(c2_dual)), u_(std::move(u)), v_(std::move(v)), t_(t) {}

CssCode css_construct(const LinearCode& c1, const LinearCode& c2, std::optional<BitString> u,
                      std::optional<BitString> v, std::size_t t) {
  if (c1.n() != c2.n()) throw DimensionError("CSS codes must share the block length");
  if (!is_subcode(c2, c1)) throw DomainError("CSS construction requires C2 ⊆ C1");
  LinearCode c2_dual = dual_code(c2);
  if (c1.correctable() < t || c2_dual.correctable() < t) {
    throw DomainError("CSS construction requires C1 and dual(C2) to correct t errors");
  }
  BitString uu = u.value_or(BitString::zeros(c1.n()));
  BitString vv = v.value_or(BitString::zeros(c1.n()));
  if (uu.size() != c1.n() || vv.size() != c1.n()) throw DimensionError("u and v must have length n");
  return CssCode(c1, c2, std::move(c2_dual), std::move(uu), std::move(vv), t);
}

CssBounds css_bounds(const CssCode& code) {
  CssBounds b{};
  b.n = code.n();
  b.k = code.logical_bits();
  b.d = std::min(code.c1().distance().value_or(0), code.c2_dual().distance().value_or(0));
  b.quantum_singleton_ok = b.n - b.k + 2 >= 2 * b.d;
  const double x = std::min(1.0, 2.0 * static_cast<double>(code.correctable()) / static_cast<double>(b.n));
  b.quantum_gv_rate = 1.0 - 2.0 * binary_entropy(x);
  return b;
}

BitString coset_label(const CssCode& code, const BitString& x) {
  if (code.logical_bits() == 0) throw DomainError("code has no logical bits to label");
  const std::size_t k1 = code.c1().k();
  BitString m = code.c1().message_of(x);

  // Reduced echelon basis of the message image of C2 inside the C1 message space.
  std::vector<BitString> basis;
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < code.c2().k(); ++j) {
    BitString a = code.c1().message_of(code.c2().generator().column(j));
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (a[pivots[i]]) a = a ^ basis[i];
    std::size_t p = 0;
    while (p < k1 && !a[p]) ++p;
    if (p == k1) continue;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i][p]) basis[i] = basis[i] ^ a;
    basis.push_back(a);
    pivots.push_back(p);
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (m[pivots[i]]) m = m ^ basis[i];

  std::vector<std::uint8_t> label;
  for (std::size_t p = 0; p < k1; ++p)
    if (std::find(pivots.begin(), pivots.end(), p) == pivots.end()) label.push_back(m[p] ? 1 : 0);
  return BitString(std::move(label));
}

ComplexVector css_basis_state(const CssCode& code, const BitString& x) {
  const std::size_t n = code.n();
  if (n > 16) throw DimensionError("dense CSS states limited to n ≤ 16");
  if (x.size() != n || !code.c1().contains(x)) throw DomainError("x must be a codeword of C1");
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
  const auto words = code.c2().codewords();
  const double amp = 1.0 / std::sqrt(static_cast<double>(words.size()));
  for (const auto& y : words) {
    const double sign = code.u().dot(y) ? -1.0 : 1.0;
    psi(static_cast<Eigen::Index>((x ^ y ^ code.v()).to_index())) += sign * amp;
  }
  return psi;
}

void hadamard_transform(ComplexVector& amplitudes) {
  const auto size = amplitudes.size();
  if (size == 0 || (size & (size - 1)) != 0) throw DimensionError("Hadamard transform needs a power-of-two length");
  for (Eigen::Index half = 1; half < size; half <<= 1)
    for (Eigen::Index block = 0; block < size; block += 2 * half)
      for (Eigen::Index i = block; i < block + half; ++i) {
        const Complex a = amplitudes(i);
        const Complex b = amplitudes(i + half);
        amplitudes(i) = a + b;
        amplitudes(i + half) = a - b;
      }
  amplitudes /= std::sqrt(static_cast<double>(size));
}

namespace {

// Projective syndrome measurement of `code` on a computational-basis
// superposition; keeps the most probable outcome and renormalizes.
BitString measure_syndrome(const LinearCode& code, ComplexVector& psi) {
  const std::size_t n = code.n();
  std::map<BitString, double> weights;
  std::vector<BitString> syndromes(static_cast<std::size_t>(psi.size()), BitString::zeros(1));
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    const double p = std::norm(psi(idx));
    if (p < tol::prob) continue;
    syndromes[static_cast<std::size_t>(idx)] = code.syndrome(BitString::from_index(static_cast<std::uint64_t>(idx), n));
    weights[syndromes[static_cast<std::size_t>(idx)]] += p;
  }
  const auto best = std::max_element(weights.begin(), weights.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  const BitString outcome = best->first;
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx)
    if (std::norm(psi(idx)) < tol::prob || syndromes[static_cast<std::size_t>(idx)] != outcome) psi(idx) = 0.0;
  psi.normalize();
  return outcome;
}

void apply_bit_flips(ComplexVector& psi, const BitString& e) {
  const std::uint64_t mask = e.to_index();
  if (mask == 0) return;
  ComplexVector out(psi.size());
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(idx) ^ mask)) = psi(idx);
  psi = std::move(out);
}

void apply_phase_flips(ComplexVector& psi, const BitString& e) {
  const std::uint64_t mask = e.to_index();
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx)
    if (std::popcount(static_cast<std::uint64_t>(idx) & mask) % 2 == 1) psi(idx) = -psi(idx);
}

}  // namespace

CssCorrectionResult simulate_css_correction(const CssCode& code, const BitString& x, const BitString& e1,
                                            const BitString& e2) {
  const std::size_t n = code.n();
  if (n > 10) throw DimensionError("statevector CSS simulation limited to n ≤ 10");
  if (code.u().weight() != 0 || code.v().weight() != 0) throw DomainError("correction simulation needs u = v = 0");
  if (e1.size() != n || e2.size() != n) throw DimensionError("error patterns must have length n");

  ComplexVector psi = css_basis_state(code, x);
  apply_phase_flips(psi, e2);
  apply_bit_flips(psi, e1);

  // Bit-flip round: syndrome of C1, then NOT gates on the indicated positions.
  const BitString s1 = measure_syndrome(code.c1(), psi);
  const auto leader1 = code.c1().coset_leader(s1, code.correctable());
  const BitString fix1 = leader1.value_or(BitString::zeros(n));
  apply_bit_flips(psi, fix1);

  hadamard_transform(psi);

  // Expected: √(|C2|/2ⁿ) Σ_{z∈C2⊥} (−1)^{x·z} |z + e2⟩.
  bool form_matches = false;
  if (fix1 == e1) {
    ComplexVector expected = ComplexVector::Zero(psi.size());
    const double amp = std::sqrt(std::ldexp(static_cast<double>(std::uint64_t{1} << code.c2().k()), -static_cast<int>(n)));
    for (const auto& z : code.c2_dual().codewords())
      expected(static_cast<Eigen::Index>((z ^ e2).to_index())) += (x.dot(z) ? -amp : amp);
    form_matches = (psi - expected).cwiseAbs().maxCoeff() <= tol::recon;
  }

  // Phase-flip round, now a bit-flip problem for C2⊥ in the Hadamard basis.
  const BitString s2 = measure_syndrome(code.c2_dual(), psi);
  const auto leader2 = code.c2_dual().coset_leader(s2, code.correctable());
  const BitString fix2 = leader2.value_or(BitString::zeros(n));
  apply_bit_flips(psi, fix2);
  hadamard_transform(psi);

  CssCorrectionResult result{std::nullopt, false, fix1, fix2, form_matches};
  std::map<BitString, BitString> representatives;
  for (const auto& w : code.c1().codewords()) representatives.try_emplace(coset_label(code, w), w);
  for (const auto& [label, rep] : representatives) {
    const double overlap = std::abs(css_basis_state(code, rep).dot(psi));
    if (overlap >= 1.0 - tol::recon) {
      result.recovered_coset = label;
      break;
    }
  }
  result.success = result.recovered_coset && *result.recovered_coset == coset_label(code, x);
  return result;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

LinearCode repetition3() {
  return LinearCode::from_generator(Gf2Matrix::from_columns({BitString::from_string("111")}), std::nullopt, 3);
}

LinearCode parity3() {
  return LinearCode::from_generator(
      Gf2Matrix::from_columns({BitString::from_string("110"), BitString::from_string("011")}),
      Gf2Matrix::from_rows({"111"}), 2);
}

LinearCode hamming74() {
  const auto g = Gf2Matrix::from_columns({BitString::from_string("1110000"), BitString::from_string("1001100"),
                                          BitString::from_string("0101010"), BitString::from_string("1101001")});
  const auto h = Gf2Matrix::from_rows({"1010101", "0110011", "0001111"});
  return LinearCode::from_generator(g, h, 3);
}

LinearCode simplex73() { return dual_code(hamming74()); }

CssCode steane() { return css_construct(hamming74(), simplex73()); }

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Text format

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    return true;
  }
  return false;
}

}  // namespace

LinearCode read_code(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("code file is empty");
  std::istringstream header(line);
  long long n = 0, k = 0;
  if (!(header >> n >> k) || n <= 0 || k <= 0 || k > n) throw ParseError("code header must be \"n k\" with 1 ≤ k ≤ n");
  std::string rest;
  if (header >> rest) throw ParseError("unexpected trailing text in code header");

  std::vector<BitString> columns;
  for (long long j = 0; j < k; ++j) {
    if (!next_content_line(in, line)) throw ParseError("code file ends before all generator columns");
    if (static_cast<long long>(line.size()) != n) throw ParseError("generator column has the wrong length");
    columns.push_back(BitString::from_string(line));
  }
  std::optional<Gf2Matrix> h;
  if (next_content_line(in, line)) {
    if (line != "H") throw ParseError("expected \"H\" separator after generator columns");
    std::vector<std::string> rows;
    for (long long r = 0; r < n - k; ++r) {
      if (!next_content_line(in, line)) throw ParseError("code file ends before all parity-check rows");
      if (static_cast<long long>(line.size()) != n) throw ParseError("parity-check row has the wrong length");
      rows.push_back(line);
    }
    if (!rows.empty()) h = Gf2Matrix::from_rows(rows);
    if (next_content_line(in, line)) throw ParseError("unexpected trailing content in code file");
  }
  try {
    return LinearCode::from_generator(Gf2Matrix::from_columns(columns), std::move(h));
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("invalid code: ") + e.what());
  }
}

void write_code(std::ostream& out, const LinearCode& c) {
  out << c.n() << ' ' << c.k() << '\n';
  for (std::size_t j = 0; j < c.k(); ++j) out << c.generator().column(j).to_string() << '\n';
  if (c.parity_check().rows() > 0) {
    out << "H\n";
    for (std::size_t r = 0; r < c.parity_check().rows(); ++r) out << c.parity_check().row(r).to_string() << '\n';
  }
}

}  // namespace qit
