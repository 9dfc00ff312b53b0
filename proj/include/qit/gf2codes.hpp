#pragma once

// GF(2) linear block codes, syndrome decoding, classical bounds, and the CSS
// quantum code construction with a dense statevector correction check.
//
// Generator convention: G is n×k and maps column messages to codewords, c = G·m.
// Bit position 0 of a BitString is the leftmost character and the most
// significant bit of the computational-basis index.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qit/matquant.hpp"

namespace qit {

class BitString {
 public:
  /// Throws DomainError for empty input or entries outside {0, 1}.
  explicit BitString(std::vector<std::uint8_t> bits);
  static BitString zeros(std::size_t n);
  static BitString from_string(std::string_view s);
  /// The low `n` bits of `value`, most significant first.
  static BitString from_index(std::uint64_t value, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void flip(std::size_t i) { bits_[i] ^= 1U; }
  std::size_t weight() const;
  /// GF(2) inner product.
  bool dot(const BitString& other) const;
  std::uint64_t to_index() const;
  std::string to_string() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString&) const = default;
  auto operator<=>(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);
/// Membership of `s` in the Hamming sphere of center `c` and the given radius.
bool in_sphere(const BitString& c, const BitString& s, std::size_t radius);

class Gf2Matrix {
 public:
  Gf2Matrix(std::size_t rows, std::size_t cols);
  static Gf2Matrix from_rows(const std::vector<std::string>& rows);
  static Gf2Matrix from_columns(const std::vector<BitString>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v) { data_[r * cols_ + c] = v ? 1 : 0; }

  BitString column(std::size_t c) const;
  BitString row(std::size_t r) const;
  Gf2Matrix transpose() const;
  BitString operator*(const BitString& x) const;
  Gf2Matrix operator*(const Gf2Matrix& other) const;
  bool is_zero() const;
  std::size_t rank() const;
  /// Basis of {x : M·x = 0}.
  std::vector<BitString> null_space() const;
  /// A solution x of M·x = b, if one exists.
  std::optional<BitString> solve(const BitString& b) const;

 private:
  std::size_t rows_, cols_;
  std::vector<std::uint8_t> data_;
};

struct DecodeResult {
  BitString codeword;
  BitString error;
};

class LinearCode {
 public:
  /// Derives H from G when not given. The minimum distance is computed
  /// exhaustively for k ≤ 16; a supplied distance must agree with it.
  static LinearCode from_generator(Gf2Matrix generator, std::optional<Gf2Matrix> parity_check = std::nullopt,
                                   std::optional<std::size_t> distance = std::nullopt);

  std::size_t n() const { return generator_.rows(); }
  std::size_t k() const { return generator_.cols(); }
  const Gf2Matrix& generator() const { return generator_; }
  const Gf2Matrix& parity_check() const { return parity_check_; }
  std::optional<std::size_t> distance() const { return distance_; }
  /// ⌊(d − 1)/2⌋; zero when the distance is unknown.
  std::size_t correctable() const;

  BitString encode(const BitString& message) const;
  BitString syndrome(const BitString& received) const;
  bool contains(const BitString& word) const;
  /// Message m with G·m = word; requires word ∈ C.
  BitString message_of(const BitString& word) const;
  /// All 2^k codewords in message order (k ≤ 20).
  std::vector<BitString> codewords() const;

  /// Nearest codeword within radius t via the syndrome table; nullopt when the
  /// syndrome has no coset leader of weight ≤ t. Throws when 2t + 1 > d.
  std::optional<DecodeResult> decode(const BitString& received, std::size_t t) const;
  /// Lowest-weight error pattern of weight ≤ t with the given syndrome.
  std::optional<BitString> coset_leader(const BitString& syndrome, std::size_t t) const;

 private:
  LinearCode(Gf2Matrix g, Gf2Matrix h, std::optional<std::size_t> d);

  Gf2Matrix generator_;
  Gf2Matrix parity_check_;
  std::optional<std::size_t> distance_;
  // syndrome → lowest-weight, lowest-index error pattern of weight ≤ correctable()
  std::map<BitString, BitString> syndrome_table_;
};

/// Generator H^T, parity check G^T.
LinearCode dual_code(const LinearCode& c);
/// True iff every generator column of `inner` is a codeword of `outer`.
bool is_subcode(const LinearCode& inner, const LinearCode& outer);
bool is_weakly_self_dual(const LinearCode& c);
bool same_code(const LinearCode& a, const LinearCode& b);

struct CodeBounds {
  std::size_t n, k, d, t;
  double rate;
  bool singleton_ok;     // n − k ≥ d − 1
  double gv_rate;        // 1 − H_bin(t/n)
  bool gv_applicable;    // t ≥ 1
  bool gv_ok;            // rate ≥ gv_rate (when applicable)
};

/// Throws DomainError when the distance is unknown.
CodeBounds code_bounds(const LinearCode& c);

class CssCode {
 public:
  const LinearCode& c1() const { return c1_; }
  const LinearCode& c2() const { return c2_; }
  const LinearCode& c2_dual() const { return c2_dual_; }
  const BitString& u() const { return u_; }
  const BitString& v() const { return v_; }
  std::size_t n() const { return c1_.n(); }
  std::size_t logical_bits() const { return c1_.k() - c2_.k(); }
  /// 2^{k₁ − k₂}.
  std::uint64_t logical_dimension() const { return std::uint64_t{1} << logical_bits(); }
  std::size_t correctable() const { return t_; }

 private:
  friend CssCode css_construct(const LinearCode&, const LinearCode&, std::optional<BitString>,
                               std::optional<BitString>, std::size_t);
  CssCode(LinearCode c1, LinearCode c2, LinearCode c2_dual, BitString u, BitString v, std::size_t t);

  LinearCode c1_, c2_, c2_dual_;
  BitString u_, v_;
  std::size_t t_;
};

/// Requires C₂ ⊆ C₁ and that both C₁ and C₂⊥ correct t errors.
CssCode css_construct(const LinearCode& c1, const LinearCode& c2, std::optional<BitString> u = std::nullopt,
                      std::optional<BitString> v = std::nullopt, std::size_t t = 1);

struct CssBounds {
  std::size_t n, k, d;
  bool quantum_singleton_ok;  // n − k ≥ 2(d − 1)
  double quantum_gv_rate;     // 1 − 2·H_bin(2t/n), reported only
};

CssBounds css_bounds(const CssCode& code);

/// Canonical label of the coset x + C₂ in C₁: solve x = G₁·m, reduce m modulo
/// the message image of C₂, keep the k₁ − k₂ non-pivot coordinates.
BitString coset_label(const CssCode& code, const BitString& x);

/// Amplitudes of |x + C₂⟩ = |C₂|^{-½} Σ_{y∈C₂} (−1)^{u·y} |x + y + v⟩, length 2ⁿ (n ≤ 16).
ComplexVector css_basis_state(const CssCode& code, const BitString& x);

struct CssCorrectionResult {
  std::optional<BitString> recovered_coset;  // label of the recovered coset
  bool success;
  BitString detected_bit_flips;
  BitString detected_phase_flips;
  /// Whether the state after the Hadamard layer matched
  /// √(|C₂|/2ⁿ) Σ_{z∈C₂⊥} (−1)^{x·z} |z + e₂⟩ within tol::recon.
  bool hadamard_form_matches;
};

/// Dense statevector run of the CSS correction procedure for bit flips e₁ and
/// phase flips e₂ on |x + C₂⟩ (n ≤ 10, u = v = 0).
CssCorrectionResult simulate_css_correction(const CssCode& code, const BitString& x, const BitString& e1,
                                            const BitString& e2);

/// In-place Walsh–Hadamard transform H^{⊗n} on a 2ⁿ amplitude vector.
void hadamard_transform(ComplexVector& amplitudes);

namespace fixtures {
LinearCode repetition3();  // [3,1,3]
LinearCode parity3();      // [3,2,2]
/// [7,4,3] with parity bits at positions 1, 2, 4 (1-based); column i of H is
/// the binary expansion of i + 1, least significant bit in row 0.
LinearCode hamming74();
LinearCode simplex73();    // dual of hamming74, [7,3,4]
/// CSS(hamming74, simplex73): the [7,1] Steane code.
CssCode steane();
}  // namespace fixtures

/// Text format: "n k", then k generator columns as n-character 0/1 strings,
/// then optionally a line "H" followed by n − k parity-check rows.
LinearCode read_code(std::istream& in);
void write_code(std::ostream& out, const LinearCode& c);

}  // namespace qit
