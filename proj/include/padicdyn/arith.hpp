#pragma once

// Exact integer and modular arithmetic shared by every other module.
//
// Integers are boost::multiprecision::cpp_int. Residues carry their prime and
// exponent so that mixing moduli is caught at the call site instead of
// producing silently wrong congruences.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace padicdyn {

using BigInt = boost::multiprecision::cpp_int;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an internal cross-check between two independent routes fails.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed text input; position is the 0-based offset of the offending
// character.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline constexpr unsigned kDefaultMaxDepth = 12;

// ---------------------------------------------------------------------------
// Word-size helpers.

bool is_prime(std::uint64_t n);
void require_prime(std::uint64_t p);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m);
// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
// Reduce a signed exact integer into [0, m).
std::uint64_t reduce_u64(const BigInt& x, std::uint64_t m);

// p^k as a machine word. Throws DomainError if it does not fit below 2^62.
std::uint64_t pow_u64(std::uint64_t p, unsigned k);
BigInt pow_big(std::uint64_t p, unsigned k);

// floor(log_p m) for m >= 1, and 0 for m == 0. This is the exponent used by
// the normalized coefficients b_m = B_m / p^e and c_n = a_n / p^e.
unsigned floor_log(const BigInt& m, std::uint64_t p);
unsigned floor_log(std::uint64_t m, std::uint64_t p);

// ---------------------------------------------------------------------------
// Valuations.

class Valuation {
 public:
  static constexpr Valuation infinity() { return Valuation{}; }
  constexpr explicit Valuation(std::uint64_t exponent) : finite_(true), exponent_(exponent) {}

  constexpr bool is_infinite() const { return !finite_; }
  // Throws std::logic_error for the infinite valuation.
  std::uint64_t exponent() const;
  constexpr bool at_least(std::uint64_t e) const { return !finite_ || exponent_ >= e; }
  std::string to_string() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.finite_) return std::strong_ordering::equal;
    return a.exponent_ <=> b.exponent_;
  }

 private:
  constexpr Valuation() = default;
  bool finite_ = false;
  std::uint64_t exponent_ = 0;
};

// v_p(n); sign of n is ignored. v_p(0) is Valuation::infinity().
Valuation valuation(const BigInt& n, std::uint64_t p);

// ---------------------------------------------------------------------------
// Binomials and digit tools.

// Exact C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

// Base-p digits, least significant first. Zero has no digits.
std::vector<std::uint64_t> p_digits(const BigInt& m, std::uint64_t p);
std::uint64_t digit_sum(const BigInt& m, std::uint64_t p);

// m with its leading base-p digit removed. Requires m >= p.
BigInt m_minus(const BigInt& m, std::uint64_t p);
std::uint64_t m_minus(std::uint64_t m, std::uint64_t p);

class Residue;

// C(n, k) mod p from the digit-wise products of Lucas' theorem.
Residue lucas_binomial_mod_p(const BigInt& n, const BigInt& k, std::uint64_t p);

// v_p(C(l p^s, j)) through Legendre's digit-sum formula
//   (S_p(j) + S_p(l p^s - j) - S_p(l p^s)) / (p - 1).
// Requires 1 <= l <= p-1, s >= 1 and 1 <= j < l p^s.
std::uint64_t legendre_binomial_valuation(std::uint64_t l, unsigned s, std::uint64_t j, std::uint64_t p);

// H_m = sum_{j=1}^{m} 1/j as a residue mod p^k. Requires m < p.
Residue harmonic_mod(std::uint64_t m, std::uint64_t p, unsigned k = 1);

// ---------------------------------------------------------------------------
// Residues mod p^k.

class Residue {
 public:
  Residue(BigInt value, std::uint64_t p, unsigned k);

  const BigInt& value() const { return value_; }
  std::uint64_t prime() const { return p_; }
  unsigned exponent() const { return k_; }
  const BigInt& modulus() const { return modulus_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_unit() const;

  Residue inverse() const;
  Residue pow(std::uint64_t e) const;
  // Image in Z/p^j for j <= exponent().
  Residue reduced(unsigned j) const;
  std::string to_string() const;

  Residue operator-() const;
  Residue& operator+=(const Residue& o);
  Residue& operator-=(const Residue& o);
  Residue& operator*=(const Residue& o);
  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend bool operator==(const Residue& a, const Residue& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.value_ == b.value_;
  }

 private:
  void check_compatible(const Residue& o) const;

  BigInt value_;
  std::uint64_t p_;
  unsigned k_;
  BigInt modulus_;
};

// ---------------------------------------------------------------------------
// Dense linear algebra over F_p.

class FpMatrix {
 public:
  FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);
  FpMatrix(std::uint64_t p, const std::vector<std::vector<std::int64_t>>& rows);

  std::uint64_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  std::vector<std::uint64_t> apply(std::span<const std::uint64_t> x) const;
  std::size_t rank() const;

 private:
  std::uint64_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> entries_;
};

struct FpSolution {
  enum class Kind { unique, inconsistent, underdetermined };
  Kind kind;
  std::size_t rank = 0;
  // For unique: the solution. For underdetermined: one particular solution
  // with every free variable set to zero. Empty when inconsistent.
  std::vector<std::uint64_t> x;
};

// Gaussian elimination mod p. Throws DomainError when b.size() != M.rows().
FpSolution solve_fp(const FpMatrix& m, std::span<const std::uint64_t> b);

}  // namespace padicdyn
