#pragma once

// Exhaustive checkers for the binomial congruences behind the coefficient
// criteria. Each suite walks its whole parameter box and reports every tuple
// where the congruence fails.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicdyn/arith.hpp"

namespace padicdyn {

struct IdentityCounterexample {
  std::vector<std::pair<std::string, std::string>> params;
  std::string lhs, rhs, modulus;
};

struct IdentityReport {
  std::string identity;
  std::uint64_t params_checked = 0;
  std::vector<IdentityCounterexample> counterexamples;
  // Set when more counterexamples were found than are kept.
  bool truncated = false;

  bool ok() const { return counterexamples.empty(); }
};

inline constexpr std::size_t kMaxStoredCounterexamples = 100;

// C(n, k) mod p^2 for n <= limit from tables of the p-free part of n! and its
// inverse, plus v_p(n!).
class BinomialTableModP2 {
 public:
  BinomialTableModP2(std::uint64_t p, std::uint64_t limit);
  std::uint64_t operator()(std::uint64_t n, std::uint64_t k) const {
    if (k > n) return 0;
    if (n >= unit_.size()) throw DomainError("binomial table: n beyond the table limit");
    return value(n, k, m_);
  }
  std::uint64_t prime() const { return p_; }
  std::uint64_t modulus() const { return m_; }
  std::uint64_t limit() const { return unit_.size() - 1; }
  // p-free part of n! mod p^2, its inverse, and v_p(n!).
  std::uint64_t unit(std::uint64_t n) const { return unit_[n]; }
  std::uint64_t inv_unit(std::uint64_t n) const { return inv_unit_[n]; }
  std::uint64_t vfact(std::uint64_t n) const { return vfact_[n]; }

  // Unchecked C(n, k) mod m for k <= n <= limit(); m is p^2 passed in so that
  // callers with a constant modulus get cheap reductions.
  template <typename M>
  std::uint64_t value(std::uint64_t n, std::uint64_t k, M m) const {
    const std::uint64_t v = vfact_[n] - vfact_[k] - vfact_[n - k];
    if (v >= 2) return 0;
    const std::uint64_t r = unit_[n] * inv_unit_[k] % m * inv_unit_[n - k] % m;
    return v == 1 ? r * p_ % m : r;
  }

 private:
  std::uint64_t p_, m_;
  std::vector<std::uint64_t> unit_, inv_unit_, vfact_;
};

// The three double sums A, B, C for (p, r) and their total, exactly.
struct AbcSums {
  BigInt A, B, C;
};
AbcSums abc_sums(std::uint64_t p, std::uint64_t r);
// The double sum P for (p, r), exactly.
BigInt pzero_sum(std::uint64_t p, std::uint64_t r);

// A + B + C = 0 mod p^2 for odd primes p <= p_max and 1 <= r <= p-1.
IdentityReport verify_abc(std::uint64_t p_max, unsigned threads = 0);
// P = 0 mod p^2 for odd primes p <= p_max and 1 < r <= p-1.
IdentityReport verify_pzero(std::uint64_t p_max, unsigned threads = 0);
// v_p(C(l p^s, j)) = s - v_p(j) for p <= p_max, 1 <= s <= s_max,
// 1 <= l <= p-1, 1 <= j < l p^s, through four independent routes.
IdentityReport verify_valpro(std::uint64_t p_max, unsigned s_max, unsigned threads = 0);
// Parts (1)-(3) of the p^2 binomial congruences for p <= p_max,
// 2 <= s <= s_max and all alpha, beta < p^{s-1}.
IdentityReport verify_bipro(std::uint64_t p_max, unsigned s_max, unsigned threads = 0);
// Parts (1)-(5) of the mod 4 congruences for 2 <= s <= s_max.
IdentityReport verify_bip2(unsigned s_max, unsigned threads = 0);

struct IdentityBounds {
  std::optional<std::uint64_t> p_max;  // abc/pzero default 97, bipro/valpro 13
  std::optional<unsigned> s_max;       // bipro/valpro default 4, bip2 default 6
};

// suite is one of abc, pzero, valpro, bipro, bip2 or all.
std::vector<IdentityReport> verify_identity_suite(const std::string& suite, const IdentityBounds& bounds = {},
                                                  unsigned threads = 0);

}  // namespace padicdyn
