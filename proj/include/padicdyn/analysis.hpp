#pragma once

// Uniform differentiability modulo p (UD_1 with N_1(f) = 1) at finite depth.

#include <cstdint>
#include <optional>
#include <vector>

#include "padicdyn/funcspace.hpp"
#include "padicdyn/verdict.hpp"

namespace padicdyn {

// The derivative-mod-p table: values[r] = d_1 f(r) for 0 <= r < p.
struct DerivedFunction {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> values;

  std::uint64_t at(std::uint64_t x) const { return values[x % p]; }
};

struct Ud1Result {
  CriterionVerdict verdict;
  std::optional<DerivedFunction> derived;  // set on pass
};

// Checks f(u + p^s h) = f(u) + p^s h d_1f(u) mod p^{s+1} for u < p^{s_max},
// 1 <= s <= s_max - 1 and 1 <= h <= p - 1, where d_1f(r) is read from the
// s = 1, h = 1 difference. Only the table f_{/s_max} is consulted, so
// 2 <= s_max <= depth; the default is s_max = depth.
// Throws NotLipschitzError when f_{/s_max} is ill defined.
Ud1Result ud1_check(const PadicFunction& f, std::optional<unsigned> s_max = std::nullopt);

// B_{r + l p^s} = l p^s d(r mod p) mod p^{s+1} for 1 <= s < depth, r < p^s,
// 1 <= l < p, with d(r) = B_{r+p}/p mod p. Failing l >= 2 reports the
// proportionality relation, failing l = 1 the cross-level relation.
CriterionVerdict vdp_ud1_relations_check(const CoefficientSeries& series, unsigned depth);

// Mahler divisibilities: n with leading digit d at position s needs
// a_n = 0 mod p^{s+1} when (d >= 2, s >= 1) or (d = 1, s >= 2) for odd p, and
// when s >= 2 for p = 2. Congruences beyond the series modulus are truncated
// to p^k.
CriterionVerdict mahler_ud1_predicate(const CoefficientSeries& series);

struct Ud1Crosscheck {
  CriterionVerdict direct;     // ud1_check at depth
  CriterionVerdict predicate;  // mahler_ud1_predicate on n < p^depth mod p^depth
  bool agree() const { return direct.pass == predicate.pass; }
};

Ud1Crosscheck ud1_equivalence_crosscheck(const PadicFunction& f, std::optional<unsigned> depth = std::nullopt);

}  // namespace padicdyn
