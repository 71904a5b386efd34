#pragma once

// Brute-force dynamics on Z/p^n and the prime-independent measure-preservation
// and ergodicity criteria for UD_1 functions.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "padicdyn/analysis.hpp"
#include "padicdyn/funcspace.hpp"
#include "padicdyn/verdict.hpp"

namespace padicdyn {

struct CycleReport {
  std::uint64_t p = 0;
  unsigned n = 0;
  bool bijective = false;
  bool transitive = false;
  // Cycle decomposition when bijective; each cycle starts at its smallest
  // element, so a transitive map yields the single orbit of 0 in order.
  std::vector<std::vector<std::uint64_t>> cycles;
  // Two inputs with the same image when not bijective.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;
};

CycleReport cycle_report(std::span<const std::uint64_t> table, std::uint64_t p, unsigned n);
// True iff the orbit of 0 under the table has length table.size().
bool is_transitive_table(std::span<const std::uint64_t> table);

CycleReport bijective_mod(const PadicFunction& f, unsigned n);
CycleReport transitive_mod(const PadicFunction& f, unsigned n);

// Normalized-coefficient test for measure preservation: b_0..b_{p-1} complete
// mod p, and {b_{k + l p^s}}_{1 <= l < p} distinct nonzero mod p for every
// 1 <= s < depth, k < p^s. Throws PreconditionError when some b_m is not
// integral (f not 1-Lipschitz).
CriterionVerdict measure_preserving_vdp(const CoefficientSeries& series, unsigned depth);

// p = 2: b_0 + b_1, b_2, b_3 odd; cross-checked against a_1 odd, a_2 = a_3 = 0 (4). Without the
// bundled check a non-UD_1 input raises PreconditionError; with it the UD_1
// failure is reported as the verdict.
CriterionVerdict measure_preserving_ud_p2(const PadicFunction& f, bool bundle_ud1 = false);

// lambda_n^i = (C(i+p, n) - C(i, n)) / p.
BigInt lambda_coefficient(std::uint64_t n, std::uint64_t i, std::uint64_t p);

// Odd p: f(0..p-1) complete mod p and, for each i < p,
//   sum_{n<p} lambda_n^i c_n + sum_{n<=i} C(i,n) c_{n+p} != 0 mod p,
// cross-checked against b_{i+p} mod p.
CriterionVerdict measure_preserving_ud_odd(const PadicFunction& f);

struct McriReport {
  CriterionVerdict transitive_mod_p;     // (1)
  CriterionVerdict measure_preserving;   // (2)
  CriterionVerdict orbit;                // (3), 1 <= s < depth
  CriterionVerdict product;              // (4), every s plus the depth-free form
  // (prod_{j < p^s} B_{j+p^s} / p^s) mod p for s = 1, 2, ...
  std::vector<std::uint64_t> product_per_s;
  std::uint64_t product_reduced = 0;  // prod_{j<p} b_{j+p} mod p
  // (1) and (4) hold only together with (2).
  bool redundancy_held = true;
};

McriReport mcri_conditions(const PadicFunction& f, std::optional<unsigned> depth = std::nullopt);

unsigned mu_for_prime(std::uint64_t p);

struct ErgodicityDecision {
  enum class Method { oracle, mainR, closed_form };
  bool ergodic = false;
  Method method = Method::mainR;
  unsigned mu = 0;
  std::optional<CycleReport> cycles;
  std::vector<CriterionVerdict> verdicts;
};

const char* to_string(ErgodicityDecision::Method m);

struct ErgodicOptions {
  // Test-only: replaces mu(p). Exists to reproduce the counterexample that
  // shows mu = 2 is not enough for p = 3.
  std::optional<unsigned> unsafe_mu_override;
};

// Decides ergodicity from transitivity modulo p^mu. Requires depth >= mu and
// a passing ud1_check; otherwise PreconditionError.
ErgodicityDecision ergodic_ud(const PadicFunction& f, const ErgodicOptions& options = {});

// Transitivity at every level 1..n (n <= depth).
ErgodicityDecision ergodic_oracle(const PadicFunction& f, unsigned n);

}  // namespace padicdyn
