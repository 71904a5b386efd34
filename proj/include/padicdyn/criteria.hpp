#pragma once

// Prime-specific closed-form ergodicity criteria and the p >= 5 generator.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "padicdyn/arith.hpp"
#include "padicdyn/funcspace.hpp"
#include "padicdyn/verdict.hpp"

namespace padicdyn {

// ---------------------------------------------------------------------------
// p = 2

struct CubicCoeffs {
  BigInt A, B, C, D;  // A x^3 + B x^2 + C x + D
};

// A = 0 (4), B = 0 (2), B + C = 1 (4), D = 1 (2).
CriterionVerdict larin_transitive_mod8(const CubicCoeffs& c);

// a_0 = 1 (2), a_1 = 1 (4), a_2 = 0 (4), a_3 = 0 (8). Needs a_0..a_3.
CriterionVerdict mahler_ergodic_p2(std::span<const BigInt> a);

// Normalized van der Put b_0..b_3: b_0 = 1 (2), b_0 + b_1 = 3 (4),
// b_2 = 1 (2), b_2 + b_3 = 2 (4).
CriterionVerdict vdp_ergodic_p2(std::span<const BigInt> b);

// ---------------------------------------------------------------------------
// p = 3

struct Deg8Stats {
  std::array<std::uint64_t, 9> alpha{};  // mod 9
  std::uint64_t A1 = 0, A2 = 0, D1 = 0, D2 = 0;  // mod 3
  std::array<std::uint64_t, 6> selector{};       // [a0, A1, A2, a1, D1, D2] mod 3
};

Deg8Stats deg8_stats(std::span<const BigInt> alpha);

// Minimality of alpha_0 + ... + alpha_8 x^8 from the embedded case table.
CriterionVerdict deg8_minimal_p3(std::span<const BigInt> alpha);
// c_m = a_m / 3^floor(log_3 m) mod 9 for m = 0..8.
CriterionVerdict mahler_ergodic_p3(std::span<const BigInt> c);
// b_m = B_m / 3^floor(log_3 m) mod 9 for m = 0..8.
CriterionVerdict vdp_ergodic_p3(std::span<const BigInt> b);

// Normalized coefficients 0..count-1 modulo p^j (exactness checked).
std::vector<BigInt> normalized_terms(const CoefficientSeries& s, std::size_t count, unsigned j);

// ---------------------------------------------------------------------------
// p >= 5

// Turns a cycle "x_0 -> x_1 -> ... -> x_{p-1} -> x_0" into the map table
// phi[x]. Throws DomainError unless the cycle visits every residue once.
std::vector<std::uint64_t> phi_from_cycle(std::span<const std::uint64_t> cycle, std::uint64_t p);

struct P5Instance {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> phi;   // phi[x], a single p-cycle
  std::vector<std::uint64_t> bvec;  // b_p .. b_{2p-1}
  std::vector<std::uint64_t> c;     // c_0 .. c_{2p-1} mod p (Steps 1-2)
  std::vector<std::uint64_t> lift;  // z_0 .. z_{2p-1} mod p (Step 3)
};

struct P5Result {
  P5Instance instance;
  // Exact finite Mahler series: a_m = c_m + p z_m for m < p and
  // a_{m+p} = p (c_{m+p} + p z_{m+p}); stored modulo p^3 (all entries fit).
  CoefficientSeries mahler;
  // Bundle of (i) transitive mod p, (ii) prod b_{i+p} = 1 mod p and
  // (iii) f^p(0) in pZ_p \ p^2 Z_p.
  CriterionVerdict verdict;
  std::uint64_t orbit_value = 0;  // f^p(0) mod p^2
};

// Steps 1-3. Invalid phi, bvec or lift raise DomainError.
P5Result p5_generate(std::uint64_t p, std::span<const std::uint64_t> phi, std::span<const std::uint64_t> bvec,
                     std::span<const std::uint64_t> lift);

// The generated function padded with zero Mahler coefficients up to p^depth
// terms (depth <= 3).
PadicFunction p5_function(const P5Result& r, unsigned depth);

// The 2p x 2p matrix tying alpha_0..alpha_{2p-1} to B_0..B_{p-1} (reduction
// with x^p = x) and D_i = g'(i).
FpMatrix mainp5_matrix(std::uint64_t p);

struct Mainp5Solution {
  FpMatrix matrix;
  std::vector<std::uint64_t> rhs;  // [B_0..B_{p-1}, D_0..D_{p-1}]
  std::vector<std::uint64_t> e;    // coefficients of g_0, low degree first
};

// Solves M e = b mod p and verifies the residual, the reduced form
// g(x) = sum B_j x^j and g'(i) = D_i pointwise. Singular systems and failed
// verifications raise InvariantError.
Mainp5Solution mainp5_system(std::uint64_t p, std::span<const std::uint64_t> bigB, std::span<const std::uint64_t> bigD);

// l(z) = constant + sum_k coef[k] z_k for g = g0 + p g1, g1 = sum z_k x^k.
struct AffineFormModP {
  std::uint64_t modulus = 0;
  std::uint64_t constant = 0;
  std::vector<std::uint64_t> coef;
  std::uint64_t operator()(std::span<const std::uint64_t> z) const;
};

// Requires g0 transitive mod p, prod_j g0'(g0^j(0)) = 1 mod p.
AffineFormModP mainp5_linear_form_coefficients(std::uint64_t p, std::span<const std::uint64_t> g0);
std::uint64_t mainp5_linear_form(std::uint64_t p, std::span<const std::uint64_t> g0, std::span<const std::uint64_t> z);

// g^p(0) mod p^2 for g = sum coeffs[i] x^i, by direct iteration.
std::uint64_t orbit_after_p_steps(std::uint64_t p, std::span<const BigInt> coeffs);

}  // namespace padicdyn
