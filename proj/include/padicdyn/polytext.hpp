#pragma once

// Integer polynomials written as text: terms `c`, `c*x^k`, `x^k` and `x`
// joined by `+` or `-`, whitespace ignored.

#include <string>
#include <string_view>
#include <vector>

#include "padicdyn/arith.hpp"

namespace padicdyn {

inline constexpr unsigned kMaxPolynomialDegree = 4096;

// Coefficients, low degree first, trailing zeros trimmed (zero is {0}).
std::vector<BigInt> parse_polynomial(std::string_view text);
std::string format_polynomial(const std::vector<BigInt>& coeffs);

}  // namespace padicdyn
