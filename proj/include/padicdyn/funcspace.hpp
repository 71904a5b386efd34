#pragma once

// Finite-depth functions Z_p -> Z_p and their Mahler / van der Put expansions.
//
// A PadicFunction at depth N is only claimed to be meaningful modulo p^N.
// Points of Z_p are represented by their canonical natural representatives.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "padicdyn/arith.hpp"
#include "padicdyn/verdict.hpp"

namespace padicdyn {

// Depth cap: PADIC_DYN_MAX_DEPTH when set, kDefaultMaxDepth otherwise.
unsigned max_depth();

enum class SeriesKind { mahler, van_der_put };

const char* to_string(SeriesKind kind);

// Truncated coefficient vector. Index n holds a_n (Mahler) or B_n (van der
// Put) reduced mod p^k.
class CoefficientSeries {
 public:
  CoefficientSeries(SeriesKind kind, std::uint64_t p, unsigned k, std::vector<BigInt> terms);

  SeriesKind kind() const { return kind_; }
  std::uint64_t prime() const { return p_; }
  unsigned exponent() const { return k_; }
  std::size_t size() const { return terms_.size(); }
  const BigInt& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<BigInt>& terms() const { return terms_; }
  BigInt modulus() const { return pow_big(p_, k_); }

  // Normalized coefficient term_i / p^{floor_log(i)} (b_m or c_n), known
  // modulo p^{k - floor_log(i)}. nullopt when the division is not exact.
  std::optional<BigInt> normalized(std::size_t i) const;
  // Normalized coefficient reduced mod p^j; throws DomainError if the
  // division is inexact or the series does not determine it mod p^j.
  std::uint64_t normalized_mod(std::size_t i, unsigned j) const;

 private:
  SeriesKind kind_;
  std::uint64_t p_;
  unsigned k_;
  std::vector<BigInt> terms_;
};

struct IntPolynomial {
  // coefficients[i] multiplies x^i.
  std::vector<BigInt> coefficients;
};

struct ValueTable {
  // values[x] = f(x) mod p^N for 0 <= x < p^N.
  std::vector<std::uint64_t> values;
};

class PadicFunction {
 public:
  enum class Form { polynomial, table, mahler, van_der_put };

  static PadicFunction polynomial(std::uint64_t p, unsigned depth, std::vector<BigInt> coefficients);
  static PadicFunction table(std::uint64_t p, unsigned depth, std::vector<std::uint64_t> values);
  // Mahler or van der Put form according to series.kind(). Requires
  // depth <= series exponent and at least p^depth terms.
  static PadicFunction from_series(CoefficientSeries series, unsigned depth);

  std::uint64_t prime() const { return p_; }
  unsigned depth() const { return depth_; }
  std::uint64_t modulus() const { return modulus_; }
  Form form() const;

  const IntPolynomial* polynomial_data() const { return std::get_if<IntPolynomial>(&data_); }
  const ValueTable* table_data() const { return std::get_if<ValueTable>(&data_); }
  const CoefficientSeries* series_data() const { return std::get_if<CoefficientSeries>(&data_); }

  // Same function at a smaller depth (tables are reduced accordingly).
  PadicFunction at_depth(unsigned depth) const;

 private:
  PadicFunction(std::uint64_t p, unsigned depth, std::variant<IntPolynomial, ValueTable, CoefficientSeries> data);

  std::uint64_t p_;
  unsigned depth_;
  std::uint64_t modulus_;
  std::variant<IntPolynomial, ValueTable, CoefficientSeries> data_;
};

const char* to_string(PadicFunction::Form form);

// f(x) mod p^k. Requires k <= depth.
Residue evaluate(const PadicFunction& f, const BigInt& x, unsigned k);
std::uint64_t evaluate_u64(const PadicFunction& f, std::uint64_t x, unsigned k);

// f(0), ..., f(count-1) mod p^k without any well-definedness check.
std::vector<std::uint64_t> values_mod(const PadicFunction& f, std::uint64_t count, unsigned k);

// Thrown by reduce() when x = y mod p^n but f(x) != f(y) mod p^n.
class NotLipschitzError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Map table of f_{/n} on Z/p^n. With check = true the table form is verified
// against (L1) at level n and series forms against the valuation bounds.
std::vector<std::uint64_t> reduce(const PadicFunction& f, unsigned n, bool check = true);

// B_0..B_{count-1} mod p^k, from f(m) - f(m_-) (m >= p) and f(m) (m < p).
CoefficientSeries vdp_coefficients(const PadicFunction& f, std::uint64_t count, unsigned k);
// a_0..a_{count-1} mod p^k, a_n = sum_i (-1)^{n-i} C(n,i) f(i), evaluated as
// the iterated forward difference Delta^n f(0).
CoefficientSeries mahler_coefficients(const PadicFunction& f, std::uint64_t count, unsigned k);

// Mahler coefficient a_n(m) of the van der Put basis function chi(m, .).
BigInt basis_change_anm(std::uint64_t n, std::uint64_t m, std::uint64_t p);
// van der Put coefficient A_m(n) of the binomial polynomial C(x, n).
BigInt basis_change_Amn(std::uint64_t m, std::uint64_t n, std::uint64_t p);

// Triangular basis changes; the first up_to terms of the result depend only on
// the first up_to input terms. Throws DomainError when the input is too short.
CoefficientSeries vdp_to_mahler(const CoefficientSeries& vdp, std::size_t up_to);
CoefficientSeries mahler_to_vdp(const CoefficientSeries& mahler, std::size_t up_to);

// Integer polynomial equal to the finite Mahler sum sum_n a_n C(x, n), with
// coefficients modulo p^{k - v_p((size-1)!)}. Throws DomainError when that
// exponent is not positive or a coefficient is not p-integral.
struct ModPolynomial {
  std::vector<BigInt> coefficients;  // low degree first, reduced
  unsigned exponent = 0;
};
ModPolynomial polynomial_from_mahler(const CoefficientSeries& mahler);

// chi(m, x): 1 iff x = m mod p^{floor_log(m)+1}; m < p tests x = m mod p.
bool van_der_put_chi(std::uint64_t m, std::uint64_t x, std::uint64_t p);

// v_p(term_m) >= floor(log_p m) for every stored term (truncated at p^k).
CriterionVerdict lipschitz_check(const CoefficientSeries& series);
// Polynomials pass outright; series use the valuation bounds; tables are
// checked directly against (L1) at every level n <= N.
CriterionVerdict lipschitz_check(const PadicFunction& f);

}  // namespace padicdyn
