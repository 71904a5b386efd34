#pragma once

// Selector-driven case tables (see data/case_tables.txt for the format).

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "padicdyn/arith.hpp"
#include "padicdyn/verdict.hpp"

namespace padicdyn {

// Integer affine form sum coef[v] * v + constant.
struct LinearForm {
  std::map<std::string, BigInt> coef;
  BigInt constant = 0;

  BigInt eval(const std::map<std::string, BigInt>& vars) const;
};

LinearForm operator+(LinearForm a, const LinearForm& b);
LinearForm operator*(const BigInt& k, LinearForm a);

// Grammar: sums and differences of terms; a term is a product of factors of
// which at most one is non-constant; a factor is an integer, a name or a
// parenthesized form.
LinearForm parse_linear_form(std::string_view text);

struct CaseCondition {
  std::string text;
  LinearForm lhs;
  LinearForm rhs;  // the condition is lhs != rhs modulo the table modulus
};

struct CaseRow {
  std::string label;
  std::vector<std::uint64_t> selector;
  std::vector<CaseCondition> conditions;
};

struct CaseTable {
  std::string name;
  std::uint64_t modulus = 0;
  std::uint64_t selector_modulus = 0;
  std::vector<std::pair<std::string, LinearForm>> lets;
  std::vector<LinearForm> selector;
  std::vector<CaseRow> rows;

  // Inputs plus the `let` names, in definition order.
  std::map<std::string, BigInt> bind(const std::map<std::string, BigInt>& inputs) const;
  std::vector<std::uint64_t> selector_of(const std::map<std::string, BigInt>& bound) const;
  // Matches the selector, then checks the case's non-congruences. The
  // verdict names the case in `condition` on failure and in the witness.
  CriterionVerdict evaluate(const std::map<std::string, BigInt>& inputs, const std::string& criterion) const;
};

std::vector<CaseTable> parse_case_tables(std::string_view text);

// Tables shipped with the library (embedded at build time).
std::string_view embedded_case_table_text();
const CaseTable& case_table(std::string_view name);

}  // namespace padicdyn
