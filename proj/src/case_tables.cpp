#include "padicdyn/case_tables.hpp"

#include <cctype>
#include <sstream>

#include "case_tables_data.hpp"

namespace padicdyn {

BigInt LinearForm::eval(const std::map<std::string, BigInt>& vars) const {
  BigInt acc = constant;
  for (const auto& [name, k] : coef) {
    auto it = vars.find(name);
    if (it == vars.end()) throw DomainError("linear form: unbound variable " + name);
    acc += k * it->second;
  }
  return acc;
}

LinearForm operator+(LinearForm a, const LinearForm& b) {
  for (const auto& [name, k] : b.coef) a.coef[name] += k;
  a.constant += b.constant;
  return a;
}

LinearForm operator*(const BigInt& k, LinearForm a) {
  for (auto& [name, c] : a.coef) c *= k;
  a.constant *= k;
  return a;
}

namespace {

class FormParser {
 public:
  explicit FormParser(std::string_view s) : s_(s) {}

  LinearForm parse_all() {
    LinearForm f = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  LinearForm expr() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    LinearForm acc = term();
    if (neg) acc = BigInt(-1) * acc;
    for (;;) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return acc;
      bool minus = s_[pos_++] == '-';
      LinearForm t = term();
      acc = acc + (minus ? BigInt(-1) * t : t);
    }
  }

  LinearForm term() {
    LinearForm acc = factor();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') return acc;
      std::size_t at = pos_++;
      LinearForm rhs = factor();
      if (acc.coef.empty()) {
        acc = acc.constant * rhs;
      } else if (rhs.coef.empty()) {
        acc = rhs.constant * acc;
      } else {
        throw ParseError("product of two non-constant forms", at);
      }
    }
  }

  LinearForm factor() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of form", pos_);
    char c = s_[pos_];
    LinearForm f;
    if (c == '(') {
      ++pos_;
      f = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      f.constant = BigInt(std::string(s_.substr(start, pos_ - start)));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      f.coef[std::string(s_.substr(start, pos_ - start))] = 1;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }
    return f;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) { return reduce_u64(v, m); }

}  // namespace

LinearForm parse_linear_form(std::string_view text) { return FormParser(text).parse_all(); }

std::map<std::string, BigInt> CaseTable::bind(const std::map<std::string, BigInt>& inputs) const {
  auto vars = inputs;
  for (const auto& [name, form] : lets) vars[name] = form.eval(vars);
  return vars;
}

std::vector<std::uint64_t> CaseTable::selector_of(const std::map<std::string, BigInt>& bound) const {
  std::vector<std::uint64_t> sel;
  for (const auto& f : selector) sel.push_back(mod_u64(f.eval(bound), selector_modulus));
  return sel;
}

CriterionVerdict CaseTable::evaluate(const std::map<std::string, BigInt>& inputs, const std::string& criterion) const {
  auto vars = bind(inputs);
  auto sel = selector_of(vars);
  std::string sel_text;
  for (std::size_t i = 0; i < sel.size(); ++i) sel_text += (i ? "," : "") + std::to_string(sel[i]);
  for (const auto& row : rows) {
    if (row.selector != sel) continue;
    for (std::size_t i = 0; i < row.conditions.size(); ++i) {
      const auto& c = row.conditions[i];
      std::uint64_t lhs = mod_u64(c.lhs.eval(vars), modulus);
      std::uint64_t rhs = mod_u64(c.rhs.eval(vars), modulus);
      if (lhs == rhs) {
        return CriterionVerdict::failed(criterion, "case " + row.label + " condition " + std::to_string(i + 1),
                                        {{"selector", sel_text},
                                         {"case", row.label},
                                         {"condition", c.text},
                                         {"lhs", dec(lhs)},
                                         {"rhs", dec(rhs)},
                                         {"modulus", dec(modulus)}});
      }
    }
    auto v = CriterionVerdict::passed(criterion);
    v.condition = "case " + row.label;
    v.witness = {{"selector", sel_text}, {"case", row.label}};
    return v;
  }
  return CriterionVerdict::failed(criterion, "no matching case", {{"selector", sel_text}});
}

std::vector<CaseTable> parse_case_tables(std::string_view text) {
  std::vector<CaseTable> tables;
  CaseTable* cur = nullptr;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError { return ParseError("case tables line " + std::to_string(lineno) + ": " + msg, 0); };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t sp = t.find(' ');
    std::string key = t.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(std::string_view(t).substr(sp + 1));
    try {
      if (key == "table") {
        if (cur) throw fail("nested table");
        tables.push_back(CaseTable{});
        cur = &tables.back();
        cur->name = rest;
        continue;
      }
      if (!cur) throw fail("directive outside a table");
      if (key == "end") {
        if (cur->modulus == 0 || cur->selector_modulus == 0) throw fail("table without moduli");
        cur = nullptr;
      } else if (key == "modulus") {
        cur->modulus = std::stoull(rest);
      } else if (key == "selector_modulus") {
        cur->selector_modulus = std::stoull(rest);
      } else if (key == "let") {
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw fail("let without '='");
        cur->lets.emplace_back(trim(std::string_view(rest).substr(0, eq)),
                               parse_linear_form(std::string_view(rest).substr(eq + 1)));
      } else if (key == "selector") {
        for (const auto& part : split(rest, ',')) cur->selector.push_back(parse_linear_form(part));
      } else if (key == "case") {
        CaseRow row;
        auto lb = rest.find('['), rb = rest.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb) throw fail("case without selector");
        row.label = trim(std::string_view(rest).substr(0, lb));
        for (const auto& v : split(std::string_view(rest).substr(lb + 1, rb - lb - 1), ',')) {
          row.selector.push_back(std::stoull(v));
        }
        if (row.selector.size() != cur->selector.size()) throw fail("selector length mismatch");
        for (const auto& cond : split(std::string_view(rest).substr(rb + 1), ';')) {
          auto ne = cond.find("!=");
          if (ne == std::string::npos) throw fail("condition without '!='");
          row.conditions.push_back(CaseCondition{cond, parse_linear_form(std::string_view(cond).substr(0, ne)),
                                                 parse_linear_form(std::string_view(cond).substr(ne + 2))});
        }
        cur->rows.push_back(std::move(row));
      } else {
        throw fail("unknown directive '" + key + "'");
      }
    } catch (const ParseError& e) {
      if (std::string(e.what()).rfind("case tables line", 0) == 0) throw;
      throw fail(e.what());
    } catch (const std::logic_error&) {
      throw fail("bad number");
    }
  }
  if (cur) throw ParseError("case tables: unterminated table " + cur->name, 0);
  return tables;
}

std::string_view embedded_case_table_text() { return kEmbeddedCaseTables; }

const CaseTable& case_table(std::string_view name) {
  static const std::vector<CaseTable> tables = parse_case_tables(embedded_case_table_text());
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw DomainError("no embedded case table named " + std::string(name));
}

}  // namespace padicdyn
