#include "padicdyn/polytext.hpp"

#include <cctype>

namespace padicdyn {

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  std::vector<BigInt> parse() {
    std::vector<BigInt> coeffs{0};
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      auto [c, k] = term();
      if (coeffs.size() <= k) coeffs.resize(k + 1, 0);
      coeffs[k] += sign * c;
    }
    while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  BigInt number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", start);
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }

  std::size_t power() {
    if (!at('x')) throw ParseError("expected 'x'", pos_);
    ++pos_;
    if (!at('^')) return 1;
    ++pos_;
    skip();
    std::size_t where = pos_;
    BigInt k = number();
    if (k > kMaxPolynomialDegree) throw ParseError("degree exceeds " + std::to_string(kMaxPolynomialDegree), where);
    return k.convert_to<std::size_t>();
  }

  std::pair<BigInt, std::size_t> term() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("expected a term", pos_);
    if (s_[pos_] == 'x') return {1, power()};
    BigInt c = number();
    if (!at('*')) return {c, 0};
    ++pos_;
    return {c, power()};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<BigInt> parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

std::string format_polynomial(const std::vector<BigInt>& coeffs) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const BigInt& c = coeffs[k];
    if (c == 0) continue;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + "*";
      out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace padicdyn
