#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padicdyn/arith.hpp"

namespace padicdyn {

// Outcome of one criterion. On failure `condition` names the first violated
// sub-condition and `witness` holds the concrete indices and values that
// violate it, all rendered as decimal strings.
struct CriterionVerdict {
  std::string criterion;
  bool pass = true;
  // Depth (exponent of p) up to which a pass is certified, when finite-depth.
  std::optional<unsigned> depth;
  std::string condition;
  std::vector<std::pair<std::string, std::string>> witness;

  static CriterionVerdict passed(std::string name, std::optional<unsigned> depth = std::nullopt) {
    return CriterionVerdict{std::move(name), true, depth, {}, {}};
  }
  static CriterionVerdict failed(std::string name, std::string condition,
                                 std::vector<std::pair<std::string, std::string>> witness = {},
                                 std::optional<unsigned> depth = std::nullopt) {
    return CriterionVerdict{std::move(name), false, depth, std::move(condition), std::move(witness)};
  }

  // Looks up a witness field; empty string when absent.
  std::string field(const std::string& key) const {
    for (const auto& [k, v] : witness) {
      if (k == key) return v;
    }
    return {};
  }
};

template <typename T>
std::string dec(const T& v) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return v.str();
  } else {
    return std::to_string(v);
  }
}

// A criterion was asked about an input outside its hypotheses (for example a
// measure-preservation test for UD_1 functions given a non-UD_1 function).
class PreconditionError : public DomainError {
 public:
  PreconditionError(const std::string& what, CriterionVerdict verdict)
      : DomainError(what), verdict_(std::move(verdict)) {}
  const CriterionVerdict& verdict() const { return verdict_; }

 private:
  CriterionVerdict verdict_;
};

}  // namespace padicdyn
