#include "padicdyn/serialize.hpp"

namespace padicdyn {

namespace {

BigInt big_of(const Json& j, const char* what) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw DomainError(std::string(what) + ": empty number");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw DomainError(std::string(what) + ": not a decimal integer: " + s);
    }
    return BigInt(s);
  }
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  throw DomainError(std::string(what) + ": expected an integer or decimal string");
}

std::uint64_t u64_of(const Json& j, const char* what) {
  BigInt v = big_of(j, what);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) throw DomainError(std::string(what) + ": out of range");
  return v.convert_to<std::uint64_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw DomainError("'kind' must be a string");
  return k.get<std::string>();
}

}  // namespace

Json to_json(const CoefficientSeries& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) terms.push_back(t.str());
  return Json{{"kind", to_string(s.kind())},
              {"p", dec(s.prime())},
              {"k", dec(s.exponent())},
              {"length", dec(s.size())},
              {"terms", terms}};
}

Json table_to_json(std::uint64_t p, unsigned k, const std::vector<std::uint64_t>& values) {
  Json vals = Json::array();
  for (auto v : values) vals.push_back(dec(v));
  return Json{{"kind", "table"}, {"p", dec(p)}, {"k", dec(k)}, {"length", dec(values.size())}, {"values", vals}};
}

Json to_json(const CriterionVerdict& v) {
  Json w = Json::object();
  for (const auto& [k, val] : v.witness) w[k] = val;
  Json out{{"criterion", v.criterion}, {"pass", v.pass}};
  out["depth"] = v.depth ? Json(dec(*v.depth)) : Json(nullptr);
  out["condition"] = v.condition;
  out["witness"] = w;
  return out;
}

Json to_json(const CycleReport& r) {
  Json cycles = Json::array();
  for (const auto& c : r.cycles) {
    Json cyc = Json::array();
    for (auto x : c) cyc.push_back(dec(x));
    cycles.push_back(cyc);
  }
  Json out{{"p", dec(r.p)}, {"n", dec(r.n)}, {"bijective", r.bijective}, {"transitive", r.transitive},
           {"cycle_count", dec(r.cycles.size())}, {"cycles", cycles}};
  out["collision"] = r.collision ? Json::array({dec(r.collision->first), dec(r.collision->second)}) : Json(nullptr);
  return out;
}

Json to_json(const ErgodicityDecision& d) {
  Json verdicts = Json::array();
  for (const auto& v : d.verdicts) verdicts.push_back(to_json(v));
  Json out{{"ergodic", d.ergodic}, {"method", to_string(d.method)}, {"mu", dec(d.mu)}};
  out["cycles"] = d.cycles ? to_json(*d.cycles) : Json(nullptr);
  out["verdicts"] = verdicts;
  return out;
}

Json to_json(const McriReport& r) {
  Json per_s = Json::array();
  for (auto v : r.product_per_s) per_s.push_back(dec(v));
  return Json{{"transitive_mod_p", to_json(r.transitive_mod_p)},
              {"measure_preserving", to_json(r.measure_preserving)},
              {"orbit", to_json(r.orbit)},
              {"product", to_json(r.product)},
              {"product_per_s", per_s},
              {"product_reduced", dec(r.product_reduced)},
              {"redundancy_held", r.redundancy_held}};
}

Json to_json(const IdentityReport& r) {
  Json bad = Json::array();
  for (const auto& c : r.counterexamples) {
    Json params = Json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    bad.push_back(Json{{"params", params}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"modulus", c.modulus}});
  }
  return Json{{"identity", r.identity},
              {"params_checked", dec(r.params_checked)},
              {"counterexamples", bad},
              {"truncated", r.truncated}};
}

CoefficientSeries series_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  SeriesKind sk;
  if (kind == "mahler") {
    sk = SeriesKind::mahler;
  } else if (kind == "vdp") {
    sk = SeriesKind::van_der_put;
  } else {
    throw DomainError("series kind must be 'mahler' or 'vdp', got '" + kind + "'");
  }
  const std::uint64_t p = u64_of(field(j, "p"), "p");
  require_prime(p);
  const std::uint64_t k = u64_of(field(j, "k"), "k");
  if (k < 1 || k > max_depth()) throw DomainError("series exponent out of range");
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw DomainError("'terms' must be an array");
  std::vector<BigInt> t;
  for (const auto& x : terms) t.push_back(big_of(x, "term"));
  if (j.contains("length") && u64_of(j.at("length"), "length") != t.size()) {
    throw DomainError("'length' does not match the number of terms");
  }
  return CoefficientSeries(sk, p, static_cast<unsigned>(k), std::move(t));
}

PadicFunction function_from_json(const Json& j, std::optional<unsigned> depth) {
  const std::string kind = kind_of(j);
  if (kind == "table") {
    const std::uint64_t p = u64_of(field(j, "p"), "p");
    require_prime(p);
    const std::uint64_t k = u64_of(field(j, "k"), "k");
    if (k < 1 || k > max_depth()) throw DomainError("table exponent out of range");
    const Json& vals = field(j, "values");
    if (!vals.is_array()) throw DomainError("'values' must be an array");
    std::vector<std::uint64_t> v;
    for (const auto& x : vals) v.push_back(u64_of(x, "value"));
    auto f = PadicFunction::table(p, static_cast<unsigned>(k), std::move(v));
    return depth ? f.at_depth(*depth) : f;
  }
  auto s = series_from_json(j);
  const unsigned d = depth.value_or(s.exponent());
  return PadicFunction::from_series(std::move(s), d);
}

}  // namespace padicdyn
