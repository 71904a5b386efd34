#pragma once

// JSON forms of the library's values. Every number is written as a decimal
// string; loaders accept strings or JSON integers.

#include <json.hpp>

#include "padicdyn/criteria.hpp"
#include "padicdyn/dynamics.hpp"
#include "padicdyn/funcspace.hpp"
#include "padicdyn/identities.hpp"

namespace padicdyn {

using Json = nlohmann::ordered_json;

Json to_json(const CoefficientSeries& s);
Json to_json(const CriterionVerdict& v);
Json to_json(const CycleReport& r);
Json to_json(const ErgodicityDecision& d);
Json to_json(const McriReport& r);
Json to_json(const IdentityReport& r);
// {kind: "table", p, k, length, values}.
Json table_to_json(std::uint64_t p, unsigned k, const std::vector<std::uint64_t>& values);

CoefficientSeries series_from_json(const Json& j);
// A series file ({kind: mahler|vdp}) or a value table ({kind: table}) as a
// function at the given depth (default: the file's exponent).
PadicFunction function_from_json(const Json& j, std::optional<unsigned> depth = std::nullopt);

}  // namespace padicdyn
