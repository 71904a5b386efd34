#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padicdyn/analysis.hpp"
#include "padicdyn/criteria.hpp"
#include "padicdyn/dynamics.hpp"
#include "padicdyn/identities.hpp"
#include "padicdyn/polytext.hpp"
#include "padicdyn/serialize.hpp"

namespace py = pybind11;
using namespace padicdyn;

namespace {

// Integers cross the boundary as decimal strings; JSON results as text.
std::vector<BigInt> to_big(const std::vector<std::string>& v) {
  std::vector<BigInt> out;
  out.reserve(v.size());
  for (const auto& s : v) out.emplace_back(s);
  return out;
}

std::vector<std::string> to_dec(const std::vector<BigInt>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

PadicFunction make_function(std::uint64_t p, unsigned depth, const std::vector<std::string>& coeffs) {
  return PadicFunction::polynomial(p, depth, to_big(coeffs));
}

PadicFunction function_from_text(const std::string& json, std::optional<unsigned> depth) {
  return function_from_json(Json::parse(json), depth);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-adic 1-Lipschitz dynamics core";

  // translators run newest first, so bases are registered before subclasses
  auto& domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", domain.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", domain.ptr());

  m.def("parse_polynomial", [](const std::string& text) { return to_dec(parse_polynomial(text)); });
  m.def("format_polynomial", [](const std::vector<std::string>& c) { return format_polynomial(to_big(c)); });
  m.def("is_prime", &is_prime);
  m.def("mu_for_prime", &mu_for_prime);

  m.def(
      "expand",
      [](std::uint64_t p, unsigned depth, const std::vector<std::string>& coeffs, const std::string& basis,
         std::uint64_t count, unsigned k) {
        auto f = make_function(p, depth, coeffs);
        if (basis == "mahler") return to_json(mahler_coefficients(f, count, k)).dump();
        if (basis == "vdp") return to_json(vdp_coefficients(f, count, k)).dump();
        throw DomainError("basis must be mahler or vdp");
      },
      py::arg("p"), py::arg("depth"), py::arg("coeffs"), py::arg("basis"), py::arg("count"), py::arg("k"));

  m.def(
      "values_mod",
      [](std::uint64_t p, unsigned depth, const std::vector<std::string>& coeffs, unsigned k) {
        auto f = make_function(p, depth, coeffs);
        return values_mod(f, pow_u64(p, k), k);
      },
      py::arg("p"), py::arg("depth"), py::arg("coeffs"), py::arg("k"));

  m.def(
      "series_values",
      [](const std::string& json, unsigned k) {
        auto f = function_from_text(json, k);
        return values_mod(f, pow_u64(f.prime(), k), k);
      },
      py::arg("series_json"), py::arg("k"));

  m.def("vdp_to_mahler", [](const std::string& json, std::size_t n) {
    return to_json(vdp_to_mahler(series_from_json(Json::parse(json)), n)).dump();
  });
  m.def("mahler_to_vdp", [](const std::string& json, std::size_t n) {
    return to_json(mahler_to_vdp(series_from_json(Json::parse(json)), n)).dump();
  });

  m.def("lipschitz_check", [](std::uint64_t p, unsigned depth, const std::vector<std::string>& c) {
    return to_json(lipschitz_check(make_function(p, depth, c))).dump();
  });
  m.def("ud1_check", [](std::uint64_t p, unsigned depth, const std::vector<std::string>& c) {
    return to_json(ud1_check(make_function(p, depth, c)).verdict).dump();
  });
  m.def("mahler_ud1_predicate",
        [](const std::string& json) { return to_json(mahler_ud1_predicate(series_from_json(Json::parse(json)))).dump(); });
  m.def("transitive_mod", [](std::uint64_t p, unsigned depth, const std::vector<std::string>& c, unsigned n) {
    return to_json(transitive_mod(make_function(p, depth, c), n)).dump();
  });
  m.def(
      "ergodic_ud",
      [](std::uint64_t p, unsigned depth, const std::vector<std::string>& c, std::optional<unsigned> mu_override) {
        ErgodicOptions o;
        if (mu_override) o.unsafe_mu_override = *mu_override;
        return to_json(ergodic_ud(make_function(p, depth, c), o)).dump();
      },
      py::arg("p"), py::arg("depth"), py::arg("coeffs"), py::arg("mu_override") = py::none());
  m.def("ergodic_oracle", [](std::uint64_t p, unsigned depth, const std::vector<std::string>& c, unsigned n) {
    return to_json(ergodic_oracle(make_function(p, depth, c), n)).dump();
  });
  m.def("mcri_conditions", [](std::uint64_t p, unsigned depth, const std::vector<std::string>& c) {
    return to_json(mcri_conditions(make_function(p, depth, c))).dump();
  });

  m.def("larin_transitive_mod8", [](const std::vector<std::string>& abcd) {
    auto v = to_big(abcd);
    if (v.size() != 4) throw DomainError("expected A, B, C, D");
    return to_json(larin_transitive_mod8({v[0], v[1], v[2], v[3]})).dump();
  });
  m.def("deg8_minimal_p3", [](const std::vector<std::string>& alpha) {
    auto v = to_big(alpha);
    return to_json(deg8_minimal_p3(v)).dump();
  });

  m.def(
      "verify_identity_suite",
      [](const std::string& suite, std::optional<std::uint64_t> p_max, std::optional<unsigned> s_max) {
        IdentityBounds b;
        if (p_max) b.p_max = *p_max;
        if (s_max) b.s_max = *s_max;
        std::vector<std::string> out;
        py::gil_scoped_release release;
        for (const auto& r : verify_identity_suite(suite, b)) out.push_back(to_json(r).dump());
        return out;
      },
      py::arg("suite"), py::arg("p_max") = py::none(), py::arg("s_max") = py::none());
}
