#include <doctest.h>

#include <random>

#include "padicdyn/polytext.hpp"
#include "padicdyn/serialize.hpp"

using namespace padicdyn;

using V = std::vector<BigInt>;

TEST_CASE("polynomial text") {
  CHECK(parse_polynomial("x+1") == V{1, 1});
  CHECK(parse_polynomial("1+4*x+4*x^3+2*x^5") == V{1, 4, 0, 4, 0, 2});
  CHECK(parse_polynomial(" 2 * x ^ 2 + 3*x + 1 ") == V{1, 3, 2});
  CHECK(parse_polynomial("-x^2 + x^2 - 5") == V{-5});
  CHECK(parse_polynomial("0") == V{0});
  CHECK(parse_polynomial("x^5+1") == V{1, 0, 0, 0, 0, 1});
  CHECK(parse_polynomial("123456789012345678901234567890*x") == V{0, BigInt("123456789012345678901234567890")});
  CHECK(parse_polynomial("x + x") == V{0, 2});

  for (const char* bad : {"", "x+", "2x", "x^", "x**2", "3 4", "y", "x^99999"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_polynomial(bad), ParseError);
  }
  try {
    parse_polynomial("x + 1 + y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
  }
}

TEST_CASE("polynomial text round trip") {
  CHECK(format_polynomial(V{7, 3, 2}) == "7 + 3*x + 2*x^2");
  CHECK(format_polynomial(V{0}) == "0");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    V c(1 + rng() % 8);
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % 41) - 20;
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    CHECK(parse_polynomial(format_polynomial(c)) == c);
  }
}

TEST_CASE("series JSON") {
  CoefficientSeries s(SeriesKind::van_der_put, 2, 3, {1, 2, 2, 2});
  Json j = to_json(s);
  CHECK(j["kind"] == "vdp");
  CHECK(j["p"] == "2");
  CHECK(j["k"] == "3");
  CHECK(j["length"] == "4");
  CHECK(j["terms"] == Json::array({"1", "2", "2", "2"}));
  auto back = series_from_json(j);
  CHECK(back.kind() == SeriesKind::van_der_put);
  CHECK(back.terms() == s.terms());

  Json ints = Json::parse(R"({"kind":"mahler","p":3,"k":2,"terms":[1,1,0,0,0,0,0,0,0]})");
  auto m = series_from_json(ints);
  CHECK(m.kind() == SeriesKind::mahler);
  auto f = function_from_json(ints);
  CHECK(f.depth() == 2);
  CHECK(evaluate_u64(f, 8, 2) == 0);
  CHECK(function_from_json(ints, 1u).depth() == 1);

  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"kind":"taylor","p":"2","k":"1","terms":[]})")), DomainError);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"kind":"mahler","p":"4","k":"1","terms":[]})")), DomainError);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"kind":"mahler","p":"2","k":"1","terms":["1.5"]})")), DomainError);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"kind":"mahler","p":"2","k":"1","length":"3","terms":["1"]})")),
                  DomainError);
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"kind":"mahler","p":"2","terms":["1"]})")), DomainError);
}

TEST_CASE("table JSON") {
  Json t = table_to_json(2, 2, {1, 2, 3, 0});
  CHECK(t["kind"] == "table");
  CHECK(t["values"] == Json::array({"1", "2", "3", "0"}));
  auto f = function_from_json(t);
  CHECK(f.table_data());
  CHECK(evaluate_u64(f, 3, 2) == 0);
  t["values"][0] = "9";
  CHECK_THROWS_AS(function_from_json(t), DomainError);
}

TEST_CASE("report JSON") {
  auto v = CriterionVerdict::failed("ud1", "congruence", {{"u", "3"}, {"s", "1"}}, 4);
  Json j = to_json(v);
  CHECK(j["pass"] == false);
  CHECK(j["depth"] == "4");
  CHECK(j["witness"]["u"] == "3");
  CHECK(to_json(CriterionVerdict::passed("x"))["depth"].is_null());

  auto f = PadicFunction::polynomial(2, 4, {1, 1});
  Json d = to_json(ergodic_ud(f));
  CHECK(d["ergodic"] == true);
  CHECK(d["method"] == "mainR");
  CHECK(d["mu"] == "3");
  CHECK(d["cycles"]["cycles"][0].size() == 8);
  CHECK(d["cycles"]["cycles"][0][1] == "1");

  Json m = to_json(mcri_conditions(f));
  CHECK(m["product_per_s"].size() == 3);
  CHECK(m["redundancy_held"] == true);

  IdentityReport r{"abc", 12, {{{{"p", "3"}}, "1", "2", "9"}}, false};
  Json ir = to_json(r);
  CHECK(ir["params_checked"] == "12");
  CHECK(ir["counterexamples"][0]["params"]["p"] == "3");
  CHECK(ir["counterexamples"][0]["modulus"] == "9");

  // every number is rendered as a string
  std::function<void(const Json&)> walk = [&](const Json& x) {
    CHECK_FALSE(x.is_number());
    if (x.is_structured())
      for (const auto& e : x) walk(e);
  };
  walk(d);
  walk(m);
  walk(ir);
}
