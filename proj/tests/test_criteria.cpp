#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "padicdyn/case_tables.hpp"
#include "padicdyn/criteria.hpp"
#include "padicdyn/dynamics.hpp"

using namespace padicdyn;

namespace {

using U = std::vector<std::uint64_t>;

PadicFunction poly(std::uint64_t p, unsigned depth, std::vector<BigInt> c) {
  return PadicFunction::polynomial(p, depth, std::move(c));
}

std::vector<BigInt> mahler_digits_p2(const std::vector<BigInt>& c) {
  return mahler_coefficients(poly(2, 3, c), 4, 3).terms();
}

std::vector<BigInt> vdp_digits_p2(const std::vector<BigInt>& c) {
  return normalized_terms(vdp_coefficients(poly(2, 3, c), 4, 3), 4, 2);
}

U random_cycle(std::mt19937_64& rng, std::uint64_t p) {
  U order(p);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin() + 1, order.end(), rng);
  return phi_from_cycle(order, p);
}

U random_bvec(std::mt19937_64& rng, std::uint64_t p) {
  U b(p);
  std::uint64_t prod = 1;
  for (std::uint64_t i = 0; i + 1 < p; ++i) {
    b[i] = 1 + rng() % (p - 1);
    prod = prod * b[i] % p;
  }
  b[p - 1] = inv_mod(prod, p);
  return b;
}

// Polynomial g0 + p g1 (coefficients mod p^2) behind a generated Mahler series.
std::pair<U, U> split_polynomial(const P5Result& r) {
  std::uint64_t p = r.instance.p;
  auto q = polynomial_from_mahler(r.mahler);
  REQUIRE(q.exponent >= 2);
  q.coefficients.resize(2 * p, 0);
  U g0(2 * p), g1(2 * p);
  for (std::size_t k = 0; k < 2 * p; ++k) {
    std::uint64_t v = oracle::mod(q.coefficients[k], p * p);
    g0[k] = v % p;
    g1[k] = v / p;
  }
  return {g0, g1};
}

}  // namespace

TEST_CASE("Larin conditions") {
  CHECK(larin_transitive_mod8({0, 0, 1, 1}).pass);
  CHECK(larin_transitive_mod8({0, 2, 3, 1}).pass);
  auto v = larin_transitive_mod8({2, 0, 3, 1});
  CHECK_FALSE(v.pass);
  CHECK(v.field("A") == "2");
  CHECK_FALSE(larin_transitive_mod8({0, 0, 1, 0}).pass);
}

TEST_CASE("p = 2 closed forms") {
  CHECK(mahler_digits_p2({1, 1}) == std::vector<BigInt>{1, 1, 0, 0});
  CHECK(mahler_ergodic_p2(mahler_digits_p2({1, 1})).pass);
  CHECK(mahler_ergodic_p2(std::vector<BigInt>{1, 5, 4, 0}).pass);
  CHECK(mahler_ergodic_p2(std::vector<BigInt>{3, 5, 0, 0}).pass);
  auto f = mahler_ergodic_p2(std::vector<BigInt>{1, 3, 0, 0});
  CHECK_FALSE(f.pass);
  CHECK(f.condition == "a1 = 1 mod 4");
  CHECK_THROWS_AS(mahler_ergodic_p2(std::vector<BigInt>{1, 1}), DomainError);

  CHECK(vdp_digits_p2({1, 1}) == std::vector<BigInt>{1, 2, 1, 1});
  CHECK(vdp_ergodic_p2(vdp_digits_p2({1, 1})).pass);
  CHECK_FALSE(vdp_ergodic_p2(vdp_digits_p2({0, 1})).pass);
  CHECK(vdp_ergodic_p2(vdp_digits_p2({0, 1})).condition == "b0 = 1 mod 2");
  auto b = vdp_digits_p2({1, 5});
  CHECK(b[0] == 1);
  CHECK(b[1] == 2);  // 6 mod 4
  CHECK(vdp_ergodic_p2(b).pass);
}

TEST_CASE("p = 2 criteria agree with the oracle on every cubic mod 8") {
  std::set<U> maps;
  for (int A = 0; A < 8; ++A)
    for (int B = 0; B < 8; ++B)
      for (int C = 0; C < 8; ++C)
        for (int D = 0; D < 8; ++D) {
          std::vector<BigInt> c{D, C, B, A};
          bool truth = oracle::ergodic_levels(c, 2, 3);
          REQUIRE(larin_transitive_mod8({A, B, C, D}).pass == truth);
          REQUIRE(mahler_ergodic_p2(mahler_digits_p2(c)).pass == truth);
          REQUIRE(vdp_ergodic_p2(vdp_digits_p2(c)).pass == truth);
          if (truth) maps.insert(oracle::poly_table(c, 8));
        }
  CHECK(maps.size() == 16);
}

TEST_CASE("deg8 statistics and examples") {
  std::vector<BigInt> counter{1, 4, 0, 4, 0, 2, 0, 0, 0};
  auto st = deg8_stats(counter);
  CHECK(st.selector == std::array<std::uint64_t, 6>{1, 1, 0, 1, 2, 2});
  CHECK(st.A1 == 1);
  CHECK(st.A2 == 0);
  auto v = deg8_minimal_p3(counter);
  CHECK_FALSE(v.pass);
  CHECK(v.condition.find("ii") != std::string::npos);

  std::vector<BigInt> shift{1, 1, 0, 0, 0, 0, 0, 0, 0};
  CHECK(deg8_stats(shift).selector == std::array<std::uint64_t, 6>{1, 1, 0, 1, 1, 1});
  CHECK(deg8_minimal_p3(shift).pass);
  CHECK_FALSE(deg8_minimal_p3(std::vector<BigInt>(9, 0)).pass);
}

TEST_CASE("p = 3 criteria agree with the oracle") {
  std::mt19937_64 rng(17);
  int positives = 0, total = 0;
  auto check = [&](const std::vector<BigInt>& alpha) {
    bool truth = oracle::ergodic_levels(alpha, 3, 3);
    REQUIRE(deg8_minimal_p3(alpha).pass == truth);
    auto f = poly(3, 3, alpha);
    auto c = normalized_terms(mahler_coefficients(f, 9, 3), 9, 2);
    auto b = normalized_terms(vdp_coefficients(f, 9, 3), 9, 2);
    REQUIRE(mahler_ergodic_p3(c).pass == truth);
    REQUIRE(vdp_ergodic_p3(b).pass == truth);
    positives += truth;
    ++total;
  };
  for (int i = 0; i < 1500; ++i) check(oracle::random_poly(rng, 9, 27));
  // condition on a matching selector so that every case is exercised
  const auto& rows = case_table("deg8").rows;
  for (int i = 0; i < 600;) {
    auto alpha = oracle::random_poly(rng, 9, 27);
    auto sel = deg8_stats(alpha).selector;
    bool hit = std::any_of(rows.begin(), rows.end(),
                           [&](const CaseRow& r) { return std::equal(sel.begin(), sel.end(), r.selector.begin()); });
    if (!hit) continue;
    check(alpha);
    ++i;
  }
  CHECK(positives > 100);
  CHECK(total == 2100);
}

TEST_CASE("p = 3 Mahler and van der Put examples") {
  std::vector<BigInt> c(9, 0);
  c[0] = 1;
  c[1] = 1;
  CHECK(mahler_ergodic_p3(c).pass);
  CHECK_FALSE(mahler_ergodic_p3(std::vector<BigInt>(9, 0)).pass);
  CHECK_FALSE(vdp_ergodic_p3(std::vector<BigInt>(9, 0)).pass);
  auto f = poly(3, 3, {1, 4, 0, 4, 0, 2});
  CHECK_FALSE(mahler_ergodic_p3(normalized_terms(mahler_coefficients(f, 9, 3), 9, 2)).pass);
  CHECK_FALSE(vdp_ergodic_p3(normalized_terms(vdp_coefficients(f, 9, 3), 9, 2)).pass);
}

TEST_CASE("phi from a cycle") {
  CHECK(phi_from_cycle(U{0, 1, 2, 3, 4}, 5) == U{1, 2, 3, 4, 0});
  CHECK(phi_from_cycle(U{0, 2, 1}, 3) == U{2, 0, 1});
  CHECK_THROWS_AS(phi_from_cycle(U{0, 1, 1, 3, 4}, 5), DomainError);
  CHECK_THROWS_AS(phi_from_cycle(U{0, 1, 2}, 5), DomainError);
}

TEST_CASE("p >= 5 generator") {
  U phi = phi_from_cycle(U{0, 1, 2, 3, 4}, 5);
  auto r = p5_generate(5, phi, U(5, 1), U(10, 0));
  CHECK(r.verdict.pass);
  CHECK(r.instance.c == U{1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(r.orbit_value == 5);
  CHECK(ergodic_oracle(p5_function(r, 2), 2).ergodic);

  CHECK_THROWS_AS(p5_generate(5, phi, U{1, 1, 1, 1, 2}, U(10, 0)), DomainError);
  CHECK_THROWS_AS(p5_generate(5, phi, U{1, 1, 1, 0, 1}, U(10, 0)), DomainError);
  CHECK_THROWS_AS(p5_generate(5, U{1, 0, 3, 4, 2}, U(5, 1), U(10, 0)), DomainError);
  CHECK_THROWS_AS(p5_generate(3, U{1, 2, 0}, U(3, 1), U(6, 0)), DomainError);
  CHECK_THROWS_AS(p5_generate(5, phi, U(5, 1), U(9, 0)), DomainError);

  // x^5 + 1: transitive mod 5, but every b_{i+5} vanishes and f^5(0) = 0 mod 25
  auto x5 = poly(5, 3, {1, 0, 0, 0, 0, 1});
  CHECK(transitive_mod(x5, 1).transitive);
  auto B = vdp_coefficients(x5, 10, 2);
  for (std::uint64_t i = 5; i < 10; ++i) CHECK(B.normalized_mod(i, 1) == 0);
  CHECK(orbit_after_p_steps(5, std::vector<BigInt>{1, 0, 0, 0, 0, 1}) == 0);
}

TEST_CASE("generated functions against the oracle") {
  std::mt19937_64 rng(23);
  for (std::uint64_t p : {5, 7}) {
    int pass = 0, fail = 0;
    for (int i = 0; i < 60; ++i) {
      U lift(2 * p);
      for (auto& z : lift) z = rng() % p;
      auto r = p5_generate(p, random_cycle(rng, p), random_bvec(rng, p), lift);
      bool mod_p2 = ergodic_oracle(p5_function(r, 2), 2).ergodic;
      REQUIRE(r.verdict.pass == mod_p2);
      if (r.verdict.pass) {
        REQUIRE(ergodic_oracle(p5_function(r, 3), 3).ergodic);
        ++pass;
      } else {
        CHECK(r.verdict.condition == "(iii) orbit");
        ++fail;
      }
      auto [g0, g1] = split_polynomial(r);
      auto l = mainp5_linear_form_coefficients(p, g0);
      REQUIRE((l(g1) != 0) == r.verdict.pass);
      REQUIRE(mainp5_linear_form(p, g0, g1) == l(g1));
      std::vector<BigInt> full(2 * p);
      for (std::size_t k = 0; k < 2 * p; ++k) full[k] = g0[k] + p * g1[k];
      REQUIRE(orbit_after_p_steps(p, full) == r.orbit_value);
    }
    CHECK(pass > 0);
    CHECK(fail > 0);
  }
}

TEST_CASE("linear system for g0") {
  for (std::uint64_t p : {5, 7, 11}) CHECK(mainp5_matrix(p).rank() == 2 * p);

  U B(5, 0), D(5, 1);
  B[0] = 1;
  B[1] = 1;
  auto s = mainp5_system(5, B, D);
  CHECK(s.e == U{1, 1, 0, 0, 0, 0, 0, 0, 0, 0});

  std::mt19937_64 rng(29);
  for (std::uint64_t p : {5, 7}) {
    for (int i = 0; i < 50; ++i) {
      U bb(p), dd(p);
      for (auto& v : bb) v = rng() % p;
      for (auto& v : dd) v = rng() % p;
      auto sol = mainp5_system(p, bb, dd);
      // substitute back: g(x) = sum_j B_j x^j and g'(x) = D_x pointwise
      std::vector<BigInt> ge(sol.e.begin(), sol.e.end());
      for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t red = 0;
        for (std::uint64_t j = 0; j < p; ++j) red = (red + bb[j] * pow_mod(x, j, p)) % p;
        REQUIRE(oracle::poly_eval(ge, x, p) == red);
        std::uint64_t d = 0;
        for (std::size_t k = 1; k < ge.size(); ++k) d = (d + k % p * sol.e[k] % p * pow_mod(x, k - 1, p)) % p;
        REQUIRE(d == dd[x]);
      }
    }
  }
  CHECK_THROWS_AS(mainp5_system(5, U(4, 0), U(5, 0)), DomainError);
}

TEST_CASE("linear form examples") {
  U g0(10, 0);
  g0[0] = 1;
  g0[1] = 1;
  auto l = mainp5_linear_form_coefficients(5, g0);
  CHECK(l(U(10, 0)) == 1);
  CHECK(l.constant == 1);

  // a lift that makes l vanish really does return to 0 mod 25
  U z(10, 0);
  std::size_t k = 0;
  while (l.coef[k] == 0) ++k;
  z[k] = (5 - 1) * inv_mod(l.coef[k], 5) % 5;
  CHECK(l(z) == 0);
  std::vector<BigInt> g(10);
  for (int k = 0; k < 10; ++k) g[k] = g0[k] + 5 * z[k];
  CHECK(orbit_after_p_steps(5, g) == 0);

  CHECK_THROWS_AS(mainp5_linear_form_coefficients(5, U{0, 2}), DomainError);
  CHECK_THROWS_AS(mainp5_linear_form_coefficients(5, U{0, 1}), DomainError);
}

TEST_CASE("linear form fiber count at p = 5") {
  U g0(10, 0);
  g0[0] = 1;
  g0[1] = 1;
  auto l = mainp5_linear_form_coefficients(5, g0);
  // odometer over (Z/5)^10, updating l incrementally
  U z(10, 0);
  std::uint64_t value = l(z), nonzero = 0, total = 0;
  for (;;) {
    ++total;
    nonzero += value != 0;
    std::size_t k = 0;
    while (k < 10 && z[k] == 4) {
      z[k] = 0;
      value = (value + 4 * l.coef[k]) % 5;  // subtract 4 coef
      ++k;
    }
    if (k == 10) break;
    ++z[k];
    value = (value + l.coef[k]) % 5;
  }
  CHECK(total == 9765625);
  CHECK(nonzero == 4 * 1953125);
}
