#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "padicdyn/analysis.hpp"

using namespace padicdyn;

namespace {

PadicFunction poly(std::uint64_t p, unsigned depth, std::vector<BigInt> c) {
  return PadicFunction::polynomial(p, depth, std::move(c));
}

// Random Mahler series mod p^k satisfying the UD_1 divisibilities (and the
// Lipschitz bound), optionally with one constrained index broken.
CoefficientSeries admissible_series(std::mt19937_64& rng, std::uint64_t p, unsigned k, bool broken) {
  std::size_t len = oracle::ipow(p, k);
  std::uint64_t mod = oracle::ipow(p, k);
  std::vector<BigInt> a(len);
  std::vector<std::size_t> constrained;
  for (std::size_t n = 0; n < len; ++n) {
    unsigned s = floor_log(n, p);
    std::uint64_t lead = s == 0 ? n : n / oracle::ipow(p, s);
    bool c = n >= p && (p == 2 ? s >= 2 : ((lead >= 2 && s >= 1) || (lead == 1 && s >= 2)));
    unsigned need = std::min<unsigned>(c ? s + 1 : s, k);
    std::uint64_t scale = oracle::ipow(p, need);
    a[n] = (rng() % mod) / scale * scale;
    if (c && s + 1 <= k) constrained.push_back(n);
  }
  if (broken && !constrained.empty()) {
    std::size_t n = constrained[rng() % constrained.size()];
    unsigned s = floor_log(n, p);
    // valuation exactly s: Lipschitz still holds, the divisibility does not
    a[n] = oracle::ipow(p, s) * (1 + rng() % (p - 1));
  }
  return CoefficientSeries(SeriesKind::mahler, p, k, a);
}

}  // namespace

TEST_CASE("ud1 examples") {
  auto r = ud1_check(poly(2, 4, {1, 3, 0, 2}));
  CHECK(r.verdict.pass);
  CHECK(r.verdict.depth == 4u);
  REQUIRE(r.derived);
  CHECK(r.derived->values == std::vector<std::uint64_t>{1, 1});

  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto t = ud1_check(poly(p, 3, {4, 1}));
    REQUIRE(t.verdict.pass);
    for (auto v : t.derived->values) CHECK(v == 1);
  }

  std::vector<BigInt> a(8, 0);
  a[5] = 4;
  auto s = CoefficientSeries(SeriesKind::mahler, 2, 3, a);
  auto f = PadicFunction::from_series(s, 3);
  auto bad = ud1_check(f);
  CHECK_FALSE(bad.verdict.pass);
  CHECK_FALSE(bad.derived);
  CHECK(bad.verdict.condition == "congruence");
  CHECK_FALSE(mahler_ud1_predicate(s).pass);
  CHECK(mahler_ud1_predicate(s).field("n") == "5");
  CHECK_FALSE(ud1_equivalence_crosscheck(f).direct.pass);
  CHECK(ud1_equivalence_crosscheck(f).agree());

  CHECK_THROWS_AS(ud1_check(poly(2, 3, {1}), 1u), DomainError);
  CHECK_THROWS_AS(ud1_check(poly(2, 3, {1}), 4u), DomainError);
}

TEST_CASE("ud1 rejects a non-Lipschitz table") {
  std::vector<std::uint64_t> t{0, 1, 1, 3};
  CHECK_THROWS_AS(ud1_check(PadicFunction::table(2, 2, t)), NotLipschitzError);
}

TEST_CASE("ud1 matches brute force on random tables") {
  std::mt19937_64 rng(21);
  int passes = 0;
  for (std::uint64_t p : {2, 3}) {
    unsigned N = 3;
    std::uint64_t m = oracle::ipow(p, N);
    for (int trial = 0; trial < 400; ++trial) {
      // perturb a polynomial so that some tables stay UD_1 and some do not
      auto c = oracle::random_poly(rng, 4, 50);
      auto t = oracle::poly_table(c, m);
      if (trial % 2) {
        std::uint64_t x = rng() % m;
        std::uint64_t d = oracle::ipow(p, 1 + rng() % (N - 1));
        for (std::uint64_t y = x % d; y < m; y += d) t[y] = (t[y] + d) % m;
      }
      auto f = PadicFunction::table(p, N, t);
      if (!lipschitz_check(f).pass) continue;
      bool expect = oracle::ud1_naive(t, p, N);
      REQUIRE(ud1_check(f).verdict.pass == expect);
      passes += expect;
    }
  }
  CHECK(passes > 0);
}

TEST_CASE("van der Put UD1 relations") {
  auto b = vdp_coefficients(poly(2, 3, {1, 1}), 8, 3);
  for (unsigned s = 1; s < 3; ++s)
    for (std::uint64_t r = 0; r < (1u << s); ++r) CHECK(*b.normalized(r + (1u << s)) == 1);
  CHECK(vdp_ud1_relations_check(b, 3).pass);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    auto c = oracle::random_poly(rng, 6, 100);
    CHECK(vdp_ud1_relations_check(vdp_coefficients(poly(3, 3, c), 27, 3), 3).pass);
  }

  auto t = b.terms();
  t[5] += 2;
  auto v = vdp_ud1_relations_check(CoefficientSeries(SeriesKind::van_der_put, 2, 3, t), 3);
  CHECK_FALSE(v.pass);
  CHECK(v.field("r") == "1");
  CHECK(v.field("s") == "2");
  CHECK(v.field("l") == "1");
}

TEST_CASE("Mahler UD1 predicate examples") {
  CHECK(mahler_ud1_predicate(mahler_coefficients(poly(3, 2, {0, 0, 1}), 9, 2)).pass);
  std::vector<BigInt> a(27, 0);
  a[0] = 1;
  a[1] = 1;
  a[6] = 9;
  CHECK(mahler_ud1_predicate(CoefficientSeries(SeriesKind::mahler, 3, 3, a)).pass);
  a[6] = 3;
  auto v = mahler_ud1_predicate(CoefficientSeries(SeriesKind::mahler, 3, 3, a));
  CHECK_FALSE(v.pass);
  CHECK(v.field("n") == "6");
  CHECK(ud1_equivalence_crosscheck(poly(5, 3, {1, 1})).agree());
}

TEST_CASE("necessity: polynomial Mahler coefficients satisfy the predicate") {
  std::mt19937_64 rng(33);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 200; ++i) {
      auto c = oracle::random_poly(rng, 1 + rng() % 8, 1000);
      auto f = poly(p, 3, c);
      auto x = ud1_equivalence_crosscheck(f);
      REQUIRE(x.direct.pass);
      REQUIRE(x.predicate.pass);
    }
  }
}

TEST_CASE("biconditional on constructed series") {
  std::mt19937_64 rng(34);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 200; ++i) {
      bool broken = i % 2;
      auto s = admissible_series(rng, p, 3, broken);
      REQUIRE(lipschitz_check(s).pass);
      auto f = PadicFunction::from_series(s, 3);
      auto x = ud1_equivalence_crosscheck(f);
      REQUIRE(x.agree());
      REQUIRE(x.direct.pass == !broken);
    }
  }
}

TEST_CASE("derived function reproduces the van der Put coefficients") {
  std::mt19937_64 rng(35);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int i = 0; i < 30; ++i) {
      auto c = oracle::random_poly(rng, 7, 500);
      unsigned N = 3;
      std::uint64_t m = oracle::ipow(p, N);
      auto f = poly(p, N, c);
      auto r = ud1_check(f);
      REQUIRE(r.derived);
      std::vector<BigInt> vals;
      for (std::uint64_t x = 0; x < m; ++x) vals.push_back(oracle::poly_eval(c, x, m));
      auto B = oracle::vdp_naive(vals, p);
      for (unsigned s = 1; s < N; ++s) {
        std::uint64_t ps = oracle::ipow(p, s);
        for (std::uint64_t rr = 0; rr < ps; ++rr)
          for (std::uint64_t l = 1; l < p; ++l)
            REQUIRE(oracle::mod(B[rr + l * ps], ps * p) == l * ps * r.derived->at(rr) % (ps * p));
      }
    }
  }
}

TEST_CASE("p = 2 van der Put coefficients from a_1, a_2, a_3") {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 100; ++i) {
    auto c = oracle::random_poly(rng, 6, 1000);
    std::vector<BigInt> vals;
    for (std::uint64_t x = 0; x < 64; ++x) vals.push_back(oracle::poly_eval(c, x, 1u << 20));
    auto a = oracle::mahler_naive(vals);
    REQUIRE(a[2] % 2 == 0);
    REQUIRE(a[3] % 2 == 0);
    for (unsigned s = 1; s < 5; ++s) {
      std::uint64_t ps = 1u << s;
      for (std::uint64_t t = 0; t < ps; ++t) {
        BigInt B = vals[t + ps] - vals[t];
        BigInt rhs = BigInt(ps) * (a[1] + a[2] / 2 + (t % 2) * (a[3] / 2));
        REQUIRE(oracle::mod(B - rhs, 2 * ps) == 0);
      }
    }
  }
}
