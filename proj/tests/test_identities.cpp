#include <doctest.h>

#include "oracles.hpp"
#include "padicdyn/identities.hpp"

using namespace padicdyn;

namespace {

BigInt sgn(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

oracle::BigInt C(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0) return 0;
  return oracle::binom(n, k);
}

struct Abc {
  BigInt A, B, Cc, P;
};

// The double sums written out straight from their definitions.
Abc abc_direct(std::int64_t p, std::int64_t r) {
  Abc s;
  for (std::int64_t l = 1; l <= r; ++l)
    for (std::int64_t j = 1; j <= l; ++j) s.A += sgn(r - l + 1) * l * C(r, l - j) * C(p, j);
  for (std::int64_t l = r + 1; l <= p - 1; ++l)
    for (std::int64_t j = l - r; j <= l; ++j) s.B += sgn(r - l + 1) * l * C(r, l - j) * C(p, j);
  for (std::int64_t l = 1; l <= r - 1; ++l)
    for (std::int64_t j = 1; j <= r - l; ++j) s.Cc += sgn(r - l) * l * C(r, l + j) * C(p, j);
  for (std::int64_t j = 1; j <= p - 1 - r; ++j)
    for (std::int64_t l = j; l <= j + r; ++l) s.P += sgn(r - l + 1) * l * C(r, l - j) * C(p, j);
  return s;
}

bool cong(const BigInt& a, const BigInt& b, std::uint64_t m) { return oracle::mod(a - b, m) == 0; }

}  // namespace

TEST_CASE("A, B, C and P sums") {
  auto s = abc_sums(3, 1);
  CHECK(s.A == -3);
  CHECK(s.B == 12);
  CHECK(s.C == 0);
  CHECK(oracle::mod(s.A + s.B + s.C, 9) == 0);
  CHECK(oracle::mod(pzero_sum(5, 2), 25) == 0);

  for (std::uint64_t p : {3, 5, 7, 11, 13, 17}) {
    for (std::uint64_t r = 1; r < p; ++r) {
      auto d = abc_direct(p, r);
      auto t = abc_sums(p, r);
      REQUIRE(t.A == d.A);
      REQUIRE(t.B == d.B);
      REQUIRE(t.C == d.Cc);
      REQUIRE(pzero_sum(p, r) == d.P);
      REQUIRE(oracle::mod(d.A + d.B + d.Cc, p * p) == 0);
      if (r > 1) REQUIRE(oracle::mod(d.P, p * p) == 0);
    }
  }
}

TEST_CASE("binomial table mod p^2") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    BinomialTableModP2 t(p, 300);
    CHECK(t.limit() == 300);
    CHECK(t.modulus() == p * p);
    auto P = oracle::pascal(300);
    for (std::uint64_t n = 0; n <= 300; ++n)
      for (std::uint64_t k = 0; k <= n; ++k) REQUIRE(t(n, k) == oracle::mod(P[n][k], p * p));
    CHECK(t(3, 5) == 0);
    CHECK_THROWS_AS(t(301, 1), DomainError);
  }
}

TEST_CASE("binomial congruences against exact values") {
  auto P = oracle::pascal(260);
  auto B = [&](std::int64_t n, std::int64_t k) -> BigInt {
    if (k < 0 || k > n) return 0;
    return P[n][k];
  };
  std::uint64_t checked = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned s = 2; s <= 3; ++s) {
      std::int64_t q = oracle::ipow(p, s - 1), ps = q * p, m = p * p;
      for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b)
          for (std::int64_t l = 1; l < static_cast<std::int64_t>(p); ++l) {
            REQUIRE(cong(B(a + ps, b + l * q), B(a, b) * B(p, l), m));
            for (std::int64_t r = 1; r < static_cast<std::int64_t>(p); ++r) {
              std::int64_t top = a + r * q;
              BigInt rhs = 0;
              if (l <= r) {
                rhs = B(top, b + l * q);
                for (std::int64_t j = 1; j <= l; ++j) rhs += B(top, b + (l - j) * q) * B(p, j);
              } else {
                for (std::int64_t j = l - r; j <= l; ++j) rhs += B(top, b + (l - j) * q) * B(p, j);
              }
              REQUIRE(cong(B(top + ps, b + l * q), rhs, m));
              if (l <= r) {
                BigInt r3 = B(top, b + l * q);
                for (std::int64_t j = 1; j <= r - l; ++j) r3 += B(top, b + (l + j) * q) * B(p, j);
                REQUIRE(cong(B(top + ps, b + l * q + ps), r3, m));
              }
              ++checked;
            }
          }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("mod 4 congruences") {
  CHECK(oracle::binom(5, 2) == 10);
  CHECK(oracle::mod(oracle::binom(5, 2) - 2 * oracle::binom(1, 0), 4) == 0);
  auto r = verify_bip2(6);
  CHECK(r.identity == "bip2");
  CHECK(r.ok());
  // five parts for every s in 2..6 and alpha, beta < 2^{s-1}
  std::uint64_t expect = 0;
  for (unsigned s = 2; s <= 6; ++s) expect += 5ull << (2 * (s - 1));
  CHECK(r.params_checked == expect);
}

TEST_CASE("suites at small bounds") {
  auto abc = verify_abc(31);
  CHECK(abc.ok());
  CHECK(abc.params_checked > 0);
  CHECK(verify_pzero(31).ok());
  auto val = verify_valpro(7, 3);
  CHECK(val.ok());
  CHECK(val.params_checked > 0);
  auto bp = verify_bipro(7, 3);
  CHECK(bp.ok());
  CHECK(bp.params_checked > 0);
  // table route (p^s above the exact threshold) at p = 5, s = 4
  CHECK(verify_bipro(5, 4).ok());
}

TEST_CASE("suite dispatch") {
  IdentityBounds b;
  b.p_max = 11;
  b.s_max = 3;
  auto reports = verify_identity_suite("all", b);
  CHECK(reports.size() == 5);
  for (const auto& r : reports) CHECK(r.ok());
  CHECK(verify_identity_suite("abc", {}).at(0).identity == "abc");
  CHECK_THROWS_AS(verify_identity_suite("nope", {}), DomainError);
  IdentityBounds huge;
  huge.p_max = 97;
  huge.s_max = 6;
  CHECK_THROWS_AS(verify_identity_suite("bipro", huge), DomainError);
}

TEST_CASE("suite output is independent of the thread count") {
  auto one = verify_valpro(5, 3, 1);
  auto many = verify_valpro(5, 3, 3);
  CHECK(one.params_checked == many.params_checked);
  CHECK(one.counterexamples.size() == many.counterexamples.size());
}
