#include "padicdyn/identities.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "padicdyn/parallel.hpp"
#include "padicdyn/verdict.hpp"

namespace padicdyn {

BinomialTableModP2::BinomialTableModP2(std::uint64_t p, std::uint64_t limit)
    : p_(p), m_(p * p), unit_(limit + 1), inv_unit_(limit + 1), vfact_(limit + 1) {
  require_prime(p);
  std::vector<std::uint64_t> part(limit + 1, 1);
  unit_[0] = 1;
  vfact_[0] = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    std::uint64_t u = n, v = 0;
    while (u % p == 0) u /= p, ++v;
    part[n] = u % m_;
    unit_[n] = unit_[n - 1] * part[n] % m_;
    vfact_[n] = vfact_[n - 1] + v;
  }
  inv_unit_[limit] = inv_mod(unit_[limit], m_);
  for (std::uint64_t n = limit; n > 0; --n) inv_unit_[n - 1] = inv_unit_[n] * part[n] % m_;
}

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t hi, std::uint64_t lo) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = lo; p <= hi; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

using Params = std::vector<std::pair<std::string, std::string>>;

struct Partial {
  std::uint64_t checked = 0;
  std::vector<IdentityCounterexample> bad;
  bool truncated = false;

  void record(Params params, std::string lhs, std::string rhs, std::string modulus) {
    if (bad.size() >= kMaxStoredCounterexamples) {
      truncated = true;
      return;
    }
    bad.push_back({std::move(params), std::move(lhs), std::move(rhs), std::move(modulus)});
  }
};

IdentityReport merge(std::string name, std::vector<Partial>& parts) {
  IdentityReport r;
  r.identity = std::move(name);
  for (auto& p : parts) {
    r.params_checked += p.checked;
    r.truncated = r.truncated || p.truncated;
    for (auto& c : p.bad) {
      if (r.counterexamples.size() >= kMaxStoredCounterexamples) {
        r.truncated = true;
        break;
      }
      r.counterexamples.push_back(std::move(c));
    }
  }
  return r;
}

std::vector<BigInt> pascal_row(std::uint64_t n) {
  std::vector<BigInt> row(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) row[k] = binomial(n, k);
  return row;
}

int sign(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

bool congruent(const BigInt& a, const BigInt& b, const BigInt& m) { return ((a - b) % m) == 0; }

}  // namespace

AbcSums abc_sums(std::uint64_t p, std::uint64_t r) {
  if (r < 1 || r >= p) throw DomainError("abc: r must lie in 1..p-1");
  auto cp = pascal_row(p), cr = pascal_row(r);
  auto crk = [&](std::int64_t k) -> const BigInt& {
    static const BigInt zero = 0;
    return (k < 0 || k > static_cast<std::int64_t>(r)) ? zero : cr[k];
  };
  const auto R = static_cast<std::int64_t>(r), P = static_cast<std::int64_t>(p);
  AbcSums out{0, 0, 0};
  for (std::int64_t l = 1; l <= R; ++l) {
    for (std::int64_t j = 1; j <= l; ++j) out.A += sign(R - l + 1) * l * crk(l - j) * cp[j];
  }
  for (std::int64_t l = R + 1; l <= P - 1; ++l) {
    for (std::int64_t j = l - R; j <= l; ++j) out.B += sign(R - l + 1) * l * crk(l - j) * cp[j];
  }
  for (std::int64_t l = 1; l <= R - 1; ++l) {
    for (std::int64_t j = 1; j <= R - l; ++j) out.C += sign(R - l) * l * crk(l + j) * cp[j];
  }
  return out;
}

BigInt pzero_sum(std::uint64_t p, std::uint64_t r) {
  if (r < 1 || r >= p) throw DomainError("pzero: r must lie in 1..p-1");
  auto cp = pascal_row(p), cr = pascal_row(r);
  const auto R = static_cast<std::int64_t>(r), P = static_cast<std::int64_t>(p);
  BigInt sum = 0;
  for (std::int64_t j = 1; j <= P - 1 - R; ++j) {
    for (std::int64_t l = j; l <= j + R; ++l) sum += sign(R - l + 1) * l * cr[l - j] * cp[j];
  }
  return sum;
}

IdentityReport verify_abc(std::uint64_t p_max, unsigned threads) {
  auto primes = primes_up_to(p_max, 3);
  std::vector<Partial> parts(primes.size());
  parallel_for(
      primes.size(),
      [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        const BigInt m = BigInt(p) * p;
        for (std::uint64_t r = 1; r < p; ++r) {
          auto s = abc_sums(p, r);
          BigInt total = s.A + s.B + s.C;
          ++parts[i].checked;
          if (!congruent(total, 0, m)) {
            parts[i].record({{"p", dec(p)}, {"r", dec(r)}, {"A", s.A.str()}, {"B", s.B.str()}, {"C", s.C.str()}},
                            total.str(), "0", m.str());
          }
        }
      },
      threads);
  return merge("abc", parts);
}

IdentityReport verify_pzero(std::uint64_t p_max, unsigned threads) {
  auto primes = primes_up_to(p_max, 3);
  std::vector<Partial> parts(primes.size());
  parallel_for(
      primes.size(),
      [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        const BigInt m = BigInt(p) * p;
        for (std::uint64_t r = 2; r < p; ++r) {
          BigInt P = pzero_sum(p, r);
          ++parts[i].checked;
          if (!congruent(P, 0, m)) parts[i].record({{"p", dec(p)}, {"r", dec(r)}}, P.str(), "0", m.str());
        }
      },
      threads);
  return merge("pzero", parts);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t vp(std::uint64_t n, std::uint64_t p) {
  std::uint64_t v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

// Carries when adding a and b in base p.
std::uint64_t kummer_carries(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t carries = 0, carry = 0;
  while (a > 0 || b > 0 || carry > 0) {
    std::uint64_t d = a % p + b % p + carry;
    carry = d >= p ? 1 : 0;
    carries += carry;
    a /= p;
    b /= p;
  }
  return carries;
}

constexpr std::uint64_t kValproExactLimit = 4000;

}  // namespace

IdentityReport verify_valpro(std::uint64_t p_max, unsigned s_max, unsigned threads) {
  struct Unit {
    std::uint64_t p, l;
    unsigned s;
  };
  std::vector<Unit> units;
  for (auto p : primes_up_to(p_max, 2)) {
    for (unsigned s = 1; s <= s_max; ++s) {
      for (std::uint64_t l = 1; l < p; ++l) units.push_back({p, l, s});
    }
  }
  std::vector<Partial> parts(units.size());
  parallel_for(
      units.size(),
      [&](std::size_t i) {
        const auto [p, l, s] = units[i];
        auto& out = parts[i];
        const std::uint64_t n = l * pow_u64(p, s);
        const bool exact = n <= kValproExactLimit;
        BigInt c = 1;  // C(n, j), running
        std::uint64_t rec = 0;  // v_p(C(n, j)), running
        for (std::uint64_t j = 1; j < n; ++j) {
          rec = rec + vp(n - (j - 1), p) - vp(j, p);
          const std::uint64_t expect = s - vp(j, p);
          std::array<std::pair<const char*, std::uint64_t>, 4> routes{{
              {"legendre", legendre_binomial_valuation(l, s, j, p)},
              {"kummer", kummer_carries(j, n - j, p)},
              {"recurrence", rec},
              {"exact", 0},
          }};
          if (exact) {
            c = c * (n - (j - 1)) / j;
            routes[3].second = valuation(c, p).exponent();
          }
          ++out.checked;
          for (std::size_t k = 0; k < (exact ? 4 : 3); ++k) {
            const auto& [route, value] = routes[k];
            if (value != expect) {
              out.record({{"p", dec(p)}, {"s", dec(s)}, {"l", dec(l)}, {"j", dec(j)}, {"route", route}}, dec(value),
                         dec(expect), "valuation");
            }
          }
        }
      },
      threads);
  return merge("valpro", parts);
}

// ---------------------------------------------------------------------------

namespace {

// Arithmetic for one bipro sweep: exact integers for small boxes, residues
// mod p^2 from factorial tables otherwise.
struct ExactRing {
  using T = BigInt;
  BigInt m;
  T binom(std::uint64_t n, std::uint64_t k) const { return binomial(n, k); }
  T mul(const T& a, const T& b) const { return a * b; }
  T add(const T& a, const T& b) const { return a + b; }
  bool eq(const T& a, const T& b) const { return congruent(a, b, m); }
  std::string str(const T& a) const { return a.str(); }
};

struct TableRing {
  using T = std::uint64_t;
  const BinomialTableModP2* table;
  std::uint64_t m;
  T binom(std::uint64_t n, std::uint64_t k) const { return (*table)(n, k); }
  T mul(T a, T b) const { return a * b % m; }
  T add(T a, T b) const { return (a + b) % m; }
  bool eq(T a, T b) const { return a % m == b % m; }
  std::string str(T a) const { return std::to_string(a); }
};

template <typename Ring>
void bipro_alpha(const Ring& ring, std::uint64_t p, unsigned s, std::uint64_t alpha, Partial& out) {
  using T = typename Ring::T;
  const std::uint64_t q = pow_u64(p, s - 1), P = q * p;
  std::vector<T> cp(p + 1);
  for (std::uint64_t j = 0; j <= p; ++j) cp[j] = ring.binom(p, j);
  std::vector<T> G(p * p);
  const std::string ms = std::to_string(p * p);
  for (std::uint64_t beta = 0; beta < q; ++beta) {
    for (std::uint64_t r = 0; r < p; ++r) {
      for (std::uint64_t t = 0; t < p; ++t) G[r * p + t] = ring.binom(alpha + r * q, beta + t * q);
    }
    auto g = [&](std::uint64_t r, std::uint64_t t) -> const T& { return G[r * p + t]; };
    auto report = [&](int part, std::uint64_t l, std::uint64_t r, const T& lhs, const T& rhs) {
      Params params{{"part", std::to_string(part)}, {"p", dec(p)},    {"s", dec(s)},
                    {"alpha", dec(alpha)},          {"beta", dec(beta)}, {"l", dec(l)}};
      if (part != 1) params.emplace_back("r", dec(r));
      out.record(std::move(params), ring.str(lhs), ring.str(rhs), ms);
    };
    for (std::uint64_t l = 1; l < p; ++l) {
      T lhs = ring.binom(alpha + P, beta + l * q);
      T rhs = ring.mul(g(0, 0), cp[l]);
      ++out.checked;
      if (!ring.eq(lhs, rhs)) report(1, l, 0, lhs, rhs);
    }
    for (std::uint64_t r = 1; r < p; ++r) {
      for (std::uint64_t l = 1; l < p; ++l) {
        T lhs = ring.binom(alpha + r * q + P, beta + l * q);
        T rhs = l <= r ? g(r, l) : T(0);
        for (std::uint64_t j = (l <= r ? 1 : l - r); j <= l; ++j) rhs = ring.add(rhs, ring.mul(g(r, l - j), cp[j]));
        ++out.checked;
        if (!ring.eq(lhs, rhs)) report(2, l, r, lhs, rhs);
        if (l <= r) {
          T lhs3 = ring.binom(alpha + r * q + P, beta + l * q + P);
          T rhs3 = g(r, l);
          for (std::uint64_t j = 1; j <= r - l; ++j) rhs3 = ring.add(rhs3, ring.mul(g(r, l + j), cp[j]));
          ++out.checked;
          if (!ring.eq(lhs3, rhs3)) report(3, l, r, lhs3, rhs3);
        }
      }
    }
  }
}

// Table sweep with the prime fixed at compile time. Every binomial needed for
// one (alpha, beta) has the form C(alpha + x q, beta + y q) with x, y < 2p, so
// the factorial data is gathered into short arrays first. Sums of at most p
// products of residues below p^2 cannot overflow and are reduced once.
template <std::uint64_t p>
void bipro_alpha_fixed(const BinomialTableModP2& table, unsigned s, std::uint64_t alpha, Partial& out) {
  constexpr std::uint64_t m = p * p, X = 2 * p;
  const std::uint64_t q = pow_u64(p, s - 1);
  std::array<std::uint64_t, p + 1> cp{};
  for (std::uint64_t j = 0; j <= p; ++j) cp[j] = table.value(p, j, m);
  std::array<std::uint64_t, X> un{}, vn{}, ik{}, vk{}, id{}, vd{};
  for (std::uint64_t x = 0; x < X; ++x) {
    un[x] = table.unit(alpha + x * q);
    vn[x] = table.vfact(alpha + x * q);
  }
  std::array<std::uint64_t, X * X> C{};  // C[x * X + y] = C(alpha + x q, beta + y q) mod p^2
  auto fail = [&](int part, std::uint64_t beta, std::uint64_t l, std::uint64_t r, std::uint64_t lhs, std::uint64_t rhs) {
    Params params{{"part", std::to_string(part)}, {"p", dec(p)},       {"s", dec(s)},
                  {"alpha", dec(alpha)},          {"beta", dec(beta)}, {"l", dec(l)}};
    if (part != 1) params.emplace_back("r", dec(r));
    out.record(std::move(params), dec(lhs), dec(rhs), dec(m));
  };
  for (std::uint64_t beta = 0; beta < q; ++beta) {
    // n - k = base + (x - y - shift) q with 0 <= base < q.
    const std::uint64_t shift = alpha >= beta ? 0 : 1;
    const std::uint64_t base = alpha >= beta ? alpha - beta : q + alpha - beta;
    for (std::uint64_t y = 0; y < X; ++y) {
      ik[y] = table.inv_unit(beta + y * q);
      vk[y] = table.vfact(beta + y * q);
      id[y] = table.inv_unit(base + y * q);
      vd[y] = table.vfact(base + y * q);
    }
    // Only x < p with y < p, and x >= p with any y, are read below.
    for (std::uint64_t x = 0; x < X; ++x) {
      const std::uint64_t ymax = x < p ? p : X;
      std::uint64_t* row = &C[x * X];
      const std::uint64_t top = x + 1 >= shift ? std::min(ymax, x + 1 - shift) : 0;
      for (std::uint64_t y = 0; y < top; ++y) {
        const std::uint64_t d = x - y - shift;
        const std::uint64_t v = vn[x] - vk[y] - vd[d];
        const std::uint64_t f = v == 0 ? 1 : (v == 1 ? p : 0);
        row[y] = un[x] * ik[y] % m * (id[d] * f) % m;
      }
      for (std::uint64_t y = top; y < ymax; ++y) row[y] = 0;
    }
    auto at = [&](std::uint64_t x, std::uint64_t y) { return C[x * X + y]; };
    for (std::uint64_t l = 1; l < p; ++l) {
      const std::uint64_t lhs = at(p, l);
      const std::uint64_t rhs = at(0, 0) * cp[l] % m;
      if (lhs != rhs) fail(1, beta, l, 0, lhs, rhs);
    }
    out.checked += p - 1;
    for (std::uint64_t r = 1; r < p; ++r) {
      const std::uint64_t* g = &C[r * X];
      for (std::uint64_t l = 1; l < p; ++l) {
        const std::uint64_t lhs = at(r + p, l);
        std::uint64_t acc = l <= r ? g[l] : 0;
        for (std::uint64_t j = (l <= r ? 1 : l - r); j <= l; ++j) acc += g[l - j] * cp[j];
        acc %= m;
        if (lhs != acc) fail(2, beta, l, r, lhs, acc);
        if (l <= r) {
          const std::uint64_t lhs3 = at(r + p, l + p);
          std::uint64_t acc3 = g[l];
          for (std::uint64_t j = 1; j <= r - l; ++j) acc3 += g[l + j] * cp[j];
          acc3 %= m;
          if (lhs3 != acc3) fail(3, beta, l, r, lhs3, acc3);
          ++out.checked;
        }
      }
      out.checked += p - 1;
    }
  }
}

template <std::uint64_t p>
bool bipro_fixed(const BinomialTableModP2& table, unsigned s, std::vector<Partial>& parts, unsigned threads) {
  if (table.prime() != p) return false;
  parallel_for(parts.size(), [&](std::size_t a) { bipro_alpha_fixed<p>(table, s, a, parts[a]); }, threads);
  return true;
}

constexpr std::uint64_t kBiproExactLimit = 200;  // p^s up to which sides are exact integers

}  // namespace

IdentityReport verify_bipro(std::uint64_t p_max, unsigned s_max, unsigned threads) {
  std::vector<Partial> all;
  for (auto p : primes_up_to(p_max, 2)) {
    for (unsigned s = 2; s <= s_max; ++s) {
      const std::uint64_t q = pow_u64(p, s - 1), P = q * p;
      std::vector<Partial> parts(q);
      if (P <= kBiproExactLimit) {
        ExactRing ring{BigInt(p) * p};
        parallel_for(q, [&](std::size_t a) { bipro_alpha(ring, p, s, a, parts[a]); }, threads);
      } else {
        BinomialTableModP2 table(p, 2 * P);
        // Spot-check the tables against exact binomials before trusting them.
        for (std::uint64_t n = P - p; n <= P + p; ++n) {
          for (std::uint64_t k = 0; k <= n; k += q / p + 1) {
            if (table(n, k) != reduce_u64(binomial(n, k), p * p)) {
              throw InvariantError("bipro: factorial table disagrees with exact binomial");
            }
          }
        }
        if (!(bipro_fixed<2>(table, s, parts, threads) || bipro_fixed<3>(table, s, parts, threads) ||
              bipro_fixed<5>(table, s, parts, threads) || bipro_fixed<7>(table, s, parts, threads) ||
              bipro_fixed<11>(table, s, parts, threads) || bipro_fixed<13>(table, s, parts, threads))) {
          TableRing ring{&table, p * p};
          parallel_for(q, [&](std::size_t a) { bipro_alpha(ring, p, s, a, parts[a]); }, threads);
        }
      }
      for (auto& x : parts) all.push_back(std::move(x));
    }
  }
  return merge("bipro", all);
}

IdentityReport verify_bip2(unsigned s_max, unsigned threads) {
  std::vector<unsigned> levels;
  for (unsigned s = 2; s <= s_max; ++s) levels.push_back(s);
  std::vector<Partial> parts(levels.size());
  parallel_for(
      levels.size(),
      [&](std::size_t i) {
        const unsigned s = levels[i];
        const std::uint64_t h = pow_u64(2, s - 1), S = 2 * h;
        const BigInt m = 4;
        auto C = [](std::uint64_t n, std::uint64_t k) { return binomial(n, k); };
        for (std::uint64_t a = 0; a < h; ++a) {
          for (std::uint64_t b = 0; b < h; ++b) {
            const std::array<std::pair<BigInt, BigInt>, 5> sides{{
                {C(a + S, b + h), 2 * C(a, b)},
                {C(a + S, b + S), C(a, b)},
                {C(a + h + S, b + h), C(a + h, b + h) + 2 * C(a + h, b)},
                {C(a + h + S, b + S), C(a + h, b) + 2 * C(a + h, b + h)},
                {C(a + h + S, b + h + S), C(a + h, b + h)},
            }};
            for (std::size_t part = 0; part < sides.size(); ++part) {
              ++parts[i].checked;
              if (!congruent(sides[part].first, sides[part].second, m)) {
                parts[i].record({{"part", dec(part + 1)}, {"s", dec(s)}, {"alpha", dec(a)}, {"beta", dec(b)}},
                                sides[part].first.str(), sides[part].second.str(), "4");
              }
            }
          }
        }
      },
      threads);
  return merge("bip2", parts);
}

std::vector<IdentityReport> verify_identity_suite(const std::string& suite, const IdentityBounds& bounds,
                                                  unsigned threads) {
  const bool all = suite == "all";
  if (!all && suite != "abc" && suite != "pzero" && suite != "valpro" && suite != "bipro" && suite != "bip2") {
    throw DomainError("unknown identity suite '" + suite + "'");
  }
  if (bounds.s_max && *bounds.s_max > kDefaultMaxDepth) throw DomainError("identity suite: s bound too large");
  if (bounds.p_max && *bounds.p_max > 1000) throw DomainError("identity suite: p bound too large");
  std::vector<IdentityReport> out;
  if (all || suite == "abc") out.push_back(verify_abc(bounds.p_max.value_or(97), threads));
  if (all || suite == "pzero") out.push_back(verify_pzero(bounds.p_max.value_or(97), threads));
  // Under "all" a single p bound drives every suite, so the binomial sweeps
  // keep their own cap.
  const std::uint64_t p_small = all ? std::min<std::uint64_t>(bounds.p_max.value_or(13), 13) : bounds.p_max.value_or(13);
  const unsigned s_small = bounds.s_max.value_or(4);
  if ((all || suite == "valpro" || suite == "bipro") && BigInt(pow_big(p_small, s_small)) > 10'000'000) {
    throw DomainError("identity suite: p^s bound too large for an exhaustive sweep");
  }
  if (all || suite == "valpro") out.push_back(verify_valpro(p_small, s_small, threads));
  if (all || suite == "bipro") out.push_back(verify_bipro(p_small, s_small, threads));
  if (all || suite == "bip2") out.push_back(verify_bip2(bounds.s_max.value_or(6), threads));
  return out;
}

}  // namespace padicdyn
