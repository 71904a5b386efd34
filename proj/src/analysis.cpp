#include "padicdyn/analysis.hpp"

#include <string>

namespace padicdyn {

Ud1Result ud1_check(const PadicFunction& f, std::optional<unsigned> s_max_opt) {
  const std::uint64_t p = f.prime();
  const unsigned s_max = s_max_opt.value_or(f.depth());
  if (s_max < 2 || s_max > f.depth()) {
    throw DomainError("ud1_check: s_max must lie in 2..depth, got " + std::to_string(s_max));
  }
  const auto table = reduce(f, s_max);
  const std::uint64_t top = pow_u64(p, s_max);
  const std::uint64_t p2 = p * p;

  DerivedFunction d{p, std::vector<std::uint64_t>(p)};
  for (std::uint64_t r = 0; r < p; ++r) {
    std::uint64_t diff = sub_mod(table[r + p] % p2, table[r] % p2, p2);
    d.values[r] = (diff / p) % p;
  }

  // The congruence at level s only sees u mod p^{s+1}, so u < p^{s+1} covers
  // every u < p^{s_max}.
  std::uint64_t ps = 1;
  for (unsigned s = 1; s < s_max; ++s) {
    ps *= p;
    const std::uint64_t mod = ps * p;
    for (std::uint64_t u = 0; u < mod; ++u) {
      const std::uint64_t fu = table[u] % mod;
      for (std::uint64_t h = 1; h < p; ++h) {
        std::uint64_t lhs = table[(u + ps * h) % top] % mod;
        std::uint64_t rhs = add_mod(fu, mul_mod(ps * h % mod, d.at(u), mod), mod);
        if (lhs != rhs) {
          return {CriterionVerdict::failed("ud1", "congruence",
                                           {{"u", dec(u)}, {"s", dec(s)}, {"h", dec(h)},
                                            {"lhs", dec(lhs)}, {"rhs", dec(rhs)}},
                                           s_max),
                  std::nullopt};
        }
      }
    }
  }
  return {CriterionVerdict::passed("ud1", s_max), std::move(d)};
}

CriterionVerdict vdp_ud1_relations_check(const CoefficientSeries& series, unsigned depth) {
  if (series.kind() != SeriesKind::van_der_put) throw DomainError("vdp_ud1_relations_check expects a van der Put series");
  const std::uint64_t p = series.prime();
  if (depth < 2) throw DomainError("vdp_ud1_relations_check: depth must be >= 2");
  if (series.exponent() < depth || series.size() < pow_u64(p, depth)) {
    throw DomainError("vdp_ud1_relations_check: series must cover indices < p^depth mod p^depth");
  }
  auto B = [&](std::uint64_t m) { return series[m]; };

  std::vector<std::uint64_t> d(p);
  for (std::uint64_t r = 0; r < p; ++r) {
    if (!valuation(B(r + p), p).at_least(1)) {
      return CriterionVerdict::failed("vdp_ud1", "lipschitz",
                                      {{"index", dec(r + p)}, {"value", dec(B(r + p))}}, depth);
    }
    d[r] = reduce_u64(B(r + p) / p, p);
  }

  BigInt ps = 1;
  for (unsigned s = 1; s < depth; ++s) {
    ps *= p;
    const BigInt mod = ps * p;
    const std::uint64_t ps_u = ps.convert_to<std::uint64_t>();
    for (std::uint64_t r = 0; r < ps_u; ++r) {
      const BigInt base = B(r + ps_u) % mod;
      for (std::uint64_t l = 1; l < p; ++l) {
        BigInt lhs = B(r + l * ps_u) % mod;
        BigInt rhs = (BigInt(l) * ps * d[r % p]) % mod;
        if (lhs == rhs) continue;
        BigInt prop = (BigInt(l) * base) % mod;
        const bool proportional = lhs != prop;  // never true for l = 1
        return CriterionVerdict::failed("vdp_ud1", proportional ? "proportional" : "cross_level",
                                        {{"r", dec(r)}, {"s", dec(s)}, {"l", dec(l)},
                                         {"lhs", dec(lhs)}, {"rhs", dec(proportional ? prop : rhs)}},
                                        depth);
      }
    }
  }
  return CriterionVerdict::passed("vdp_ud1", depth);
}

CriterionVerdict mahler_ud1_predicate(const CoefficientSeries& series) {
  if (series.kind() != SeriesKind::mahler) throw DomainError("mahler_ud1_predicate expects a Mahler series");
  const std::uint64_t p = series.prime();
  const unsigned k = series.exponent();
  for (std::uint64_t n = p; n < series.size(); ++n) {
    const unsigned s = floor_log(n, p);
    const std::uint64_t lead = n / pow_u64(p, s);
    const bool constrained = p == 2 ? s >= 2 : ((lead >= 2 && s >= 1) || (lead == 1 && s >= 2));
    if (!constrained) continue;
    const unsigned need = std::min(s + 1, k);
    Valuation v = valuation(series[n], p);
    if (!v.at_least(need)) {
      return CriterionVerdict::failed("mahler_ud1", p == 2 ? "leading_one" : (lead >= 2 ? "leading_digit" : "leading_one"),
                                      {{"n", dec(n)}, {"s", dec(s)}, {"required", dec(need)},
                                       {"actual", v.to_string()}},
                                      k);
    }
  }
  return CriterionVerdict::passed("mahler_ud1", k);
}

Ud1Crosscheck ud1_equivalence_crosscheck(const PadicFunction& f, std::optional<unsigned> depth_opt) {
  const unsigned depth = depth_opt.value_or(f.depth());
  auto direct = ud1_check(f, depth);
  auto series = mahler_coefficients(f, pow_u64(f.prime(), depth), depth);
  return {direct.verdict, mahler_ud1_predicate(series)};
}

}  // namespace padicdyn
