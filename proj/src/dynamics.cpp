#include "padicdyn/dynamics.hpp"

#include <algorithm>
#include <string>

namespace padicdyn {

CycleReport cycle_report(std::span<const std::uint64_t> table, std::uint64_t p, unsigned n) {
  CycleReport rep;
  rep.p = p;
  rep.n = n;
  const std::size_t size = table.size();
  std::vector<std::int64_t> preimage(size, -1);
  for (std::size_t x = 0; x < size; ++x) {
    const std::uint64_t y = table[x];
    if (y >= size) throw DomainError("cycle_report: table value out of range");
    if (preimage[y] >= 0) {
      rep.collision = std::make_pair(static_cast<std::uint64_t>(preimage[y]), static_cast<std::uint64_t>(x));
      return rep;
    }
    preimage[y] = static_cast<std::int64_t>(x);
  }
  rep.bijective = true;
  std::vector<bool> seen(size, false);
  for (std::size_t start = 0; start < size; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint64_t> cyc;
    for (std::uint64_t x = start; !seen[x]; x = table[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    rep.cycles.push_back(std::move(cyc));
  }
  rep.transitive = rep.cycles.size() == 1;
  return rep;
}

bool is_transitive_table(std::span<const std::uint64_t> table) {
  const std::size_t size = table.size();
  std::uint64_t x = 0;
  for (std::size_t step = 1; step < size; ++step) {
    x = table[x];
    if (x == 0) return false;
  }
  return table[x] == 0;
}

CycleReport bijective_mod(const PadicFunction& f, unsigned n) {
  auto table = reduce(f, n);
  return cycle_report(table, f.prime(), n);
}

CycleReport transitive_mod(const PadicFunction& f, unsigned n) { return bijective_mod(f, n); }

// ---------------------------------------------------------------------------

namespace {

std::uint64_t normalized_mod_p(const CoefficientSeries& s, std::uint64_t m) {
  auto b = s.normalized(m);
  if (!b) {
    auto v = CriterionVerdict::failed("lipschitz", "normalization", {{"index", dec(m)}, {"value", dec(s[m])}});
    throw PreconditionError("coefficient " + std::to_string(m) + " is not divisible by p^floor(log_p m)", v);
  }
  return reduce_u64(*b, s.prime());
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

void require_ud1(const PadicFunction& f, const char* who) {
  auto ud = ud1_check(f);
  if (!ud.verdict.pass) {
    throw PreconditionError(std::string(who) + ": function is not UD_1 at depth " + std::to_string(f.depth()),
                            ud.verdict);
  }
}

}  // namespace

CriterionVerdict measure_preserving_vdp(const CoefficientSeries& series, unsigned depth) {
  if (series.kind() != SeriesKind::van_der_put) throw DomainError("measure_preserving_vdp expects a van der Put series");
  const std::uint64_t p = series.prime();
  if (depth < 1 || series.exponent() < depth || series.size() < pow_u64(p, depth)) {
    throw DomainError("measure_preserving_vdp: series must cover indices < p^depth mod p^depth");
  }
  std::vector<std::uint64_t> first(p);
  std::vector<bool> hit(p, false);
  for (std::uint64_t m = 0; m < p; ++m) {
    first[m] = normalized_mod_p(series, m);
    if (hit[first[m]]) {
      return CriterionVerdict::failed("mp_vdp", "complete_residues", {{"residues", join(first)}, {"index", dec(m)}},
                                      depth);
    }
    hit[first[m]] = true;
  }
  std::uint64_t ps = 1;
  for (unsigned s = 1; s < depth; ++s) {
    ps *= p;
    for (std::uint64_t k = 0; k < ps; ++k) {
      std::vector<std::uint64_t> res(p - 1);
      std::vector<bool> used(p, false);
      bool ok = true;
      for (std::uint64_t l = 1; l < p; ++l) {
        res[l - 1] = normalized_mod_p(series, k + l * ps);
        if (res[l - 1] == 0 || used[res[l - 1]]) ok = false;
        used[res[l - 1]] = true;
      }
      if (!ok) {
        return CriterionVerdict::failed("mp_vdp", "distinct_nonzero",
                                        {{"s", dec(s)}, {"k", dec(k)}, {"residues", join(res)}}, depth);
      }
    }
  }
  return CriterionVerdict::passed("mp_vdp", depth);
}

CriterionVerdict measure_preserving_ud_p2(const PadicFunction& f, bool bundle_ud1) {
  if (f.prime() != 2) throw DomainError("measure_preserving_ud_p2 requires p = 2");
  if (f.depth() < 2) throw DomainError("measure_preserving_ud_p2 requires depth >= 2");
  auto ud = ud1_check(f);
  if (!ud.verdict.pass) {
    if (bundle_ud1) {
      auto v = ud.verdict;
      v.criterion = "mp_ud_p2";
      v.condition = "ud1";
      return v;
    }
    throw PreconditionError("measure_preserving_ud_p2: function is not UD_1", ud.verdict);
  }
  auto B = vdp_coefficients(f, 4, 2);
  const std::uint64_t b0 = reduce_u64(B[0], 2), b1 = reduce_u64(B[1], 2);
  const std::uint64_t b2 = reduce_u64(B[2] / 2, 2), b3 = reduce_u64(B[3] / 2, 2);
  // a_1 odd alone is not enough: x^2 has a_1 = 1 but is not bijective mod 4.
  auto a = mahler_coefficients(f, 4, 2);
  const bool mahler_pass = reduce_u64(a[1], 2) == 1 && a[2] == 0 && a[3] == 0;

  CriterionVerdict v = CriterionVerdict::passed("mp_ud_p2", f.depth());
  if ((b0 + b1) % 2 != 1) {
    v = CriterionVerdict::failed("mp_ud_p2", "b0+b1 odd", {{"b0", dec(b0)}, {"b1", dec(b1)}}, f.depth());
  } else if (b2 != 1) {
    v = CriterionVerdict::failed("mp_ud_p2", "b2 odd", {{"b2", dec(b2)}}, f.depth());
  } else if (b3 != 1) {
    v = CriterionVerdict::failed("mp_ud_p2", "b3 odd", {{"b3", dec(b3)}}, f.depth());
  }
  if (v.pass != mahler_pass) {
    throw InvariantError("measure_preserving_ud_p2: van der Put and Mahler forms disagree");
  }
  return v;
}

BigInt lambda_coefficient(std::uint64_t n, std::uint64_t i, std::uint64_t p) {
  BigInt d = binomial(i + p, n) - binomial(i, n);
  if (d % p != 0) throw InvariantError("lambda coefficient is not integral");
  return d / p;
}

CriterionVerdict measure_preserving_ud_odd(const PadicFunction& f) {
  const std::uint64_t p = f.prime();
  if (p < 3) throw DomainError("measure_preserving_ud_odd requires an odd prime");
  if (f.depth() < 2) throw DomainError("measure_preserving_ud_odd requires depth >= 2");
  require_ud1(f, "measure_preserving_ud_odd");

  auto vals = values_mod(f, p, 1);
  std::vector<bool> hit(p, false);
  for (std::uint64_t x = 0; x < p; ++x) {
    if (hit[vals[x]]) {
      return CriterionVerdict::failed("mp_ud_odd", "complete_residues", {{"values", join(vals)}, {"index", dec(x)}},
                                      f.depth());
    }
    hit[vals[x]] = true;
  }
  auto a = mahler_coefficients(f, 2 * p, 2);
  auto B = vdp_coefficients(f, 2 * p, 2);
  std::vector<std::uint64_t> c(2 * p);
  for (std::uint64_t n = 0; n < 2 * p; ++n) c[n] = a.normalized_mod(n, 1);

  for (std::uint64_t i = 0; i < p; ++i) {
    BigInt acc = 0;
    for (std::uint64_t n = 0; n < p; ++n) acc += lambda_coefficient(n, i, p) * c[n];
    for (std::uint64_t n = 0; n <= i; ++n) acc += binomial(i, n) * c[n + p];
    const std::uint64_t li = reduce_u64(acc, p);
    const std::uint64_t bi = B.normalized_mod(i + p, 1);
    if (li != bi) {
      throw InvariantError("measure_preserving_ud_odd: lambda form " + std::to_string(li) + " != b_" +
                           std::to_string(i + p) + " = " + std::to_string(bi));
    }
    if (li == 0) {
      return CriterionVerdict::failed("mp_ud_odd", "b_{i+p} nonzero", {{"i", dec(i)}, {"value", dec(li)}},
                                      f.depth());
    }
  }
  return CriterionVerdict::passed("mp_ud_odd", f.depth());
}

// ---------------------------------------------------------------------------

McriReport mcri_conditions(const PadicFunction& f, std::optional<unsigned> depth_opt) {
  const unsigned depth = depth_opt.value_or(f.depth());
  const std::uint64_t p = f.prime();
  if (depth < 3 || depth > f.depth()) throw DomainError("mcri_conditions: depth must lie in 3..function depth");
  const PadicFunction g = f.at_depth(depth);
  require_ud1(g, "mcri_conditions");

  McriReport rep;
  auto level1 = transitive_mod(g, 1);
  rep.transitive_mod_p = level1.transitive
                             ? CriterionVerdict::passed("mcri1", 1)
                             : CriterionVerdict::failed("mcri1", "transitive_mod_p", {}, 1);

  auto B = vdp_coefficients(g, pow_u64(p, depth), depth);
  rep.measure_preserving = measure_preserving_vdp(B, depth);
  rep.measure_preserving.criterion = "mcri2";

  rep.orbit = CriterionVerdict::passed("mcri3", depth);
  std::uint64_t ps = 1;
  for (unsigned s = 1; s < depth; ++s) {
    ps *= p;
    std::uint64_t x = 0;
    for (std::uint64_t step = 0; step < ps; ++step) x = evaluate_u64(g, x, s + 1);
    if (x == 0) {
      rep.orbit = CriterionVerdict::failed("mcri3", "orbit", {{"s", dec(s)}, {"value", dec(x)}}, depth);
      break;
    }
  }

  std::uint64_t reduced = 1;
  for (std::uint64_t j = 0; j < p; ++j) reduced = reduced * B.normalized_mod(j + p, 1) % p;
  rep.product_reduced = reduced;

  rep.product = CriterionVerdict::passed("mcri4", depth);
  ps = 1;
  for (unsigned s = 1; s < depth; ++s) {
    ps *= p;
    std::uint64_t prod = 1;
    for (std::uint64_t j = 0; j < ps; ++j) {
      const BigInt& term = B[j + ps];
      if (!valuation(term, p).at_least(s)) {
        throw InvariantError("mcri_conditions: B_" + std::to_string(j + ps) + " not divisible by p^" +
                             std::to_string(s) + " for a UD_1 function");
      }
      prod = prod * reduce_u64(term / pow_big(p, s), p) % p;
    }
    rep.product_per_s.push_back(prod);
    if (prod != reduced) {
      throw InvariantError("mcri_conditions: product at s = " + std::to_string(s) + " is " + std::to_string(prod) +
                           ", reduced form gives " + std::to_string(reduced));
    }
    if (prod != 1 && rep.product.pass) {
      rep.product = CriterionVerdict::failed("mcri4", "product", {{"s", dec(s)}, {"value", dec(prod)}}, depth);
    }
  }
  if (rep.product.pass && reduced != 1) {
    rep.product = CriterionVerdict::failed("mcri4", "reduced_product", {{"value", dec(reduced)}}, depth);
  }
  rep.redundancy_held = !(rep.transitive_mod_p.pass && rep.product.pass) || rep.measure_preserving.pass;
  return rep;
}

unsigned mu_for_prime(std::uint64_t p) {
  require_prime(p);
  return p <= 3 ? 3 : 2;
}

const char* to_string(ErgodicityDecision::Method m) {
  switch (m) {
    case ErgodicityDecision::Method::oracle: return "oracle";
    case ErgodicityDecision::Method::mainR: return "mainR";
    case ErgodicityDecision::Method::closed_form: return "closed-form";
  }
  return "?";
}

ErgodicityDecision ergodic_ud(const PadicFunction& f, const ErgodicOptions& options) {
  const unsigned mu = options.unsafe_mu_override.value_or(mu_for_prime(f.prime()));
  if (mu < 1) throw DomainError("ergodic_ud: mu must be positive");
  if (f.depth() < std::max(mu, 2u)) {
    throw DomainError("ergodic_ud: depth " + std::to_string(f.depth()) + " is below the certification level " +
                      std::to_string(mu));
  }
  ErgodicityDecision d;
  d.method = ErgodicityDecision::Method::mainR;
  d.mu = mu;
  auto ud = ud1_check(f);
  d.verdicts.push_back(ud.verdict);
  if (!ud.verdict.pass) throw PreconditionError("ergodic_ud: function is not UD_1", ud.verdict);
  d.cycles = transitive_mod(f, mu);
  d.ergodic = d.cycles->transitive;
  d.verdicts.push_back(d.ergodic ? CriterionVerdict::passed("transitive_mod_p^mu", mu)
                                 : CriterionVerdict::failed("transitive_mod_p^mu", "transitive", {}, mu));
  return d;
}

ErgodicityDecision ergodic_oracle(const PadicFunction& f, unsigned n) {
  if (n < 1 || n > f.depth()) throw DomainError("ergodic_oracle: level outside 1..depth");
  ErgodicityDecision d;
  d.method = ErgodicityDecision::Method::oracle;
  d.mu = n;
  d.ergodic = true;
  for (unsigned k = 1; k <= n; ++k) {
    auto rep = transitive_mod(f, k);
    if (!rep.transitive) {
      d.ergodic = false;
      d.verdicts.push_back(CriterionVerdict::failed("oracle", "transitive", {{"level", dec(k)}}, k));
      d.cycles = std::move(rep);
      return d;
    }
    if (k == n) d.cycles = std::move(rep);
  }
  d.verdicts.push_back(CriterionVerdict::passed("oracle", n));
  return d;
}

}  // namespace padicdyn
