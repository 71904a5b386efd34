#include "padicdyn/criteria.hpp"

#include <map>
#include <string>

#include "padicdyn/case_tables.hpp"
#include "padicdyn/dynamics.hpp"

namespace padicdyn {

namespace {

std::uint64_t m(const BigInt& v, std::uint64_t mod) { return reduce_u64(v, mod); }

void need(std::span<const BigInt> v, std::size_t n, const char* who) {
  if (v.size() < n) throw DomainError(std::string(who) + ": needs " + std::to_string(n) + " coefficients");
}

std::map<std::string, BigInt> named(const char* prefix, std::span<const BigInt> v, std::size_t n, std::uint64_t mod) {
  std::map<std::string, BigInt> out;
  for (std::size_t i = 0; i < n; ++i) out[prefix + std::to_string(i)] = m(v[i], mod);
  return out;
}

}  // namespace

CriterionVerdict larin_transitive_mod8(const CubicCoeffs& c) {
  const std::uint64_t A = m(c.A, 8), B = m(c.B, 8), C = m(c.C, 8), D = m(c.D, 8);
  if (A % 4 != 0) return CriterionVerdict::failed("larin", "A = 0 mod 4", {{"A", dec(A)}}, 3);
  if (B % 2 != 0) return CriterionVerdict::failed("larin", "B = 0 mod 2", {{"B", dec(B)}}, 3);
  if ((B + C) % 4 != 1) return CriterionVerdict::failed("larin", "B+C = 1 mod 4", {{"B", dec(B)}, {"C", dec(C)}}, 3);
  if (D % 2 != 1) return CriterionVerdict::failed("larin", "D = 1 mod 2", {{"D", dec(D)}}, 3);
  return CriterionVerdict::passed("larin", 3);
}

CriterionVerdict mahler_ergodic_p2(std::span<const BigInt> a) {
  need(a, 4, "mahler_ergodic_p2");
  const std::uint64_t a0 = m(a[0], 8), a1 = m(a[1], 8), a2 = m(a[2], 8), a3 = m(a[3], 8);
  if (a0 % 2 != 1) return CriterionVerdict::failed("mahler_ergodic_p2", "a0 = 1 mod 2", {{"a0", dec(a0)}}, 3);
  if (a1 % 4 != 1) return CriterionVerdict::failed("mahler_ergodic_p2", "a1 = 1 mod 4", {{"a1", dec(a1)}}, 3);
  if (a2 % 4 != 0) return CriterionVerdict::failed("mahler_ergodic_p2", "a2 = 0 mod 4", {{"a2", dec(a2)}}, 3);
  if (a3 % 8 != 0) return CriterionVerdict::failed("mahler_ergodic_p2", "a3 = 0 mod 8", {{"a3", dec(a3)}}, 3);
  return CriterionVerdict::passed("mahler_ergodic_p2", 3);
}

CriterionVerdict vdp_ergodic_p2(std::span<const BigInt> b) {
  need(b, 4, "vdp_ergodic_p2");
  const std::uint64_t b0 = m(b[0], 4), b1 = m(b[1], 4), b2 = m(b[2], 4), b3 = m(b[3], 4);
  if (b0 % 2 != 1) return CriterionVerdict::failed("vdp_ergodic_p2", "b0 = 1 mod 2", {{"b0", dec(b0)}}, 3);
  if ((b0 + b1) % 4 != 3) {
    return CriterionVerdict::failed("vdp_ergodic_p2", "b0+b1 = 3 mod 4", {{"b0", dec(b0)}, {"b1", dec(b1)}}, 3);
  }
  if (b2 % 2 != 1) return CriterionVerdict::failed("vdp_ergodic_p2", "b2 = 1 mod 2", {{"b2", dec(b2)}}, 3);
  if ((b2 + b3) % 4 != 2) {
    return CriterionVerdict::failed("vdp_ergodic_p2", "b2+b3 = 2 mod 4", {{"b2", dec(b2)}, {"b3", dec(b3)}}, 3);
  }
  return CriterionVerdict::passed("vdp_ergodic_p2", 3);
}

// ---------------------------------------------------------------------------

Deg8Stats deg8_stats(std::span<const BigInt> alpha) {
  need(alpha, 9, "deg8_stats");
  Deg8Stats st;
  for (std::size_t i = 0; i < 9; ++i) st.alpha[i] = m(alpha[i], 9);
  std::int64_t A1 = 0, A2 = 0, D1 = 0, D2 = 0;
  for (std::int64_t i = 1; i <= 8; ++i) {
    const auto a = static_cast<std::int64_t>(st.alpha[i]);
    (i % 2 ? A1 : A2) += a;
    D1 += i * a;
    D2 += (i % 2 ? 1 : -1) * i * a;
  }
  auto m3 = [](std::int64_t v) { return static_cast<std::uint64_t>(((v % 3) + 3) % 3); };
  st.A1 = m3(A1);
  st.A2 = m3(A2);
  st.D1 = m3(D1);
  st.D2 = m3(D2);
  st.selector = {st.alpha[0] % 3, st.A1, st.A2, st.alpha[1] % 3, st.D1, st.D2};
  return st;
}

CriterionVerdict deg8_minimal_p3(std::span<const BigInt> alpha) {
  need(alpha, 9, "deg8_minimal_p3");
  const auto& table = case_table("deg8");
  auto v = table.evaluate(named("a", alpha, 9, 9), "deg8");
  // The selector is also computed directly; the two must agree.
  auto st = deg8_stats(alpha);
  auto sel = table.selector_of(table.bind(named("a", alpha, 9, 9)));
  if (!std::equal(sel.begin(), sel.end(), st.selector.begin())) {
    throw InvariantError("deg8: table selector disagrees with the direct statistics");
  }
  v.depth = 3;
  return v;
}

CriterionVerdict mahler_ergodic_p3(std::span<const BigInt> c) {
  need(c, 9, "mahler_ergodic_p3");
  auto v = case_table("ergbm").evaluate(named("c", c, 9, 9), "mahler_ergodic_p3");
  v.depth = 3;
  return v;
}

CriterionVerdict vdp_ergodic_p3(std::span<const BigInt> b) {
  need(b, 9, "vdp_ergodic_p3");
  auto v = case_table("ergbm2").evaluate(named("b", b, 9, 9), "vdp_ergodic_p3");
  v.depth = 3;
  return v;
}

std::vector<BigInt> normalized_terms(const CoefficientSeries& s, std::size_t count, unsigned j) {
  if (s.size() < count) throw DomainError("normalized_terms: series too short");
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(s.normalized_mod(i, j));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> phi_from_cycle(std::span<const std::uint64_t> cycle, std::uint64_t p) {
  if (cycle.size() != p) throw DomainError("phi: a full cycle lists exactly p residues");
  std::vector<std::uint64_t> phi(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    const std::uint64_t x = cycle[i];
    if (x >= p || phi[x] != p) throw DomainError("phi: cycle must list each residue 0..p-1 once");
    phi[x] = cycle[(i + 1) % p];
  }
  return phi;
}

namespace {

void check_p5_inputs(std::uint64_t p, std::span<const std::uint64_t> phi, std::span<const std::uint64_t> bvec,
                     std::span<const std::uint64_t> lift) {
  require_prime(p);
  if (p < 5) throw DomainError("p5_generate requires p >= 5");
  if (phi.size() != p) throw DomainError("phi must map each of the p residues");
  for (auto y : phi) {
    if (y >= p) throw DomainError("phi values must be residues mod p");
  }
  if (!is_transitive_table(phi)) throw DomainError("phi is not a single p-cycle");
  if (bvec.size() != p) throw DomainError("bvec must hold p entries b_p..b_{2p-1}");
  std::uint64_t prod = 1;
  for (auto b : bvec) {
    if (b == 0 || b >= p) throw DomainError("bvec entries must be nonzero residues mod p");
    prod = prod * b % p;
  }
  if (prod != 1) throw DomainError("bvec product is " + std::to_string(prod) + ", not 1 mod p");
  if (lift.size() != 2 * p) throw DomainError("lift must hold 2p entries");
  for (auto z : lift) {
    if (z >= p) throw DomainError("lift entries must be residues mod p");
  }
}

}  // namespace

P5Result p5_generate(std::uint64_t p, std::span<const std::uint64_t> phi, std::span<const std::uint64_t> bvec,
                     std::span<const std::uint64_t> lift) {
  check_p5_inputs(p, phi, bvec, lift);
  P5Instance inst{p, {phi.begin(), phi.end()}, {bvec.begin(), bvec.end()}, std::vector<std::uint64_t>(2 * p),
                  {lift.begin(), lift.end()}};
  auto& c = inst.c;

  // Step 1: Pascal system sum_{m<=a} C(a,m) c_m = phi(a) mod p.
  for (std::uint64_t a = 0; a < p; ++a) {
    std::uint64_t acc = phi[a];
    for (std::uint64_t k = 0; k < a; ++k) acc = sub_mod(acc, mul_mod(reduce_u64(binomial(a, k), p), c[k], p), p);
    c[a] = acc;
  }
  // Step 2: triangular in c_p..c_{2p-1}.
  for (std::uint64_t i = 0; i < p; ++i) {
    std::uint64_t acc = bvec[i];
    for (std::uint64_t n = 0; n < p; ++n) acc = sub_mod(acc, mul_mod(reduce_u64(lambda_coefficient(n, i, p), p), c[n], p), p);
    for (std::uint64_t n = 0; n < i; ++n) acc = sub_mod(acc, mul_mod(reduce_u64(binomial(i, n), p), c[n + p], p), p);
    c[p + i] = acc;
  }
  // Step 3: lift.
  std::vector<BigInt> terms(2 * p);
  for (std::uint64_t k = 0; k < p; ++k) {
    terms[k] = BigInt(c[k]) + BigInt(p) * lift[k];
    terms[k + p] = BigInt(p) * (BigInt(c[k + p]) + BigInt(p) * lift[k + p]);
  }
  CoefficientSeries series(SeriesKind::mahler, p, 3, terms);

  P5Result res{inst, series, CriterionVerdict::passed("ergp5", 2), 0};
  PadicFunction f = p5_function(res, 2);
  auto vals = values_mod(f, p * p, 2);

  for (std::uint64_t a = 0; a < p; ++a) {
    if (vals[a] % p != phi[a]) throw InvariantError("p5_generate: Step 1 does not reproduce phi");
  }
  std::vector<std::uint64_t> mod_p(p);
  for (std::uint64_t a = 0; a < p; ++a) mod_p[a] = vals[a] % p;
  const bool cond_i = is_transitive_table(mod_p);

  std::uint64_t prod = 1;
  for (std::uint64_t i = 0; i < p; ++i) {
    std::uint64_t B = sub_mod(vals[i + p], vals[i], p * p);
    if (B % p != 0) throw InvariantError("p5_generate: generated function is not 1-Lipschitz");
    if (B / p != bvec[i]) throw InvariantError("p5_generate: Step 2 does not reproduce b_" + std::to_string(i + p));
    prod = prod * (B / p) % p;
  }
  const bool cond_ii = prod == 1;

  std::uint64_t x = 0;
  for (std::uint64_t step = 0; step < p; ++step) x = vals[x];
  res.orbit_value = x;
  const bool cond_iii = x % p == 0 && x != 0;

  if (!cond_i) {
    res.verdict = CriterionVerdict::failed("ergp5", "(i) transitive mod p", {}, 2);
  } else if (!cond_ii) {
    res.verdict = CriterionVerdict::failed("ergp5", "(ii) product", {{"product", dec(prod)}}, 2);
  } else if (!cond_iii) {
    res.verdict = CriterionVerdict::failed("ergp5", "(iii) orbit", {{"f^p(0) mod p^2", dec(x)}}, 2);
  }
  return res;
}

PadicFunction p5_function(const P5Result& r, unsigned depth) {
  const std::uint64_t p = r.instance.p;
  if (depth < 1 || depth > 3) throw DomainError("p5_function: depth must lie in 1..3");
  std::vector<BigInt> terms = r.mahler.terms();
  terms.resize(pow_u64(p, depth), 0);
  return PadicFunction::from_series(CoefficientSeries(SeriesKind::mahler, p, 3, std::move(terms)), depth);
}

// ---------------------------------------------------------------------------

FpMatrix mainp5_matrix(std::uint64_t p) {
  require_prime(p);
  if (p < 3) throw DomainError("mainp5_matrix requires an odd prime");
  const std::size_t n = 2 * p;
  FpMatrix M(p, n, n);
  M.set(0, 0, 1);
  M.set(1, 1, 1);
  M.set(1, p, 1);
  M.set(1, 2 * p - 1, 1);
  for (std::size_t j = 2; j < p; ++j) {
    M.set(j, j, 1);
    M.set(j, j + p - 1, 1);
  }
  for (std::uint64_t i = 0; i < p; ++i) {
    for (std::uint64_t k = 1; k < n; ++k) {
      M.set(p + i, k, static_cast<std::int64_t>(mul_mod(k % p, pow_mod(i, k - 1, p), p)));
    }
  }
  return M;
}

Mainp5Solution mainp5_system(std::uint64_t p, std::span<const std::uint64_t> bigB, std::span<const std::uint64_t> bigD) {
  if (bigB.size() != p || bigD.size() != p) throw DomainError("mainp5_system: need p values of B and of D");
  Mainp5Solution out{mainp5_matrix(p), {}, {}};
  for (auto v : bigB) out.rhs.push_back(v % p);
  for (auto v : bigD) out.rhs.push_back(v % p);
  auto sol = solve_fp(out.matrix, out.rhs);
  if (sol.kind != FpSolution::Kind::unique) throw InvariantError("mainp5_system: matrix is singular mod p");
  out.e = sol.x;
  if (out.matrix.apply(out.e) != out.rhs) throw InvariantError("mainp5_system: residual check failed");
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t g = 0, red = 0, dg = 0;
    for (std::uint64_t k = 0; k < 2 * p; ++k) {
      g = add_mod(g, mul_mod(out.e[k], pow_mod(x, k, p), p), p);
      if (k > 0) dg = add_mod(dg, mul_mod(mul_mod(k % p, out.e[k], p), pow_mod(x, k - 1, p), p), p);
    }
    for (std::uint64_t j = 0; j < p; ++j) red = add_mod(red, mul_mod(out.rhs[j], pow_mod(x, j, p), p), p);
    if (g != red) throw InvariantError("mainp5_system: reduced form fails at x = " + std::to_string(x));
    if (dg != out.rhs[p + x]) throw InvariantError("mainp5_system: derivative fails at x = " + std::to_string(x));
  }
  return out;
}

std::uint64_t AffineFormModP::operator()(std::span<const std::uint64_t> z) const {
  if (z.size() != coef.size()) throw DomainError("linear form: wrong number of variables");
  const std::uint64_t p = modulus;
  std::uint64_t acc = constant;
  for (std::size_t k = 0; k < z.size(); ++k) acc = add_mod(acc, mul_mod(coef[k], z[k] % p, p), p);
  return acc;
}

AffineFormModP mainp5_linear_form_coefficients(std::uint64_t p, std::span<const std::uint64_t> g0) {
  require_prime(p);
  if (g0.empty()) throw DomainError("linear form: empty g0");
  const std::uint64_t p2 = p * p;
  auto eval = [&](std::uint64_t x, std::uint64_t mod) {
    std::uint64_t acc = 0;
    for (auto it = g0.rbegin(); it != g0.rend(); ++it) acc = add_mod(mul_mod(acc, x % mod, mod), *it % mod, mod);
    return acc;
  };
  auto deriv = [&](std::uint64_t x) {
    std::uint64_t acc = 0;
    for (std::size_t k = g0.size(); k-- > 1;) acc = add_mod(mul_mod(acc, x, p), mul_mod(k % p, g0[k] % p, p), p);
    return acc;
  };
  std::vector<std::uint64_t> y(p);
  y[0] = 0;
  for (std::uint64_t j = 1; j < p; ++j) {
    y[j] = eval(y[j - 1], p);
    if (y[j] == 0) throw DomainError("linear form: g0 is not transitive mod p");
  }
  if (eval(y[p - 1], p) != 0) throw DomainError("linear form: g0 is not transitive mod p");
  std::uint64_t prod = 1;
  for (std::uint64_t j = 0; j < p; ++j) prod = mul_mod(prod, deriv(y[j]), p);
  if (prod != 1) throw DomainError("linear form: product of g0' along the orbit is not 1 mod p");
  const std::uint64_t d0 = deriv(0);
  if (d0 == 0) throw DomainError("linear form: g0'(0) is not invertible");

  std::uint64_t x = 0;
  for (std::uint64_t step = 0; step < p; ++step) x = eval(x, p2);
  AffineFormModP l;
  l.modulus = p;
  l.constant = (x / p) % p;
  l.coef.assign(g0.size(), 0);
  l.coef[0] = inv_mod(d0, p);
  std::uint64_t w = 1;  // w_{p-1}
  for (std::uint64_t i = p - 1; i >= 1; --i) {
    std::uint64_t pw = 1;
    for (std::size_t k = 0; k < g0.size(); ++k) {
      l.coef[k] = add_mod(l.coef[k], mul_mod(w, pw, p), p);
      pw = mul_mod(pw, y[i], p);
    }
    w = mul_mod(w, deriv(y[i]), p);
  }
  return l;
}

std::uint64_t mainp5_linear_form(std::uint64_t p, std::span<const std::uint64_t> g0, std::span<const std::uint64_t> z) {
  return mainp5_linear_form_coefficients(p, g0)(z);
}

std::uint64_t orbit_after_p_steps(std::uint64_t p, std::span<const BigInt> coeffs) {
  const std::uint64_t p2 = p * p;
  std::vector<std::uint64_t> c;
  for (const auto& v : coeffs) c.push_back(reduce_u64(v, p2));
  std::uint64_t x = 0;
  for (std::uint64_t step = 0; step < p; ++step) {
    std::uint64_t acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, x, p2), *it, p2);
    x = acc;
  }
  return x;
}

}  // namespace padicdyn
