#include "padicdyn/funcspace.hpp"

#include <cstdlib>
#include <string>

namespace padicdyn {

unsigned max_depth() {
  if (const char* env = std::getenv("PADIC_DYN_MAX_DEPTH")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("PADIC_DYN_MAX_DEPTH is not a positive integer: ") + env);
  }
  return kDefaultMaxDepth;
}

const char* to_string(SeriesKind kind) { return kind == SeriesKind::mahler ? "mahler" : "vdp"; }

const char* to_string(PadicFunction::Form form) {
  switch (form) {
    case PadicFunction::Form::polynomial: return "polynomial";
    case PadicFunction::Form::table: return "table";
    case PadicFunction::Form::mahler: return "mahler";
    case PadicFunction::Form::van_der_put: return "vdp";
  }
  return "?";
}

// ---------------------------------------------------------------------------

CoefficientSeries::CoefficientSeries(SeriesKind kind, std::uint64_t p, unsigned k, std::vector<BigInt> terms)
    : kind_(kind), p_(p), k_(k), terms_(std::move(terms)) {
  require_prime(p);
  if (k < 1) throw DomainError("CoefficientSeries: exponent must be >= 1");
  BigInt m = modulus();
  for (auto& t : terms_) {
    t %= m;
    if (t < 0) t += m;
  }
}

std::optional<BigInt> CoefficientSeries::normalized(std::size_t i) const {
  unsigned e = floor_log(static_cast<std::uint64_t>(i), p_);
  if (e >= k_) return BigInt(0);
  BigInt scale = pow_big(p_, e);
  if (terms_.at(i) % scale != 0) return std::nullopt;
  return terms_[i] / scale;
}

std::uint64_t CoefficientSeries::normalized_mod(std::size_t i, unsigned j) const {
  unsigned e = floor_log(static_cast<std::uint64_t>(i), p_);
  if (e + j > k_) {
    throw DomainError("normalized coefficient " + std::to_string(i) + " is not determined mod p^" + std::to_string(j));
  }
  auto v = normalized(i);
  if (!v) throw DomainError("coefficient " + std::to_string(i) + " is not divisible by p^" + std::to_string(e));
  return reduce_u64(*v, pow_u64(p_, j));
}

// ---------------------------------------------------------------------------

namespace {

void check_depth(std::uint64_t p, unsigned depth) {
  require_prime(p);
  if (depth < 1) throw DomainError("depth must be >= 1");
  if (depth > max_depth()) {
    throw DomainError("depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(max_depth()));
  }
  (void)pow_u64(p, depth);
}

}  // namespace

PadicFunction::PadicFunction(std::uint64_t p, unsigned depth,
                             std::variant<IntPolynomial, ValueTable, CoefficientSeries> data)
    : p_(p), depth_(depth), modulus_(0), data_(std::move(data)) {
  check_depth(p, depth);
  modulus_ = pow_u64(p, depth);
}

PadicFunction PadicFunction::polynomial(std::uint64_t p, unsigned depth, std::vector<BigInt> coefficients) {
  while (coefficients.size() > 1 && coefficients.back() == 0) coefficients.pop_back();
  if (coefficients.empty()) coefficients.push_back(0);
  return PadicFunction(p, depth, IntPolynomial{std::move(coefficients)});
}

PadicFunction PadicFunction::table(std::uint64_t p, unsigned depth, std::vector<std::uint64_t> values) {
  check_depth(p, depth);
  std::uint64_t m = pow_u64(p, depth);
  if (values.size() != m) {
    throw DomainError("value table must have exactly p^N = " + std::to_string(m) + " entries, got " +
                      std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= m) throw DomainError("value table entry " + std::to_string(i) + " is not reduced mod p^N");
  }
  return PadicFunction(p, depth, ValueTable{std::move(values)});
}

PadicFunction PadicFunction::from_series(CoefficientSeries series, unsigned depth) {
  check_depth(series.prime(), depth);
  if (depth > series.exponent()) {
    throw DomainError("series known mod p^" + std::to_string(series.exponent()) + " cannot define depth " +
                      std::to_string(depth));
  }
  std::uint64_t need = pow_u64(series.prime(), depth);
  if (series.size() < need) {
    throw DomainError("series needs at least p^depth = " + std::to_string(need) + " terms, got " +
                      std::to_string(series.size()));
  }
  std::uint64_t p = series.prime();
  return PadicFunction(p, depth, std::move(series));
}

PadicFunction::Form PadicFunction::form() const {
  if (polynomial_data()) return Form::polynomial;
  if (table_data()) return Form::table;
  return series_data()->kind() == SeriesKind::mahler ? Form::mahler : Form::van_der_put;
}

PadicFunction PadicFunction::at_depth(unsigned depth) const {
  if (depth > depth_) throw DomainError("at_depth: cannot raise the depth of a function");
  if (auto* t = table_data()) {
    std::uint64_t m = pow_u64(p_, depth);
    std::vector<std::uint64_t> v(t->values.begin(), t->values.begin() + static_cast<std::ptrdiff_t>(m));
    for (auto& x : v) x %= m;
    return table(p_, depth, std::move(v));
  }
  return PadicFunction(p_, depth, data_);
}

// ---------------------------------------------------------------------------

namespace {

void check_k(const PadicFunction& f, unsigned k) {
  if (k < 1 || k > f.depth()) {
    throw DomainError("evaluation exponent " + std::to_string(k) + " outside 1.." + std::to_string(f.depth()));
  }
}

BigInt eval_exact(const PadicFunction& f, const BigInt& x) {
  const std::uint64_t p = f.prime();
  if (auto* poly = f.polynomial_data()) {
    BigInt acc = 0;
    for (auto it = poly->coefficients.rbegin(); it != poly->coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  if (auto* t = f.table_data()) {
    return t->values[reduce_u64(x, f.modulus())];
  }
  const auto& s = *f.series_data();
  if (s.kind() == SeriesKind::mahler) {
    BigInt acc = 0, c = 1;  // c = C(x, n)
    for (std::size_t n = 0; n < s.size(); ++n) {
      if (BigInt(n) > x) break;
      acc += c * s[n];
      c = c * (x - n) / (n + 1);
    }
    return acc;
  }
  // van der Put: sum of B_m over the prefixes m of x whose top digit is nonzero.
  BigInt acc = 0;
  BigInt low = 1;  // p^j
  for (unsigned j = 0;; ++j) {
    if (j > 0 && low > x) break;
    BigInt m = x % (low * p);
    if (j == 0 || m >= low) {
      if (m < s.size()) acc += s[m.convert_to<std::size_t>()];
    }
    low *= p;
  }
  return acc;
}

}  // namespace

Residue evaluate(const PadicFunction& f, const BigInt& x, unsigned k) {
  check_k(f, k);
  if (x < 0) throw DomainError("evaluate: points of Z_p are natural representatives");
  return Residue(eval_exact(f, x), f.prime(), k);
}

std::uint64_t evaluate_u64(const PadicFunction& f, std::uint64_t x, unsigned k) {
  check_k(f, k);
  const std::uint64_t m = pow_u64(f.prime(), k);
  if (auto* poly = f.polynomial_data()) {
    std::uint64_t xr = x % m, acc = 0;
    for (auto it = poly->coefficients.rbegin(); it != poly->coefficients.rend(); ++it) {
      acc = add_mod(mul_mod(acc, xr, m), reduce_u64(*it, m), m);
    }
    return acc;
  }
  if (auto* t = f.table_data()) return t->values[x % f.modulus()] % m;
  return reduce_u64(eval_exact(f, BigInt(x)), m);
}

std::vector<std::uint64_t> values_mod(const PadicFunction& f, std::uint64_t count, unsigned k) {
  check_k(f, k);
  const std::uint64_t p = f.prime();
  const std::uint64_t m = pow_u64(p, k);
  std::vector<std::uint64_t> out(count);
  if (auto* poly = f.polynomial_data()) {
    std::vector<std::uint64_t> c;
    for (const auto& a : poly->coefficients) c.push_back(reduce_u64(a, m));
    for (std::uint64_t x = 0; x < count; ++x) {
      std::uint64_t xr = x % m, acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, xr, m), *it, m);
      out[x] = acc;
    }
    return out;
  }
  if (auto* t = f.table_data()) {
    for (std::uint64_t x = 0; x < count; ++x) out[x] = t->values[x % f.modulus()] % m;
    return out;
  }
  const auto& s = *f.series_data();
  std::vector<std::uint64_t> terms;
  for (const auto& a : s.terms()) terms.push_back(reduce_u64(a, m));
  if (s.kind() == SeriesKind::mahler) {
    // Newton forward scheme: d[n] holds Delta^n f(x); shifting x by one adds
    // the next difference into each entry.
    std::vector<std::uint64_t> d = terms;
    for (std::uint64_t x = 0; x < count; ++x) {
      out[x] = d.empty() ? 0 : d[0];
      for (std::size_t n = 0; n + 1 < d.size(); ++n) d[n] = add_mod(d[n], d[n + 1], m);
    }
    return out;
  }
  for (std::uint64_t x = 0; x < count; ++x) {
    std::uint64_t acc = 0;
    unsigned __int128 low = 1;
    for (unsigned j = 0;; ++j) {
      if (j > 0 && low > x) break;
      std::uint64_t mm = static_cast<std::uint64_t>(x % (low * p));
      if ((j == 0 || mm >= low) && mm < terms.size()) acc = add_mod(acc, terms[mm], m);
      low *= p;
    }
    out[x] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

CriterionVerdict table_lipschitz(const ValueTable& t, std::uint64_t p, unsigned depth, unsigned max_level) {
  for (unsigned n = 1; n <= max_level && n <= depth; ++n) {
    std::uint64_t pn = pow_u64(p, n);
    for (std::uint64_t x = pn; x < t.values.size(); ++x) {
      std::uint64_t y = x % pn;
      if (t.values[x] % pn != t.values[y] % pn) {
        return CriterionVerdict::failed("lipschitz", "L1",
                                        {{"x", dec(x)}, {"y", dec(y)}, {"n", dec(n)},
                                         {"fx", dec(t.values[x])}, {"fy", dec(t.values[y])}},
                                        depth);
      }
    }
  }
  return CriterionVerdict::passed("lipschitz", depth);
}

}  // namespace

CriterionVerdict lipschitz_check(const CoefficientSeries& series) {
  const std::uint64_t p = series.prime();
  const unsigned k = series.exponent();
  for (std::size_t i = 0; i < series.size(); ++i) {
    unsigned need = std::min(floor_log(static_cast<std::uint64_t>(i), p), k);
    if (!valuation(series[i], p).at_least(need)) {
      return CriterionVerdict::failed(
          "lipschitz", series.kind() == SeriesKind::mahler ? "mahler_valuation" : "vdp_valuation",
          {{"index", dec(i)}, {"required", dec(need)}, {"actual", valuation(series[i], p).to_string()}}, k);
    }
  }
  return CriterionVerdict::passed("lipschitz", k);
}

CriterionVerdict lipschitz_check(const PadicFunction& f) {
  if (f.polynomial_data()) return CriterionVerdict::passed("lipschitz", f.depth());
  if (auto* t = f.table_data()) return table_lipschitz(*t, f.prime(), f.depth(), f.depth());
  auto v = lipschitz_check(*f.series_data());
  v.depth = f.depth();
  return v;
}

std::vector<std::uint64_t> reduce(const PadicFunction& f, unsigned n, bool check) {
  if (n < 1 || n > f.depth()) throw DomainError("reduce: level outside 1..depth");
  if (check) {
    CriterionVerdict v = CriterionVerdict::passed("lipschitz");
    if (auto* t = f.table_data()) {
      v = table_lipschitz(*t, f.prime(), f.depth(), n);
    } else if (auto* s = f.series_data()) {
      v = lipschitz_check(*s);
    }
    if (!v.pass) throw NotLipschitzError("reduction mod p^" + std::to_string(n) + " is not well defined", v);
  }
  return values_mod(f, pow_u64(f.prime(), n), n);
}

// ---------------------------------------------------------------------------

namespace {

void check_coefficient_request(const PadicFunction& f, std::uint64_t count, unsigned k) {
  check_k(f, k);
  if (count > f.modulus()) {
    throw DomainError("coefficient count " + std::to_string(count) + " exceeds p^depth = " +
                      std::to_string(f.modulus()));
  }
}

}  // namespace

CoefficientSeries vdp_coefficients(const PadicFunction& f, std::uint64_t count, unsigned k) {
  check_coefficient_request(f, count, k);
  const std::uint64_t p = f.prime();
  const std::uint64_t m = pow_u64(p, k);
  auto vals = values_mod(f, count, k);
  std::vector<BigInt> terms(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    terms[i] = i < p ? vals[i] : sub_mod(vals[i], vals[m_minus(i, p)], m);
  }
  return CoefficientSeries(SeriesKind::van_der_put, p, k, std::move(terms));
}

CoefficientSeries mahler_coefficients(const PadicFunction& f, std::uint64_t count, unsigned k) {
  check_coefficient_request(f, count, k);
  const std::uint64_t m = pow_u64(f.prime(), k);
  auto d = values_mod(f, count, k);
  for (std::uint64_t n = 1; n < count; ++n) {
    for (std::uint64_t i = count - 1; i >= n; --i) d[i] = sub_mod(d[i], d[i - 1], m);
  }
  std::vector<BigInt> terms(d.begin(), d.end());
  return CoefficientSeries(SeriesKind::mahler, f.prime(), k, std::move(terms));
}

// ---------------------------------------------------------------------------

namespace {

// a_n(m) from a row of binomials C(n, 0..n) (exact or reduced, same formula).
BigInt anm_from_row(const std::vector<BigInt>& row, std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  if (n < m) return 0;
  const std::uint64_t step = pow_u64(p, floor_log(m, p) + 1);
  BigInt acc = 0;
  for (std::uint64_t idx = m; idx <= n; idx += step) {
    if ((n - idx) % 2 == 0) {
      acc += row[idx];
    } else {
      acc -= row[idx];
    }
  }
  return acc;
}

std::vector<BigInt> exact_row(std::uint64_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::uint64_t i = 0; i < n; ++i) row[i + 1] = row[i] * (n - i) / (i + 1);
  return row;
}

// Pascal's rule applied in place: row n -> row n+1, reduced mod `modulus`.
void next_pascal_row(std::vector<BigInt>& row, const BigInt& modulus) {
  row.push_back(0);
  for (std::size_t i = row.size() - 1; i > 0; --i) {
    row[i] += row[i - 1];
    if (row[i] >= modulus) row[i] -= modulus;
  }
}

}  // namespace

BigInt basis_change_anm(std::uint64_t n, std::uint64_t m, std::uint64_t p) {
  require_prime(p);
  if (n < m) return 0;
  return anm_from_row(exact_row(n), n, m, p);
}

BigInt basis_change_Amn(std::uint64_t m, std::uint64_t n, std::uint64_t p) {
  require_prime(p);
  if (m < p) return binomial(m, n);
  return binomial(m, n) - binomial(m_minus(m, p), n);
}

CoefficientSeries vdp_to_mahler(const CoefficientSeries& vdp, std::size_t up_to) {
  if (vdp.kind() != SeriesKind::van_der_put) throw DomainError("vdp_to_mahler expects a van der Put series");
  if (vdp.size() < up_to) throw DomainError("vdp_to_mahler: input shorter than requested length");
  const std::uint64_t p = vdp.prime();
  const BigInt modulus = vdp.modulus();
  std::vector<BigInt> out(up_to);
  std::vector<BigInt> row{1};  // C(n, .) mod p^k
  for (std::size_t n = 0; n < up_to; ++n) {
    if (n > 0) next_pascal_row(row, modulus);
    BigInt acc = 0;
    for (std::size_t m = 0; m <= n; ++m) {
      if (vdp[m] == 0) continue;
      acc += anm_from_row(row, n, m, p) * vdp[m];
    }
    out[n] = acc;
  }
  return CoefficientSeries(SeriesKind::mahler, p, vdp.exponent(), std::move(out));
}

CoefficientSeries mahler_to_vdp(const CoefficientSeries& mahler, std::size_t up_to) {
  if (mahler.kind() != SeriesKind::mahler) throw DomainError("mahler_to_vdp expects a Mahler series");
  if (mahler.size() < up_to) throw DomainError("mahler_to_vdp: input shorter than requested length");
  const std::uint64_t p = mahler.prime();
  const BigInt modulus = mahler.modulus();
  // B_m = sum_n (C(m,n) - C(m_-,n)) a_n, split as S(m) - S(m_-) with
  // S(x) = sum_{n <= x} C(x, n) a_n accumulated row by row.
  std::vector<BigInt> partial(up_to);
  std::vector<BigInt> out(up_to);
  std::vector<BigInt> row{1};
  for (std::size_t m = 0; m < up_to; ++m) {
    if (m > 0) next_pascal_row(row, modulus);
    BigInt s = 0;
    for (std::size_t n = 0; n <= m; ++n) s += row[n] * mahler[n];
    partial[m] = s % modulus;
    out[m] = m < p ? partial[m] : partial[m] - partial[m_minus(static_cast<std::uint64_t>(m), p)];
  }
  return CoefficientSeries(SeriesKind::van_der_put, p, mahler.exponent(), std::move(out));
}

bool van_der_put_chi(std::uint64_t m, std::uint64_t x, std::uint64_t p) {
  std::uint64_t ball = pow_u64(p, floor_log(m, p) + 1);
  return x % ball == m % ball;
}

}  // namespace padicdyn

namespace padicdyn {

ModPolynomial polynomial_from_mahler(const CoefficientSeries& mahler) {
  if (mahler.kind() != SeriesKind::mahler) throw DomainError("polynomial_from_mahler expects a Mahler series");
  const std::uint64_t p = mahler.prime();
  const std::size_t n = mahler.size();
  if (n == 0) return {{BigInt(0)}, mahler.exponent()};
  BigInt denom = 1;  // (n-1)!
  for (std::size_t i = 2; i < n; ++i) denom *= i;
  const std::uint64_t v = valuation(denom, p).is_infinite() ? 0 : valuation(denom, p).exponent();
  if (v >= mahler.exponent()) throw DomainError("polynomial_from_mahler: series precision too low");
  const unsigned k = mahler.exponent() - static_cast<unsigned>(v);

  std::vector<BigInt> num(n, 0);
  std::vector<BigInt> falling{1};  // coefficients of x (x-1) ... (x-m+1)
  BigInt fact = 1;                 // m!
  for (std::size_t m = 0; m < n; ++m) {
    if (m > 0) {
      fact *= m;
      std::vector<BigInt> next(falling.size() + 1, 0);
      for (std::size_t i = 0; i < falling.size(); ++i) {
        next[i + 1] += falling[i];
        next[i] -= falling[i] * (m - 1);
      }
      falling = std::move(next);
    }
    const BigInt scale = mahler[m] * (denom / fact);
    for (std::size_t i = 0; i < falling.size(); ++i) num[i] += scale * falling[i];
  }
  const BigInt pv = pow_big(p, static_cast<unsigned>(v));
  const BigInt unit = denom / pv;
  const Residue inv = Residue(unit, p, k).inverse();
  ModPolynomial out{{}, k};
  for (std::size_t i = 0; i < n; ++i) {
    if (num[i] % pv != 0) {
      throw DomainError("polynomial_from_mahler: coefficient of x^" + std::to_string(i) + " is not p-integral");
    }
    out.coefficients.push_back((Residue(num[i] / pv, p, k) * inv).value());
  }
  while (out.coefficients.size() > 1 && out.coefficients.back() == 0) out.coefficients.pop_back();
  return out;
}

}  // namespace padicdyn
