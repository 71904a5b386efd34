#include "padicdyn/arith.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace padicdyn {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
  if (p > (1ULL << 31)) throw DomainError("prime exceeds 2^31: " + std::to_string(p));
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (e != 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r != 1) throw DomainError("not invertible: " + std::to_string(a) + " mod " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_u64(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t pow_u64(std::uint64_t p, unsigned k) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (result > ((std::uint64_t{1} << 62) - 1) / p) {
      throw DomainError("p^k does not fit in a machine word: p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
    result *= p;
  }
  return result;
}

BigInt pow_big(std::uint64_t p, unsigned k) {
  return boost::multiprecision::pow(BigInt(p), k);
}

unsigned floor_log(const BigInt& m, std::uint64_t p) {
  unsigned e = 0;
  BigInt q = m / p;
  while (q != 0) {
    ++e;
    q /= p;
  }
  return e;
}

unsigned floor_log(std::uint64_t m, std::uint64_t p) {
  unsigned e = 0;
  for (std::uint64_t q = m / p; q != 0; q /= p) ++e;
  return e;
}

std::uint64_t Valuation::exponent() const {
  if (!finite_) throw std::logic_error("exponent() of the infinite valuation");
  return exponent_;
}

std::string Valuation::to_string() const {
  return finite_ ? std::to_string(exponent_) : std::string("inf");
}

Valuation valuation(const BigInt& n, std::uint64_t p) {
  require_prime(p);
  if (n == 0) return Valuation::infinity();
  BigInt q = boost::multiprecision::abs(n);
  std::uint64_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  return Valuation(e);
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::vector<std::uint64_t> p_digits(const BigInt& m, std::uint64_t p) {
  if (m < 0) throw DomainError("p_digits of a negative integer");
  std::vector<std::uint64_t> digits;
  BigInt q = m;
  while (q != 0) {
    digits.push_back((q % p).convert_to<std::uint64_t>());
    q /= p;
  }
  return digits;
}

std::uint64_t digit_sum(const BigInt& m, std::uint64_t p) {
  std::uint64_t s = 0;
  if (m >= 0 && m <= std::numeric_limits<std::uint64_t>::max()) {
    for (auto x = m.convert_to<std::uint64_t>(); x > 0; x /= p) s += x % p;
    return s;
  }
  for (auto d : p_digits(m, p)) s += d;
  return s;
}

BigInt m_minus(const BigInt& m, std::uint64_t p) {
  if (m < p) throw DomainError("m_minus requires m >= p");
  unsigned s = floor_log(m, p);
  BigInt top = pow_big(p, s);
  return m % top;
}

std::uint64_t m_minus(std::uint64_t m, std::uint64_t p) {
  if (m < p) throw DomainError("m_minus requires m >= p");
  std::uint64_t top = 1;
  while (top <= m / p) top *= p;
  return m % top;
}

namespace {

// C(a, b) mod p for 0 <= b <= a < p.
std::uint64_t small_binomial_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    num = mul_mod(num, a - i, p);
    den = mul_mod(den, i + 1, p);
  }
  return mul_mod(num, inv_mod(den, p), p);
}

}  // namespace

Residue lucas_binomial_mod_p(const BigInt& n, const BigInt& k, std::uint64_t p) {
  require_prime(p);
  if (n < 0 || k < 0) throw DomainError("lucas_binomial_mod_p expects natural numbers");
  auto nd = p_digits(n, p);
  auto kd = p_digits(k, p);
  if (kd.size() > nd.size()) return Residue(0, p, 1);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < nd.size() && result != 0; ++i) {
    std::uint64_t ki = i < kd.size() ? kd[i] : 0;
    result = mul_mod(result, small_binomial_mod(nd[i], ki, p), p);
  }
  return Residue(result, p, 1);
}

std::uint64_t legendre_binomial_valuation(std::uint64_t l, unsigned s, std::uint64_t j, std::uint64_t p) {
  require_prime(p);
  if (l < 1 || l > p - 1) throw DomainError("legendre_binomial_valuation: l out of range");
  if (s < 1) throw DomainError("legendre_binomial_valuation: s must be >= 1");
  BigInt n = BigInt(l) * pow_big(p, s);
  if (j < 1 || BigInt(j) >= n) throw DomainError("legendre_binomial_valuation: j out of range");
  std::uint64_t carries = digit_sum(BigInt(j), p) + digit_sum(n - j, p) - digit_sum(n, p);
  return carries / (p - 1);
}

Residue harmonic_mod(std::uint64_t m, std::uint64_t p, unsigned k) {
  require_prime(p);
  if (m >= p) throw DomainError("harmonic_mod requires m < p");
  BigInt modulus = pow_big(p, k);
  BigInt sum = 0;
  for (std::uint64_t j = 1; j <= m; ++j) {
    sum += Residue(j, p, k).inverse().value();
  }
  return Residue(sum % modulus, p, k);
}

// ---------------------------------------------------------------------------

Residue::Residue(BigInt value, std::uint64_t p, unsigned k) : p_(p), k_(k) {
  if (p < 2) throw DomainError("Residue: modulus prime must be >= 2");
  if (k < 1) throw DomainError("Residue: exponent must be >= 1");
  modulus_ = pow_big(p, k);
  value_ = std::move(value) % modulus_;
  if (value_ < 0) value_ += modulus_;
}

void Residue::check_compatible(const Residue& o) const {
  if (p_ != o.p_ || k_ != o.k_) throw DomainError("Residue: mismatched moduli");
}

bool Residue::is_unit() const { return value_ % p_ != 0; }

Residue Residue::inverse() const {
  if (!is_unit()) throw DomainError("Residue: " + to_string() + " is not a unit");
  // Extended Euclid over exact integers.
  BigInt t = 0, new_t = 1, r = modulus_, new_r = value_;
  while (new_r != 0) {
    BigInt q = r / new_r;
    BigInt tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return Residue(t, p_, k_);
}

Residue Residue::pow(std::uint64_t e) const {
  return Residue(boost::multiprecision::powm(value_, BigInt(e), modulus_), p_, k_);
}

Residue Residue::reduced(unsigned j) const {
  if (j < 1 || j > k_) throw DomainError("Residue::reduced: exponent out of range");
  return Residue(value_, p_, j);
}

std::string Residue::to_string() const { return value_.str(); }

Residue Residue::operator-() const { return Residue(-value_, p_, k_); }

Residue& Residue::operator+=(const Residue& o) {
  check_compatible(o);
  value_ += o.value_;
  if (value_ >= modulus_) value_ -= modulus_;
  return *this;
}

Residue& Residue::operator-=(const Residue& o) {
  check_compatible(o);
  value_ -= o.value_;
  if (value_ < 0) value_ += modulus_;
  return *this;
}

Residue& Residue::operator*=(const Residue& o) {
  check_compatible(o);
  value_ = (value_ * o.value_) % modulus_;
  return *this;
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  require_prime(p);
}

FpMatrix::FpMatrix(std::uint64_t p, const std::vector<std::vector<std::int64_t>>& rows)
    : FpMatrix(p, rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t r = 0; r < rows_; ++r) {
    if (rows[r].size() != cols_) throw DomainError("FpMatrix: ragged rows");
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, rows[r][c]);
  }
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
  std::int64_t m = static_cast<std::int64_t>(p_);
  std::int64_t x = v % m;
  if (x < 0) x += m;
  entries_.at(r * cols_ + c) = static_cast<std::uint64_t>(x);
}

std::vector<std::uint64_t> FpMatrix::apply(std::span<const std::uint64_t> x) const {
  if (x.size() != cols_) throw DomainError("FpMatrix::apply: dimension mismatch");
  std::vector<std::uint64_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) y[r] = add_mod(y[r], mul_mod(at(r, c), x[c] % p_, p_), p_);
  }
  return y;
}

std::size_t FpMatrix::rank() const {
  std::vector<std::uint64_t> zero(rows_, 0);
  return solve_fp(*this, zero).rank;
}

FpSolution solve_fp(const FpMatrix& m, std::span<const std::uint64_t> b) {
  if (b.size() != m.rows()) throw DomainError("solve_fp: right-hand side has wrong length");
  const std::uint64_t p = m.prime();
  const std::size_t rows = m.rows(), cols = m.cols();
  // Augmented matrix, row-major.
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m.at(r, c);
    a[r][cols] = b[r] % p;
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[row]);
    std::uint64_t inv = inv_mod(a[row][col], p);
    for (auto& v : a[row]) v = mul_mod(v, inv, p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][col] == 0) continue;
      std::uint64_t factor = a[r][col];
      for (std::size_t c = 0; c <= cols; ++c) a[r][c] = sub_mod(a[r][c], mul_mod(factor, a[row][c], p), p);
    }
    pivot_cols.push_back(col);
    ++row;
  }

  FpSolution out{FpSolution::Kind::unique, pivot_cols.size(), {}};
  for (std::size_t r = row; r < rows; ++r) {
    if (a[r][cols] != 0) {
      out.kind = FpSolution::Kind::inconsistent;
      return out;
    }
  }
  out.x.assign(cols, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) out.x[pivot_cols[i]] = a[i][cols];
  if (pivot_cols.size() < cols) out.kind = FpSolution::Kind::underdetermined;
  return out;
}

}  // namespace padicdyn
