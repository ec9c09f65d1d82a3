#include "orthlab/padic.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <utility>

namespace orthlab {

namespace detail {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  // extended Euclid on (a, m); a must be coprime to m
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
  while (new_r != 0) {
    int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("inv_mod: element not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

int32_t val_of(uint64_t n, uint32_t p) {
  int32_t v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace detail

uint64_t PadicContext::pow(int32_t k) const {
  uint64_t r = 1;
  for (int32_t i = 0; i < k; ++i) r *= prime;
  return r;
}

void validate_context(const PadicContext& ctx) {
  if (ctx.prime < 3 || ctx.prime % 2 == 0)
    throw std::invalid_argument("context: prime must be odd and >= 3");
  for (uint32_t d = 3; d * d <= ctx.prime; d += 2)
    if (ctx.prime % d == 0) throw std::invalid_argument("context: prime is composite");
  if (ctx.digits < 1) throw std::invalid_argument("context: digits must be >= 1");
  long double bound = 1.0L;
  for (int32_t i = 0; i < ctx.digits; ++i) bound *= ctx.prime;
  if (bound >= 4611686018427387904.0L)  // 2^62
    throw std::invalid_argument("context: p^digits exceeds 62 bits");
}

PAdicScalar PAdicScalar::make(const PadicContext& ctx, int32_t shift, uint64_t mantissa,
                              int32_t prec) {
  PAdicScalar x;
  x.ctx_ = ctx;
  x.exact_ = false;
  if (prec <= 0 || mantissa == 0) {
    x.shift_ = shift;  // abs bound
    x.prec_ = 0;
    x.mantissa_ = 0;
    return x;
  }
  int32_t v = detail::val_of(mantissa, ctx.prime);
  if (v >= prec) {
    x.shift_ = shift + prec;
    x.prec_ = 0;
    x.mantissa_ = 0;
    return x;
  }
  uint64_t m = mantissa;
  for (int32_t i = 0; i < v; ++i) m /= ctx.prime;
  prec -= v;
  x.shift_ = shift + v;
  x.prec_ = std::min(prec, ctx.digits);
  x.mantissa_ = m % ctx.pow(x.prec_);
  return x;
}

PAdicScalar PAdicScalar::zero(const PadicContext& ctx) {
  validate_context(ctx);
  PAdicScalar x;
  x.ctx_ = ctx;
  return x;
}

PAdicScalar PAdicScalar::zero_at(const PadicContext& ctx, int32_t bound) {
  validate_context(ctx);
  PAdicScalar x;
  x.ctx_ = ctx;
  x.exact_ = false;
  x.shift_ = bound;
  return x;
}

PAdicScalar PAdicScalar::from_integer(const PadicContext& ctx, int64_t n) {
  validate_context(ctx);
  if (n == 0) return zero(ctx);
  bool neg = n < 0;
  uint64_t a = neg ? static_cast<uint64_t>(-n) : static_cast<uint64_t>(n);
  int32_t v = detail::val_of(a, ctx.prime);
  for (int32_t i = 0; i < v; ++i) a /= ctx.prime;
  uint64_t mod = ctx.pow(ctx.digits);
  uint64_t m = a % mod;
  if (neg) m = (mod - m) % mod;
  PAdicScalar x = make(ctx, v, m, ctx.digits);
  return x;
}

PAdicScalar PAdicScalar::from_ratio(const PadicContext& ctx, int64_t num, int64_t den) {
  if (den == 0) throw std::invalid_argument("from_ratio: zero denominator");
  PAdicScalar n = from_integer(ctx, num);
  PAdicScalar d = from_integer(ctx, den);
  return n * d.inv();
}

PAdicScalar PAdicScalar::from_unit(const PadicContext& ctx, uint64_t mantissa, int32_t shift) {
  validate_context(ctx);
  if (mantissa % ctx.prime == 0)
    throw std::invalid_argument("from_unit: mantissa not a unit mod p");
  return make(ctx, shift, mantissa % ctx.pow(ctx.digits), ctx.digits);
}

bool PAdicScalar::negligible(int32_t guard) const {
  return mantissa_ == 0 || prec_ <= guard;
}

std::optional<int32_t> PAdicScalar::valuation() const {
  if (mantissa_ == 0) return std::nullopt;
  return shift_;
}

int32_t PAdicScalar::abs_bound() const {
  if (is_exact_zero()) return std::numeric_limits<int32_t>::max();
  if (mantissa_ == 0) return shift_;
  return shift_ + prec_;
}

PAdicScalar PAdicScalar::operator-() const {
  if (mantissa_ == 0) return *this;
  PAdicScalar x = *this;
  uint64_t mod = ctx_.pow(prec_);
  x.mantissa_ = (mod - mantissa_) % mod;
  return x;
}

PAdicScalar PAdicScalar::inv() const {
  if (mantissa_ == 0) throw std::domain_error("inv: inversion of zero at working precision");
  PAdicScalar x = *this;
  x.shift_ = -shift_;
  x.mantissa_ = detail::inv_mod(mantissa_, ctx_.pow(prec_));
  return x;
}

PAdicScalar PAdicScalar::pow(int64_t e) const {
  if (e < 0) return inv().pow(-e);
  PAdicScalar r = attached() ? one(ctx_) : PAdicScalar{};
  PAdicScalar b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

namespace {

const PadicContext& merged_context(const PAdicScalar& a, const PAdicScalar& b) {
  if (!a.attached()) return b.context();
  if (!b.attached()) return a.context();
  if (!a.context().compatible(b.context()))
    throw std::invalid_argument("scalar op: mismatched prime or precision");
  return a.context();
}

}  // namespace

PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b) {
  const PadicContext& ctx = merged_context(a, b);
  if (a.is_exact_zero()) return b.attached() ? b : (a.attached() ? a : b);
  if (b.is_exact_zero()) return a;

  int32_t bound = std::min(a.abs_bound(), b.abs_bound());
  if (a.is_zero() && b.is_zero()) return PAdicScalar::zero_at(ctx, bound);
  if (a.is_zero() || b.is_zero()) {
    const PAdicScalar& x = a.is_zero() ? b : a;
    if (x.shift() >= bound) return PAdicScalar::zero_at(ctx, bound);
    int32_t d = bound - x.shift();  // d <= x.effective_digits()
    return PAdicScalar::make(ctx, x.shift(), x.mantissa() % ctx.pow(d), d);
  }

  int32_t k = std::min(a.shift(), b.shift());
  int32_t d = bound - k;
  if (d <= 0) return PAdicScalar::zero_at(ctx, bound);
  uint64_t mod = ctx.pow(d);
  uint64_t ma = detail::mulmod(a.mantissa() % mod, ctx.pow(a.shift() - k) % mod, mod);
  uint64_t mb = detail::mulmod(b.mantissa() % mod, ctx.pow(b.shift() - k) % mod, mod);
  uint64_t m = (ma + mb) % mod;
  return PAdicScalar::make(ctx, k, m, d);
}

PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b) { return a + (-b); }

PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b) {
  const PadicContext& ctx = merged_context(a, b);
  if (a.is_exact_zero() || b.is_exact_zero())
    return ctx.prime != 0 ? PAdicScalar::zero(ctx) : PAdicScalar{};
  if (a.is_zero() || b.is_zero()) {
    // shift_ is the abs bound for an approximate zero and the valuation
    // otherwise, so the product bound is the plain sum either way
    return PAdicScalar::zero_at(ctx, a.shift() + b.shift());
  }
  int32_t prec = std::min(a.effective_digits(), b.effective_digits());
  uint64_t mod = ctx.pow(prec);
  uint64_t m = detail::mulmod(a.mantissa() % mod, b.mantissa() % mod, mod);
  return PAdicScalar::make(ctx, a.shift() + b.shift(), m, prec);
}

bool PAdicScalar::identical(const PAdicScalar& o) const {
  return ctx_ == o.ctx_ && shift_ == o.shift_ && prec_ == o.prec_ && mantissa_ == o.mantissa_ &&
         exact_ == o.exact_;
}

bool weak_equal(const PAdicScalar& a, const PAdicScalar& b, int32_t guard) {
  return (a - b).negligible(guard);
}

std::string PAdicScalar::to_text() const {
  if (is_exact_zero()) return "0";
  std::string p = std::to_string(ctx_.prime);
  if (mantissa_ == 0) return "O(" + p + "^" + std::to_string(shift_) + ")";
  return p + "^" + std::to_string(shift_) + " * " + std::to_string(mantissa_) + " (mod " + p +
         "^" + std::to_string(prec_) + ")";
}

PAdicScalar PAdicScalar::from_text(const PadicContext& ctx, const std::string& s) {
  validate_context(ctx);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  };
  auto parse_int = [&]() -> int64_t {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("scalar parse: expected integer in '" + s + "'");
    return std::stoll(s.substr(start, pos - start));
  };
  skip_ws();
  if (s.substr(pos, 2) == "O(") {
    pos += 2;
    int64_t p = parse_int();
    if (p != ctx.prime) throw std::invalid_argument("scalar parse: prime mismatch");
    skip_ws();
    if (pos >= s.size() || s[pos] != '^') throw std::invalid_argument("scalar parse: expected ^");
    ++pos;
    int64_t bound = parse_int();
    skip_ws();
    if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("scalar parse: expected )");
    return zero_at(ctx, static_cast<int32_t>(bound));
  }
  int64_t first = parse_int();
  skip_ws();
  if (pos >= s.size()) {
    return from_integer(ctx, first);  // bare integer, incl. "0"
  }
  if (s[pos] == '/') {
    ++pos;
    int64_t den = parse_int();
    return from_ratio(ctx, first, den);
  }
  if (s[pos] != '^') throw std::invalid_argument("scalar parse: expected ^ in '" + s + "'");
  ++pos;
  int64_t shift = parse_int();
  skip_ws();
  if (pos >= s.size() || s[pos] != '*') throw std::invalid_argument("scalar parse: expected *");
  ++pos;
  int64_t mant = parse_int();
  skip_ws();
  int32_t prec = ctx.digits;
  if (pos < s.size() && s.substr(pos, 4) == "(mod") {
    pos += 4;
    (void)parse_int();  // prime, already known
    skip_ws();
    if (pos >= s.size() || s[pos] != '^') throw std::invalid_argument("scalar parse: expected ^");
    ++pos;
    prec = static_cast<int32_t>(parse_int());
    skip_ws();
    if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("scalar parse: expected )");
  }
  if (first != ctx.prime) throw std::invalid_argument("scalar parse: prime mismatch");
  if (mant < 0) throw std::invalid_argument("scalar parse: mantissa must be nonnegative");
  return make(ctx, static_cast<int32_t>(shift), static_cast<uint64_t>(mant) % ctx.pow(std::min(prec, ctx.digits)),
              std::min(prec, ctx.digits));
}

}  // namespace orthlab
