#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace orthlab {

/// Fixed working precision for one computation: an odd prime p and the number
/// of significant p-adic digits M carried by every scalar.  p^M must fit in
/// 62 bits.  Results of ring operations are exact modulo p^(valuation + M);
/// additions that cancel leading digits record the reduced effective
/// precision instead of silently claiming full accuracy.
struct PadicContext {
  uint32_t prime = 5;
  int32_t digits = 8;

  uint64_t pow(int32_t k) const;  // p^k for 0 <= k <= digits
  bool compatible(const PadicContext& o) const {
    return prime == o.prime && digits == o.digits;
  }
  bool operator==(const PadicContext&) const = default;
};

/// Throws std::invalid_argument unless p is an odd prime with p^digits < 2^62.
void validate_context(const PadicContext& ctx);

constexpr int32_t kDefaultGuard = 2;  // digits of slack in "equal at precision"

/// A p-adic number p^shift * m with m a unit mod p, known to `effective_digits`
/// significant digits (capped at the context's M).  Two flavours of zero exist:
/// the exact zero, and "indistinguishable from zero at precision p^bound",
/// produced when a sum cancels every known digit.  Callers that care must
/// branch on is_exact_zero() explicitly.
class PAdicScalar {
 public:
  PAdicScalar() = default;  // exact zero, attachable to any context

  static PAdicScalar zero(const PadicContext& ctx);
  static PAdicScalar zero_at(const PadicContext& ctx, int32_t bound);
  static PAdicScalar from_integer(const PadicContext& ctx, int64_t n);
  static PAdicScalar from_ratio(const PadicContext& ctx, int64_t num, int64_t den);
  static PAdicScalar from_unit(const PadicContext& ctx, uint64_t mantissa, int32_t shift);
  static PAdicScalar one(const PadicContext& ctx) { return from_integer(ctx, 1); }

  const PadicContext& context() const { return ctx_; }
  bool attached() const { return ctx_.prime != 0; }

  bool is_zero() const { return mantissa_ == 0; }
  bool is_exact_zero() const { return mantissa_ == 0 && exact_; }
  /// True when at most `guard` significant digits of the value remain.
  bool negligible(int32_t guard = kDefaultGuard) const;

  /// p-adic valuation; nullopt is the infinite sentinel shared by the exact
  /// zero and values indistinguishable from zero.
  std::optional<int32_t> valuation() const;
  int32_t shift() const { return shift_; }
  uint64_t mantissa() const { return mantissa_; }
  int32_t effective_digits() const { return prec_; }
  /// The value is known exactly modulo p^abs_bound (INT32_MAX for exact zero).
  int32_t abs_bound() const;

  bool is_unit() const { return mantissa_ != 0 && shift_ == 0; }

  PAdicScalar operator-() const;
  PAdicScalar inv() const;  // throws std::domain_error on (approximate) zero
  PAdicScalar pow(int64_t e) const;

  friend PAdicScalar operator+(const PAdicScalar& a, const PAdicScalar& b);
  friend PAdicScalar operator-(const PAdicScalar& a, const PAdicScalar& b);
  friend PAdicScalar operator*(const PAdicScalar& a, const PAdicScalar& b);

  bool identical(const PAdicScalar& o) const;

  /// Text form "p^k * m (mod p^M)"; "0" for the exact zero, "O(p^A)" for a
  /// value that vanished at working precision.
  std::string to_text() const;
  static PAdicScalar from_text(const PadicContext& ctx, const std::string& s);

 private:
  PadicContext ctx_{0, 0};
  int32_t shift_ = 0;  // valuation when nonzero, abs bound when approx zero
  int32_t prec_ = 0;
  uint64_t mantissa_ = 0;
  bool exact_ = true;

  static PAdicScalar make(const PadicContext& ctx, int32_t shift, uint64_t mantissa,
                          int32_t prec);
};

/// Equal up to working precision: the difference has at most `guard`
/// significant digits left.
bool weak_equal(const PAdicScalar& a, const PAdicScalar& b, int32_t guard = kDefaultGuard);

namespace detail {
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t inv_mod(uint64_t a, uint64_t m);  // a coprime to m
int32_t val_of(uint64_t n, uint32_t p);
}  // namespace detail

}  // namespace orthlab
