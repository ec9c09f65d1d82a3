#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orthlab/padic.hpp"

namespace orthlab {

/// Coefficient context plus the truncation order: all two-variable arithmetic
/// happens modulo (S,T)^degree_cap, one-variable arithmetic modulo var^degree_cap.
struct SeriesContext {
  PadicContext coeff;
  int32_t degree_cap = 12;

  bool compatible(const SeriesContext& o) const {
    return coeff.compatible(o.coeff) && degree_cap == o.degree_cap;
  }
  bool operator==(const SeriesContext&) const = default;
};

/// The two distinguished lines: S is the cyclotomic variable (gamma_cycl - 1),
/// T the anticyclotomic one (gamma_anti - 1).
enum class Line : uint8_t { cyclotomic, anticyclotomic };

const char* line_name(Line line);
char line_variable(Line line);  // 'S' or 'T'

/// Truncated one-variable series over the bounded-denominator coefficient
/// ring: models Lambda_cycl or Lambda_anti.  p is a unit of the ring after
/// tensoring with Q_p, but the variable is not; T + p stays a non-unit.
class LineSeries {
 public:
  LineSeries(const SeriesContext& ctx, Line line);

  static LineSeries constant(const SeriesContext& ctx, Line line, const PAdicScalar& c);
  static LineSeries monomial(const SeriesContext& ctx, Line line, int32_t k, const PAdicScalar& c);
  static LineSeries one(const SeriesContext& ctx, Line line);
  static LineSeries variable(const SeriesContext& ctx, Line line);

  const SeriesContext& context() const { return ctx_; }
  Line line() const { return line_; }
  const std::map<int32_t, PAdicScalar>& terms() const { return terms_; }

  PAdicScalar coeff(int32_t k) const;
  void set_coeff(int32_t k, const PAdicScalar& c);

  bool is_zero() const { return terms_.empty(); }
  bool negligible(int32_t guard = kDefaultGuard) const;
  /// Largest stored exponent, -1 for the zero series.
  int32_t degree() const;
  /// Smallest stored exponent, degree_cap for the zero series.
  int32_t order() const;

  LineSeries operator-() const;
  friend LineSeries operator+(const LineSeries& a, const LineSeries& b);
  friend LineSeries operator-(const LineSeries& a, const LineSeries& b);
  friend LineSeries operator*(const LineSeries& a, const LineSeries& b);

  LineSeries scale(const PAdicScalar& c) const;
  LineSeries shift_up(int32_t k) const;    // multiply by var^k
  LineSeries shift_down(int32_t k) const;  // divide by var^k; lower terms must vanish
  LineSeries pow(int64_t e) const;

  /// Unit test in Zp[[var]] (x) Qp: some coefficient has minimal valuation at
  /// index 0.
  bool is_unit() const;
  LineSeries inverse_unit() const;  // throws std::domain_error when not a unit

  /// The involution induced by inversion on the group: identity on the
  /// cyclotomic line, var -> (1+var)^{-1} - 1 on the anticyclotomic one.
  LineSeries tau() const;

  PAdicScalar evaluate0() const { return coeff(0); }
  LineSeries derivative() const;

  std::string to_text() const;

 private:
  SeriesContext ctx_;
  Line line_;
  std::map<int32_t, PAdicScalar> terms_;  // only nonzero coefficients
};

bool weak_equal(const LineSeries& a, const LineSeries& b, int32_t guard = kDefaultGuard);

/// Homogeneous element of degree r in the graded algebra sum_r I^r/I^{r+1}
/// isomorphic to Q_p[s,t]: component j holds the coefficient of s^{r-j} t^j.
class GradedElement {
 public:
  GradedElement(const PadicContext& ctx, int32_t degree);

  const PadicContext& context() const { return ctx_; }
  int32_t degree() const { return degree_; }
  PAdicScalar component(int32_t j) const;
  void set_component(int32_t j, const PAdicScalar& c);

  bool is_zero() const;

  friend GradedElement operator+(const GradedElement& a, const GradedElement& b);
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
  GradedElement scale(const PAdicScalar& c) const;
  GradedElement operator-() const;

  std::string to_text() const;

 private:
  PadicContext ctx_;
  int32_t degree_;
  std::vector<PAdicScalar> comps_;
};

bool weak_equal(const GradedElement& a, const GradedElement& b, int32_t guard = kDefaultGuard);

/// Truncated power series in S = gamma_cycl - 1 and T = gamma_anti - 1 over
/// the bounded-denominator coefficient ring; the working model of Lambda.
class IwasawaSeries {
 public:
  explicit IwasawaSeries(const SeriesContext& ctx);

  static IwasawaSeries constant(const SeriesContext& ctx, const PAdicScalar& c);
  static IwasawaSeries monomial(const SeriesContext& ctx, int32_t i, int32_t j,
                                const PAdicScalar& c);
  static IwasawaSeries one(const SeriesContext& ctx);
  static IwasawaSeries variable_s(const SeriesContext& ctx);
  static IwasawaSeries variable_t(const SeriesContext& ctx);
  static IwasawaSeries from_integer(const SeriesContext& ctx, int64_t n);
  /// Embed a one-variable series along its line.
  static IwasawaSeries from_line(const LineSeries& f);

  const SeriesContext& context() const { return ctx_; }
  const std::map<std::pair<int32_t, int32_t>, PAdicScalar>& terms() const { return terms_; }

  PAdicScalar coeff(int32_t i, int32_t j) const;
  void set_coeff(int32_t i, int32_t j, const PAdicScalar& c);

  bool is_zero() const { return terms_.empty(); }
  bool negligible(int32_t guard = kDefaultGuard) const;
  /// Smallest total degree of a stored term, degree_cap for zero.
  int32_t order() const;

  IwasawaSeries operator-() const;
  friend IwasawaSeries operator+(const IwasawaSeries& a, const IwasawaSeries& b);
  friend IwasawaSeries operator-(const IwasawaSeries& a, const IwasawaSeries& b);
  friend IwasawaSeries operator*(const IwasawaSeries& a, const IwasawaSeries& b);

  IwasawaSeries scale(const PAdicScalar& c) const;
  IwasawaSeries mul_monomial(int32_t i, int32_t j) const;
  IwasawaSeries pow(int64_t e) const;

  bool is_unit() const;
  IwasawaSeries inverse_unit() const;

  /// S -> S, T -> (1+T)^{-1} - 1, truncated at the context cap.
  IwasawaSeries tau() const;

  /// Quotient by I_F: cyclotomic sets T = 0 (a series in S), anticyclotomic
  /// sets S = 0 (a series in T).
  LineSeries project(Line line) const;
  /// Augmentation: the image under S = T = 0.
  PAdicScalar augmentation() const;

  /// Lowest-degree homogeneous part, split by bidegree.  Throws on zero input.
  GradedElement leading_form() const;

  /// Image in I_anti/I_anti^2 = Gamma_cycl (x) Lambda_anti: the coefficient of
  /// S^1 as a series in T.  Requires the anticyclotomic projection to vanish
  /// at working precision.
  LineSeries anti_linear_term(int32_t guard = kDefaultGuard) const;

  /// Coefficient of S^k as a series in T.
  LineSeries s_coefficient(int32_t k) const;

  std::string to_text() const;

 private:
  SeriesContext ctx_;
  std::map<std::pair<int32_t, int32_t>, PAdicScalar> terms_;
};

bool weak_equal(const IwasawaSeries& a, const IwasawaSeries& b, int32_t guard = kDefaultGuard);

}  // namespace orthlab
