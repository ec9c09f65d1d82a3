#include "orthlab/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace orthlab {

const char* line_name(Line line) {
  return line == Line::cyclotomic ? "K_cycl" : "K_anti";
}

char line_variable(Line line) { return line == Line::cyclotomic ? 'S' : 'T'; }

// ---------------------------------------------------------------------------
// LineSeries
// ---------------------------------------------------------------------------

LineSeries::LineSeries(const SeriesContext& ctx, Line line) : ctx_(ctx), line_(line) {
  validate_context(ctx.coeff);
  if (ctx.degree_cap < 1) throw std::invalid_argument("series context: degree cap must be >= 1");
}

LineSeries LineSeries::constant(const SeriesContext& ctx, Line line, const PAdicScalar& c) {
  LineSeries f(ctx, line);
  f.set_coeff(0, c);
  return f;
}

LineSeries LineSeries::monomial(const SeriesContext& ctx, Line line, int32_t k,
                                const PAdicScalar& c) {
  LineSeries f(ctx, line);
  f.set_coeff(k, c);
  return f;
}

LineSeries LineSeries::one(const SeriesContext& ctx, Line line) {
  return constant(ctx, line, PAdicScalar::from_integer(ctx.coeff, 1));
}

LineSeries LineSeries::variable(const SeriesContext& ctx, Line line) {
  return monomial(ctx, line, 1, PAdicScalar::from_integer(ctx.coeff, 1));
}

PAdicScalar LineSeries::coeff(int32_t k) const {
  auto it = terms_.find(k);
  if (it == terms_.end()) return PAdicScalar::zero(ctx_.coeff);
  return it->second;
}

void LineSeries::set_coeff(int32_t k, const PAdicScalar& c) {
  if (k < 0) throw std::invalid_argument("line series: negative exponent");
  if (k >= ctx_.degree_cap) return;
  if (c.is_zero()) {
    terms_.erase(k);
    return;
  }
  if (!c.context().compatible(ctx_.coeff))
    throw std::invalid_argument("line series: coefficient context mismatch");
  terms_[k] = c;
}

bool LineSeries::negligible(int32_t guard) const {
  for (const auto& [k, c] : terms_)
    if (!c.negligible(guard)) return false;
  return true;
}

int32_t LineSeries::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first;
}

int32_t LineSeries::order() const {
  if (terms_.empty()) return ctx_.degree_cap;
  return terms_.begin()->first;
}

LineSeries LineSeries::operator-() const {
  LineSeries f(ctx_, line_);
  for (const auto& [k, c] : terms_) f.terms_[k] = -c;
  return f;
}

namespace {

void require_same_line(const LineSeries& a, const LineSeries& b) {
  if (!a.context().compatible(b.context()))
    throw std::invalid_argument("line series op: context mismatch");
  if (a.line() != b.line()) throw std::invalid_argument("line series op: mixed lines");
}

}  // namespace

LineSeries operator+(const LineSeries& a, const LineSeries& b) {
  require_same_line(a, b);
  LineSeries f = a;
  for (const auto& [k, c] : b.terms()) f.set_coeff(k, f.coeff(k) + c);
  return f;
}

LineSeries operator-(const LineSeries& a, const LineSeries& b) { return a + (-b); }

LineSeries operator*(const LineSeries& a, const LineSeries& b) {
  require_same_line(a, b);
  LineSeries f(a.context(), a.line());
  std::map<int32_t, PAdicScalar> acc;
  for (const auto& [i, ci] : a.terms()) {
    for (const auto& [j, cj] : b.terms()) {
      int32_t k = i + j;
      if (k >= a.context().degree_cap) continue;
      auto it = acc.find(k);
      if (it == acc.end())
        acc.emplace(k, ci * cj);
      else
        it->second = it->second + ci * cj;
    }
  }
  for (const auto& [k, c] : acc) f.set_coeff(k, c);
  return f;
}

LineSeries LineSeries::scale(const PAdicScalar& c) const {
  LineSeries f(ctx_, line_);
  for (const auto& [k, ck] : terms_) f.set_coeff(k, ck * c);
  return f;
}

LineSeries LineSeries::shift_up(int32_t k) const {
  LineSeries f(ctx_, line_);
  for (const auto& [i, c] : terms_) {
    if (i + k < ctx_.degree_cap) f.set_coeff(i + k, c);
  }
  return f;
}

LineSeries LineSeries::shift_down(int32_t k) const {
  LineSeries f(ctx_, line_);
  for (const auto& [i, c] : terms_) {
    if (i < k) throw std::domain_error("line series: not divisible by variable power");
    f.set_coeff(i - k, c);
  }
  return f;
}

LineSeries LineSeries::pow(int64_t e) const {
  if (e < 0) return inverse_unit().pow(-e);
  LineSeries r = one(ctx_, line_);
  LineSeries b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool LineSeries::is_unit() const {
  auto c0 = coeff(0).valuation();
  if (!c0) return false;
  for (const auto& [k, c] : terms_) {
    auto v = c.valuation();
    if (v && *v < *c0) return false;
  }
  return true;
}

LineSeries LineSeries::inverse_unit() const {
  if (!is_unit()) throw std::domain_error("line series: not a unit");
  int32_t a = *coeff(0).valuation();
  // strip p^a, invert the integral unit part order by order, restore p^-a
  PAdicScalar pa_inv = PAdicScalar::from_integer(ctx_.coeff, ctx_.coeff.prime).pow(-a);
  LineSeries g = scale(pa_inv);
  std::vector<PAdicScalar> x(static_cast<size_t>(ctx_.degree_cap), PAdicScalar::zero(ctx_.coeff));
  PAdicScalar g0_inv = g.coeff(0).inv();
  x[0] = g0_inv;
  for (int32_t d = 1; d < ctx_.degree_cap; ++d) {
    PAdicScalar s = PAdicScalar::zero(ctx_.coeff);
    for (int32_t e = 1; e <= d; ++e) s = s + g.coeff(e) * x[static_cast<size_t>(d - e)];
    x[static_cast<size_t>(d)] = -(g0_inv * s);
  }
  LineSeries inv(ctx_, line_);
  for (int32_t d = 0; d < ctx_.degree_cap; ++d) inv.set_coeff(d, x[static_cast<size_t>(d)] * pa_inv);
  return inv;
}

LineSeries LineSeries::tau() const {
  if (line_ == Line::cyclotomic) return *this;
  // sigma = (1+T)^{-1} - 1 = -T + T^2 - T^3 + ...
  LineSeries sigma(ctx_, line_);
  for (int32_t k = 1; k < ctx_.degree_cap; ++k)
    sigma.set_coeff(k, PAdicScalar::from_integer(ctx_.coeff, (k % 2 == 1) ? -1 : 1));
  LineSeries out(ctx_, line_);
  LineSeries power = one(ctx_, line_);
  int32_t max_deg = degree();
  for (int32_t j = 0; j <= max_deg; ++j) {
    PAdicScalar c = coeff(j);
    if (!c.is_zero()) out = out + power.scale(c);
    if (j < max_deg) power = power * sigma;
  }
  return out;
}

LineSeries LineSeries::derivative() const {
  LineSeries f(ctx_, line_);
  for (const auto& [k, c] : terms_) {
    if (k == 0) continue;
    f.set_coeff(k - 1, c * PAdicScalar::from_integer(ctx_.coeff, k));
  }
  return f;
}

std::string LineSeries::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_text() << ")";
    if (k > 0) os << "*" << line_variable(line_) << "^" << k;
  }
  return os.str();
}

bool weak_equal(const LineSeries& a, const LineSeries& b, int32_t guard) {
  return (a - b).negligible(guard);
}

// ---------------------------------------------------------------------------
// GradedElement
// ---------------------------------------------------------------------------

GradedElement::GradedElement(const PadicContext& ctx, int32_t degree)
    : ctx_(ctx), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("graded element: negative degree");
  comps_.assign(static_cast<size_t>(degree) + 1, PAdicScalar::zero(ctx));
}

PAdicScalar GradedElement::component(int32_t j) const {
  if (j < 0 || j > degree_) throw std::invalid_argument("graded element: bidegree out of range");
  return comps_[static_cast<size_t>(j)];
}

void GradedElement::set_component(int32_t j, const PAdicScalar& c) {
  if (j < 0 || j > degree_) throw std::invalid_argument("graded element: bidegree out of range");
  comps_[static_cast<size_t>(j)] = c;
}

bool GradedElement::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

GradedElement operator+(const GradedElement& a, const GradedElement& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("graded element: degree mismatch in sum");
  GradedElement r(a.context(), a.degree());
  for (int32_t j = 0; j <= a.degree(); ++j) r.set_component(j, a.component(j) + b.component(j));
  return r;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) {
  GradedElement r(a.context(), a.degree() + b.degree());
  for (int32_t i = 0; i <= a.degree(); ++i) {
    for (int32_t j = 0; j <= b.degree(); ++j) {
      r.set_component(i + j, r.component(i + j) + a.component(i) * b.component(j));
    }
  }
  return r;
}

GradedElement GradedElement::scale(const PAdicScalar& c) const {
  GradedElement r(ctx_, degree_);
  for (int32_t j = 0; j <= degree_; ++j) r.set_component(j, component(j) * c);
  return r;
}

GradedElement GradedElement::operator-() const {
  GradedElement r(ctx_, degree_);
  for (int32_t j = 0; j <= degree_; ++j) r.set_component(j, -component(j));
  return r;
}

std::string GradedElement::to_text() const {
  std::ostringstream os;
  bool first = true;
  for (int32_t j = 0; j <= degree_; ++j) {
    if (component(j).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << component(j).to_text() << ")";
    if (degree_ - j > 0) os << "*s^" << (degree_ - j);
    if (j > 0) os << "*t^" << j;
  }
  if (first) os << "0 (degree " << degree_ << ")";
  return os.str();
}

bool weak_equal(const GradedElement& a, const GradedElement& b, int32_t guard) {
  if (a.degree() != b.degree()) return false;
  for (int32_t j = 0; j <= a.degree(); ++j)
    if (!weak_equal(a.component(j), b.component(j), guard)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// IwasawaSeries
// ---------------------------------------------------------------------------

IwasawaSeries::IwasawaSeries(const SeriesContext& ctx) : ctx_(ctx) {
  validate_context(ctx.coeff);
  if (ctx.degree_cap < 1) throw std::invalid_argument("series context: degree cap must be >= 1");
}

IwasawaSeries IwasawaSeries::constant(const SeriesContext& ctx, const PAdicScalar& c) {
  IwasawaSeries f(ctx);
  f.set_coeff(0, 0, c);
  return f;
}

IwasawaSeries IwasawaSeries::monomial(const SeriesContext& ctx, int32_t i, int32_t j,
                                      const PAdicScalar& c) {
  IwasawaSeries f(ctx);
  f.set_coeff(i, j, c);
  return f;
}

IwasawaSeries IwasawaSeries::one(const SeriesContext& ctx) {
  return constant(ctx, PAdicScalar::from_integer(ctx.coeff, 1));
}

IwasawaSeries IwasawaSeries::variable_s(const SeriesContext& ctx) {
  return monomial(ctx, 1, 0, PAdicScalar::from_integer(ctx.coeff, 1));
}

IwasawaSeries IwasawaSeries::variable_t(const SeriesContext& ctx) {
  return monomial(ctx, 0, 1, PAdicScalar::from_integer(ctx.coeff, 1));
}

IwasawaSeries IwasawaSeries::from_integer(const SeriesContext& ctx, int64_t n) {
  return constant(ctx, PAdicScalar::from_integer(ctx.coeff, n));
}

IwasawaSeries IwasawaSeries::from_line(const LineSeries& f) {
  IwasawaSeries g(f.context());
  for (const auto& [k, c] : f.terms()) {
    if (f.line() == Line::cyclotomic)
      g.set_coeff(k, 0, c);
    else
      g.set_coeff(0, k, c);
  }
  return g;
}

PAdicScalar IwasawaSeries::coeff(int32_t i, int32_t j) const {
  auto it = terms_.find({i, j});
  if (it == terms_.end()) return PAdicScalar::zero(ctx_.coeff);
  return it->second;
}

void IwasawaSeries::set_coeff(int32_t i, int32_t j, const PAdicScalar& c) {
  if (i < 0 || j < 0) throw std::invalid_argument("series: negative exponent");
  if (i + j >= ctx_.degree_cap) return;
  if (c.is_zero()) {
    terms_.erase({i, j});
    return;
  }
  if (!c.context().compatible(ctx_.coeff))
    throw std::invalid_argument("series: coefficient context mismatch");
  terms_[{i, j}] = c;
}

bool IwasawaSeries::negligible(int32_t guard) const {
  for (const auto& [ij, c] : terms_)
    if (!c.negligible(guard)) return false;
  return true;
}

int32_t IwasawaSeries::order() const {
  int32_t best = ctx_.degree_cap;
  for (const auto& [ij, c] : terms_) best = std::min(best, ij.first + ij.second);
  return best;
}

IwasawaSeries IwasawaSeries::operator-() const {
  IwasawaSeries f(ctx_);
  for (const auto& [ij, c] : terms_) f.terms_[ij] = -c;
  return f;
}

IwasawaSeries operator+(const IwasawaSeries& a, const IwasawaSeries& b) {
  if (!a.context().compatible(b.context()))
    throw std::invalid_argument("series op: context mismatch");
  IwasawaSeries f = a;
  for (const auto& [ij, c] : b.terms()) f.set_coeff(ij.first, ij.second, f.coeff(ij.first, ij.second) + c);
  return f;
}

IwasawaSeries operator-(const IwasawaSeries& a, const IwasawaSeries& b) { return a + (-b); }

IwasawaSeries operator*(const IwasawaSeries& a, const IwasawaSeries& b) {
  if (!a.context().compatible(b.context()))
    throw std::invalid_argument("series op: context mismatch");
  IwasawaSeries f(a.context());
  std::map<std::pair<int32_t, int32_t>, PAdicScalar> acc;
  int32_t cap = a.context().degree_cap;
  for (const auto& [ij, ci] : a.terms()) {
    for (const auto& [kl, cj] : b.terms()) {
      int32_t i = ij.first + kl.first;
      int32_t j = ij.second + kl.second;
      if (i + j >= cap) continue;
      auto key = std::make_pair(i, j);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, ci * cj);
      else
        it->second = it->second + ci * cj;
    }
  }
  for (const auto& [ij, c] : acc) f.set_coeff(ij.first, ij.second, c);
  return f;
}

IwasawaSeries IwasawaSeries::scale(const PAdicScalar& c) const {
  IwasawaSeries f(ctx_);
  for (const auto& [ij, ck] : terms_) f.set_coeff(ij.first, ij.second, ck * c);
  return f;
}

IwasawaSeries IwasawaSeries::mul_monomial(int32_t i, int32_t j) const {
  IwasawaSeries f(ctx_);
  for (const auto& [ij, c] : terms_) f.set_coeff(ij.first + i, ij.second + j, c);
  return f;
}

IwasawaSeries IwasawaSeries::pow(int64_t e) const {
  if (e < 0) return inverse_unit().pow(-e);
  IwasawaSeries r = one(ctx_);
  IwasawaSeries b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool IwasawaSeries::is_unit() const {
  auto c0 = augmentation().valuation();
  if (!c0) return false;
  for (const auto& [ij, c] : terms_) {
    auto v = c.valuation();
    if (v && *v < *c0) return false;
  }
  return true;
}

IwasawaSeries IwasawaSeries::inverse_unit() const {
  if (!is_unit()) throw std::domain_error("series: not a unit");
  int32_t a = *augmentation().valuation();
  PAdicScalar pa_inv = PAdicScalar::from_integer(ctx_.coeff, ctx_.coeff.prime).pow(-a);
  IwasawaSeries g = scale(pa_inv);
  // invert the integral unit part by total degree
  std::vector<IwasawaSeries> g_homog(static_cast<size_t>(ctx_.degree_cap), IwasawaSeries(ctx_));
  for (const auto& [ij, c] : g.terms()) g_homog[static_cast<size_t>(ij.first + ij.second)].set_coeff(ij.first, ij.second, c);
  std::vector<IwasawaSeries> x(static_cast<size_t>(ctx_.degree_cap), IwasawaSeries(ctx_));
  PAdicScalar g0_inv = g.augmentation().inv();
  x[0] = constant(ctx_, g0_inv);
  for (int32_t d = 1; d < ctx_.degree_cap; ++d) {
    IwasawaSeries s(ctx_);
    for (int32_t e = 1; e <= d; ++e) s = s + g_homog[static_cast<size_t>(e)] * x[static_cast<size_t>(d - e)];
    x[static_cast<size_t>(d)] = (-s).scale(g0_inv);
  }
  IwasawaSeries inv(ctx_);
  for (const auto& part : x) inv = inv + part;
  return inv.scale(pa_inv);
}

IwasawaSeries IwasawaSeries::tau() const {
  // substitute T -> sigma(T); powers of sigma computed in the one-variable ring
  SeriesContext ctx = ctx_;
  LineSeries sigma(ctx, Line::anticyclotomic);
  for (int32_t k = 1; k < ctx.degree_cap; ++k)
    sigma.set_coeff(k, PAdicScalar::from_integer(ctx.coeff, (k % 2 == 1) ? -1 : 1));

  int32_t max_j = 0;
  for (const auto& [ij, c] : terms_) max_j = std::max(max_j, ij.second);
  std::vector<LineSeries> sigma_pow;
  sigma_pow.push_back(LineSeries::one(ctx, Line::anticyclotomic));
  for (int32_t j = 1; j <= max_j; ++j) sigma_pow.push_back(sigma_pow.back() * sigma);

  IwasawaSeries out(ctx);
  for (const auto& [ij, c] : terms_) {
    const LineSeries& tpow = sigma_pow[static_cast<size_t>(ij.second)];
    for (const auto& [k, ck] : tpow.terms()) {
      int32_t i = ij.first;
      if (i + k >= ctx.degree_cap) continue;
      out.set_coeff(i, k, out.coeff(i, k) + c * ck);
    }
  }
  return out;
}

LineSeries IwasawaSeries::project(Line line) const {
  LineSeries f(ctx_, line);
  for (const auto& [ij, c] : terms_) {
    if (line == Line::cyclotomic && ij.second == 0) f.set_coeff(ij.first, c);
    if (line == Line::anticyclotomic && ij.first == 0) f.set_coeff(ij.second, c);
  }
  return f;
}

PAdicScalar IwasawaSeries::augmentation() const { return coeff(0, 0); }

GradedElement IwasawaSeries::leading_form() const {
  if (terms_.empty()) throw std::domain_error("leading form of zero series");
  int32_t r = order();
  GradedElement g(ctx_.coeff, r);
  for (const auto& [ij, c] : terms_) {
    if (ij.first + ij.second == r) g.set_component(ij.second, c);
  }
  return g;
}

LineSeries IwasawaSeries::anti_linear_term(int32_t guard) const {
  if (!project(Line::anticyclotomic).negligible(guard))
    throw std::domain_error("anti linear term: nonzero anticyclotomic projection");
  return s_coefficient(1);
}

LineSeries IwasawaSeries::s_coefficient(int32_t k) const {
  LineSeries f(ctx_, Line::anticyclotomic);
  for (const auto& [ij, c] : terms_) {
    if (ij.first == k) f.set_coeff(ij.second, c);
  }
  return f;
}

std::string IwasawaSeries::to_text() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [ij, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_text() << ")";
    if (ij.first > 0) os << "*S^" << ij.first;
    if (ij.second > 0) os << "*T^" << ij.second;
  }
  return os.str();
}

bool weak_equal(const IwasawaSeries& a, const IwasawaSeries& b, int32_t guard) {
  return (a - b).negligible(guard);
}

}  // namespace orthlab
