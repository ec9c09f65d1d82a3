#include "orthlab/ideals.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "orthlab/snf.hpp"

namespace orthlab {

int32_t content_exponent(const LineSeries& f) {
  if (f.is_zero()) throw std::domain_error("content of zero series");
  bool first = true;
  int32_t best = 0;
  for (const auto& [k, c] : f.terms()) {
    auto v = c.valuation();
    if (!v) continue;
    if (first || *v < best) best = *v;
    first = false;
  }
  if (first) throw std::domain_error("content: series vanished at working precision");
  return best;
}

std::pair<LineSeries, LineSeries> divmod_monic(const LineSeries& f, const LineSeries& monic) {
  int32_t d = monic.degree();
  if (d < 0 || !weak_equal(monic.coeff(d), PAdicScalar::one(monic.context().coeff), 0))
    throw std::invalid_argument("divmod: divisor must be monic");
  LineSeries q(f.context(), f.line());
  LineSeries r = f;
  for (int32_t k = r.degree(); k >= d; k = r.degree()) {
    PAdicScalar lead = r.coeff(k);
    if (lead.is_zero()) {
      r.set_coeff(k, PAdicScalar::zero(f.context().coeff));
      continue;
    }
    q.set_coeff(k - d, lead);
    for (const auto& [j, c] : monic.terms()) {
      int32_t idx = k - d + j;
      r.set_coeff(idx, r.coeff(idx) - lead * c);
    }
  }
  return {q, r};
}

WeierstrassDecomposition weierstrass_prepare(const LineSeries& f) {
  const SeriesContext& ctx = f.context();
  if (f.is_zero() || f.negligible(0))
    throw std::domain_error("weierstrass: input indistinguishable from zero");
  int32_t a = content_exponent(f);
  PAdicScalar p_inv_a = PAdicScalar::from_integer(ctx.coeff, ctx.coeff.prime).pow(-a);
  LineSeries g = f.scale(p_inv_a);

  int32_t lambda = -1;
  for (const auto& [k, c] : g.terms()) {
    auto v = c.valuation();
    if (v && *v == 0) {
      lambda = k;
      break;
    }
  }
  if (lambda < 0)
    throw std::domain_error("weierstrass: no unit coefficient below the degree cap");

  WeierstrassDecomposition out{a, LineSeries::one(ctx, f.line()), LineSeries::one(ctx, f.line()),
                               lambda};
  if (lambda == 0) {
    out.unit = g;
    return out;
  }
  if (lambda >= ctx.degree_cap)
    throw std::domain_error("weierstrass: distinguished degree reaches the cap");

  // split g = A + var^lambda * B with B a unit series
  LineSeries A(ctx, f.line());
  LineSeries B(ctx, f.line());
  for (const auto& [k, c] : g.terms()) {
    if (k < lambda)
      A.set_coeff(k, c);
    else
      B.set_coeff(k - lambda, c);
  }
  LineSeries B_inv = B.inverse_unit();

  // divide var^lambda by g: each pass multiplies the residue by A (positive
  // valuation), so it dies within the working precision
  LineSeries q(ctx, f.line());
  LineSeries r(ctx, f.line());
  LineSeries cur = LineSeries::monomial(ctx, f.line(), lambda, PAdicScalar::one(ctx.coeff));
  for (int32_t pass = 0; pass <= ctx.coeff.digits + 2 && !cur.is_zero(); ++pass) {
    LineSeries low(ctx, f.line());
    LineSeries hi(ctx, f.line());
    for (const auto& [k, c] : cur.terms()) {
      if (k < lambda)
        low.set_coeff(k, c);
      else
        hi.set_coeff(k - lambda, c);
    }
    LineSeries step = B_inv * hi;
    q = q + step;
    r = r + low;
    cur = -(A * step);
  }
  out.distinguished = LineSeries::monomial(ctx, f.line(), lambda, PAdicScalar::one(ctx.coeff)) - r;
  out.unit = q.inverse_unit();
  return out;
}

bool line_divides(const LineSeries& g, const LineSeries& f, int32_t guard) {
  if (g.negligible(guard)) return f.negligible(guard);
  if (f.negligible(guard)) return true;
  WeierstrassDecomposition w = weierstrass_prepare(g);
  if (w.lambda == 0) return true;
  auto [q, r] = divmod_monic(f, w.distinguished);
  (void)q;
  return r.negligible(guard);
}

LineSeries line_quotient(const LineSeries& f, const LineSeries& g, int32_t guard) {
  if (g.negligible(guard)) throw std::domain_error("line quotient: division by zero");
  if (f.negligible(guard)) return LineSeries(f.context(), f.line());
  WeierstrassDecomposition w = weierstrass_prepare(g);
  PAdicScalar p_pow = PAdicScalar::from_integer(f.context().coeff, f.context().coeff.prime)
                          .pow(-w.p_exponent);
  LineSeries scaled = f.scale(p_pow);
  if (w.lambda == 0) return scaled * w.unit.inverse_unit();
  auto [q, r] = divmod_monic(scaled, w.distinguished);
  if (!r.negligible(guard)) throw std::domain_error("line quotient: not divisible");
  return q * w.unit.inverse_unit();
}

LineSeries line_gcd(const LineSeries& f, const LineSeries& g, int32_t guard) {
  if (f.negligible(guard)) return normalize_line_ideal(g);
  if (g.negligible(guard)) return normalize_line_ideal(f);
  LineSeries a = weierstrass_prepare(f).distinguished;
  LineSeries b = weierstrass_prepare(g).distinguished;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (b.degree() > 0) {
    auto [q, r] = divmod_monic(a, b);
    (void)q;
    if (r.negligible(guard)) return b;
    a = b;
    b = weierstrass_prepare(r).distinguished;
  }
  return LineSeries::one(f.context(), f.line());
}

LineSeries normalize_line_ideal(const LineSeries& f) {
  if (f.is_zero() || f.negligible(0)) return LineSeries(f.context(), f.line());
  return weierstrass_prepare(f).distinguished;
}

bool line_ideal_equal(const LineSeries& f, const LineSeries& g, int32_t guard) {
  bool fz = f.negligible(guard), gz = g.negligible(guard);
  if (fz || gz) return fz == gz;
  return weak_equal(normalize_line_ideal(f), normalize_line_ideal(g), guard);
}

std::vector<std::pair<LineSeries, int32_t>> squarefree_decomposition(const LineSeries& f,
                                                                     int32_t guard) {
  std::vector<std::pair<LineSeries, int32_t>> out;
  LineSeries P = normalize_line_ideal(f);
  if (P.is_zero()) throw std::domain_error("squarefree: zero input");
  if (P.degree() == 0) return out;

  // Yun over the characteristic-zero coefficient field; gcd(x, 0) = x
  LineSeries b = line_gcd(P, P.derivative(), guard);
  LineSeries c = line_quotient(P, b, guard);
  LineSeries d = line_quotient(P.derivative(), b, guard) - c.derivative();
  for (int32_t i = 1; c.degree() > 0; ++i) {
    LineSeries part = line_gcd(c, d, guard);
    if (part.degree() > 0) out.emplace_back(part, i);
    c = line_quotient(c, part, guard);
    d = (d.negligible(guard) ? LineSeries(P.context(), P.line())
                             : line_quotient(d, part, guard)) -
        c.derivative();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-variable ring as Lambda_anti[S], truncated
// ---------------------------------------------------------------------------

namespace {

// coefficients of S^k as anticyclotomic line series
std::vector<LineSeries> s_coefficients(const IwasawaSeries& f) {
  std::vector<LineSeries> out;
  int32_t cap = f.context().degree_cap;
  out.reserve(static_cast<size_t>(cap));
  for (int32_t k = 0; k < cap; ++k) out.push_back(f.s_coefficient(k));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

IwasawaSeries assemble(const SeriesContext& ctx, const std::vector<LineSeries>& coeffs) {
  IwasawaSeries f(ctx);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& [j, c] : coeffs[k].terms()) f.set_coeff(static_cast<int32_t>(k), j, c);
  }
  return f;
}

int32_t s_degree(const std::vector<LineSeries>& coeffs, int32_t guard) {
  for (int32_t k = static_cast<int32_t>(coeffs.size()) - 1; k >= 0; --k)
    if (!coeffs[static_cast<size_t>(k)].negligible(guard)) return k;
  return -1;
}

LineSeries poly_content(const std::vector<LineSeries>& coeffs, int32_t guard,
                        const SeriesContext& ctx) {
  LineSeries c(ctx, Line::anticyclotomic);
  for (const auto& ck : coeffs) {
    if (ck.negligible(guard)) continue;
    c = c.is_zero() ? normalize_line_ideal(ck) : line_gcd(c, ck, guard);
    if (c.degree() == 0) return LineSeries::one(ctx, Line::anticyclotomic);
  }
  return c;
}

std::vector<LineSeries> divide_coeffs(const std::vector<LineSeries>& coeffs,
                                      const LineSeries& divisor, int32_t guard) {
  std::vector<LineSeries> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs)
    out.push_back(c.negligible(guard) ? LineSeries(c.context(), c.line())
                                      : line_quotient(c, divisor, guard));
  return out;
}

// pseudo-remainder of a by b in Lambda_anti[S]; both through s_coefficients
std::vector<LineSeries> pseudo_rem(std::vector<LineSeries> a, const std::vector<LineSeries>& b,
                                   int32_t guard, const SeriesContext& ctx) {
  int32_t db = s_degree(b, guard);
  const LineSeries& lc_b = b[static_cast<size_t>(db)];
  int32_t da = s_degree(a, guard);
  while (da >= db && da >= 0) {
    LineSeries lead = a[static_cast<size_t>(da)];
    // a <- lc_b * a - lead * S^(da-db) * b
    for (auto& c : a) c = lc_b * c;
    for (int32_t j = 0; j <= db; ++j) {
      size_t idx = static_cast<size_t>(da - db + j);
      if (idx < a.size()) a[idx] = a[idx] - lead * b[static_cast<size_t>(j)];
    }
    for (int32_t k = da; k >= 0; --k) {
      if (a[static_cast<size_t>(k)].negligible(guard))
        a[static_cast<size_t>(k)] = LineSeries(ctx, Line::anticyclotomic);
    }
    int32_t next = s_degree(a, guard);
    if (next >= da) {
      // leading term failed to cancel at working precision
      a[static_cast<size_t>(da)] = LineSeries(ctx, Line::anticyclotomic);
      next = s_degree(a, guard);
    }
    da = next;
  }
  return a;
}

std::vector<LineSeries> primitive_part(std::vector<LineSeries> coeffs, int32_t guard,
                                       const SeriesContext& ctx) {
  LineSeries cont = poly_content(coeffs, guard, ctx);
  if (cont.is_zero() || cont.degree() <= 0) {
    // still strip the p-content and the unit of the lowest coefficient later;
    // ideals ignore units so only variable content matters here
    return coeffs;
  }
  return divide_coeffs(coeffs, cont, guard);
}

}  // namespace

IwasawaSeries lambda_gcd(const IwasawaSeries& f, const IwasawaSeries& g, int32_t guard) {
  const SeriesContext& ctx = f.context();
  if (f.negligible(guard)) return normalize_lambda_ideal(g);
  if (g.negligible(guard)) return normalize_lambda_ideal(f);

  auto cf = s_coefficients(f);
  auto cg = s_coefficients(g);
  LineSeries content = line_gcd(poly_content(cf, guard, ctx), poly_content(cg, guard, ctx), guard);

  auto a = primitive_part(cf, guard, ctx);
  auto b = primitive_part(cg, guard, ctx);
  if (s_degree(a, guard) < s_degree(b, guard)) std::swap(a, b);
  while (s_degree(b, guard) > 0) {
    auto r = pseudo_rem(a, b, guard, ctx);
    a = b;
    if (s_degree(r, guard) < 0) {
      b.clear();
      break;
    }
    b = primitive_part(r, guard, ctx);
  }
  std::vector<LineSeries> prim_gcd;
  if (s_degree(b, guard) == 0) {
    // degree dropped to a pure line element: primitive, so the gcd is a unit
    prim_gcd = {LineSeries::one(ctx, Line::anticyclotomic)};
  } else {
    prim_gcd = a;
  }
  IwasawaSeries result = assemble(ctx, prim_gcd) * IwasawaSeries::from_line(content);
  return normalize_lambda_ideal(result);
}

bool lambda_divides(const IwasawaSeries& g, const IwasawaSeries& f, int32_t guard) {
  const SeriesContext& ctx = g.context();
  if (g.negligible(guard)) return f.negligible(guard);
  if (f.negligible(guard)) return true;
  auto cg = s_coefficients(g);
  auto cf = s_coefficients(f);
  LineSeries cont_g = poly_content(cg, guard, ctx);
  LineSeries cont_f = poly_content(cf, guard, ctx);
  if (!line_divides(cont_g, cont_f, guard)) return false;
  auto gp = primitive_part(cg, guard, ctx);
  auto fp = primitive_part(cf, guard, ctx);
  int32_t dg = s_degree(gp, guard);
  int32_t df = s_degree(fp, guard);
  if (dg == 0) return true;
  if (dg > df) return false;
  auto r = pseudo_rem(fp, gp, guard, ctx);
  return s_degree(r, guard) < 0;
}

bool lambda_ideal_equal(const IwasawaSeries& f, const IwasawaSeries& g, int32_t guard) {
  bool fz = f.negligible(guard), gz = g.negligible(guard);
  if (fz || gz) return fz == gz;
  return lambda_divides(f, g, guard) && lambda_divides(g, f, guard);
}

IwasawaSeries normalize_lambda_ideal(const IwasawaSeries& f) {
  const SeriesContext& ctx = f.context();
  if (f.negligible(0)) return IwasawaSeries(ctx);
  auto coeffs = s_coefficients(f);
  // S-power: leading zero coefficients
  size_t s_pow = 0;
  while (s_pow < coeffs.size() && coeffs[s_pow].negligible(0)) ++s_pow;
  std::vector<LineSeries> rest(coeffs.begin() + static_cast<long>(s_pow), coeffs.end());
  LineSeries content = poly_content(rest, 0, ctx);
  std::vector<LineSeries> prim =
      content.degree() > 0 ? divide_coeffs(rest, content, 0) : rest;
  // scale the primitive part so its lowest nonzero coefficient becomes
  // distinguished: strip that coefficient's unit and p-power factors
  size_t low = 0;
  while (low < prim.size() && prim[low].negligible(0)) ++low;
  if (low < prim.size()) {
    WeierstrassDecomposition w = weierstrass_prepare(prim[low]);
    PAdicScalar p_pow =
        PAdicScalar::from_integer(ctx.coeff, ctx.coeff.prime).pow(-w.p_exponent);
    LineSeries unit_inv = w.unit.inverse_unit();
    for (auto& c : prim) c = (c * unit_inv).scale(p_pow);
  }
  IwasawaSeries out = assemble(ctx, prim) * IwasawaSeries::from_line(
                                                content.is_zero()
                                                    ? LineSeries::one(ctx, Line::anticyclotomic)
                                                    : content);
  return out.mul_monomial(static_cast<int32_t>(s_pow), 0);
}

// ---------------------------------------------------------------------------
// Characteristic ideals
// ---------------------------------------------------------------------------

const char* ring_name(RingTag tag) {
  switch (tag) {
    case RingTag::lambda: return "Lambda";
    case RingTag::lambda_cycl: return "Lambda_cycl";
    case RingTag::lambda_anti: return "Lambda_anti";
  }
  return "?";
}

bool IdealGenerator::is_zero() const {
  if (std::holds_alternative<IwasawaSeries>(generator))
    return std::get<IwasawaSeries>(generator).is_zero();
  return std::get<LineSeries>(generator).is_zero();
}

std::string IdealGenerator::to_text() const {
  std::string body = std::holds_alternative<IwasawaSeries>(generator)
                         ? std::get<IwasawaSeries>(generator).to_text()
                         : std::get<LineSeries>(generator).to_text();
  return std::string(ring_name(ring)) + "-ideal (" + body + ")";
}

bool ideal_equal(const IdealGenerator& a, const IdealGenerator& b, int32_t guard) {
  if (a.ring != b.ring) return false;
  if (std::holds_alternative<IwasawaSeries>(a.generator)) {
    return lambda_ideal_equal(std::get<IwasawaSeries>(a.generator),
                              std::get<IwasawaSeries>(b.generator), guard);
  }
  return line_ideal_equal(std::get<LineSeries>(a.generator),
                          std::get<LineSeries>(b.generator), guard);
}

IdealGenerator char_ideal_line(const Matrix<LineSeries>& presentation) {
  if (presentation.rows() == 0 || presentation.cols() == 0)
    throw std::invalid_argument("char ideal: empty presentation");
  const LineSeries& probe = presentation.at(0, 0);
  LineSnf snf = line_snf(presentation, false);
  if (snf.rank < presentation.rows())
    throw std::domain_error("char ideal: cokernel not torsion over the line ring");
  LineSeries prod = LineSeries::one(probe.context(), probe.line());
  for (const auto& d : snf.divisors) prod = prod * d;
  RingTag tag = probe.line() == Line::cyclotomic ? RingTag::lambda_cycl : RingTag::lambda_anti;
  return {tag, normalize_line_ideal(prod)};
}

IwasawaSeries det_series(const Matrix<IwasawaSeries>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  size_t n = m.rows();
  const SeriesContext& ctx = m.at(0, 0).context();
  if (n == 1) return m.at(0, 0);
  IwasawaSeries acc(ctx);
  for (size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    Matrix<IwasawaSeries> minor(n - 1, n - 1, IwasawaSeries(ctx));
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    IwasawaSeries term = m.at(0, j) * det_series(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

LineSeries det_line(const Matrix<LineSeries>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  size_t n = m.rows();
  const LineSeries& probe = m.at(0, 0);
  if (n == 1) return probe;
  LineSeries acc(probe.context(), probe.line());
  for (size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    Matrix<LineSeries> minor(n - 1, n - 1, LineSeries(probe.context(), probe.line()));
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    LineSeries term = m.at(0, j) * det_line(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

IdealGenerator char_gcd_two_var(const Matrix<IwasawaSeries>& presentation) {
  size_t m = presentation.rows(), n = presentation.cols();
  if (m == 0 || n < m)
    throw std::domain_error("char ideal: presentation cannot have torsion cokernel");
  const SeriesContext& ctx = presentation.at(0, 0).context();

  // enumerate column subsets of size m
  std::vector<size_t> cols(m);
  for (size_t i = 0; i < m; ++i) cols[i] = i;
  IwasawaSeries acc(ctx);
  bool have = false;
  while (true) {
    Matrix<IwasawaSeries> sub(m, m, IwasawaSeries(ctx));
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c < m; ++c) sub.at(r, c) = presentation.at(r, cols[c]);
    IwasawaSeries minor = det_series(sub);
    if (!minor.negligible()) {
      acc = have ? lambda_gcd(acc, minor) : normalize_lambda_ideal(minor);
      have = true;
      if (acc.is_unit()) break;  // unit ideal, no smaller gcd possible
    }
    // next combination
    size_t i = m;
    while (i > 0 && cols[i - 1] == n - m + i - 1) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (size_t k = i; k < m; ++k) cols[k] = cols[k - 1] + 1;
  }
  if (!have) throw std::domain_error("char ideal: all maximal minors vanish at working precision");
  return {RingTag::lambda, acc};
}

}  // namespace orthlab
