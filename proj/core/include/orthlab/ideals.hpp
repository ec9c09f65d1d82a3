#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "orthlab/matrix.hpp"
#include "orthlab/series.hpp"

namespace orthlab {

// ---------------------------------------------------------------------------
// One-variable structure theory
// ---------------------------------------------------------------------------

/// f = p^exponent * unit * distinguished with the distinguished part monic of
/// degree lambda and all lower coefficients of positive valuation.
struct WeierstrassDecomposition {
  int32_t p_exponent = 0;
  LineSeries unit;
  LineSeries distinguished;
  int32_t lambda = 0;
};

/// Weierstrass preparation at working precision.  Throws std::domain_error
/// when f is indistinguishable from zero or no unit coefficient is visible
/// below the truncation cap.
WeierstrassDecomposition weierstrass_prepare(const LineSeries& f);

/// Minimal coefficient valuation (the p-power content); f must be nonzero.
int32_t content_exponent(const LineSeries& f);

/// Division by a monic polynomial divisor: f = q * monic + r with
/// deg r < deg monic.  Exact in the truncated ring.
std::pair<LineSeries, LineSeries> divmod_monic(const LineSeries& f, const LineSeries& monic);

/// Divisibility in Lambda_line (x) Qp: remainder of f by the distinguished
/// part of g is negligible.
bool line_divides(const LineSeries& g, const LineSeries& f, int32_t guard = kDefaultGuard);

/// Exact quotient f / g; throws std::domain_error when g does not divide f.
LineSeries line_quotient(const LineSeries& f, const LineSeries& g, int32_t guard = kDefaultGuard);

/// Monic generator of (f, g): Euclid on distinguished parts via preparation.
LineSeries line_gcd(const LineSeries& f, const LineSeries& g, int32_t guard = kDefaultGuard);

/// Distinguished-polynomial normal form of the principal ideal (f): the unit
/// and all p-powers stripped.  Zero input stays zero; units normalize to 1.
LineSeries normalize_line_ideal(const LineSeries& f);

/// Equality of principal ideals up to units of the line ring.
bool line_ideal_equal(const LineSeries& f, const LineSeries& g, int32_t guard = kDefaultGuard);

/// Squarefree decomposition f = prod part^multiplicity (Yun); f distinguished.
/// Parts come out distinguished, pairwise coprime, multiplicities increasing.
std::vector<std::pair<LineSeries, int32_t>> squarefree_decomposition(
    const LineSeries& f, int32_t guard = kDefaultGuard);

// ---------------------------------------------------------------------------
// Two-variable divisor theory (Lambda treated as Lambda_anti[S] up to the cap)
// ---------------------------------------------------------------------------

/// gcd in the unique-factorization structure of the two-variable ring,
/// computed by content/primitive-part splitting over the anticyclotomic line
/// and a primitive pseudo-remainder sequence in S.
IwasawaSeries lambda_gcd(const IwasawaSeries& f, const IwasawaSeries& g,
                         int32_t guard = kDefaultGuard);

bool lambda_divides(const IwasawaSeries& g, const IwasawaSeries& f,
                    int32_t guard = kDefaultGuard);

/// Equality of principal ideals of Lambda up to units (mutual divisibility).
bool lambda_ideal_equal(const IwasawaSeries& f, const IwasawaSeries& g,
                        int32_t guard = kDefaultGuard);

/// Deterministic representative of the ideal (f): S-power times distinguished
/// line content times a primitive part scaled so its lowest coefficient is
/// normalized.
IwasawaSeries normalize_lambda_ideal(const IwasawaSeries& f);

// ---------------------------------------------------------------------------
// Principal ideal generators and characteristic ideals
// ---------------------------------------------------------------------------

enum class RingTag : uint8_t { lambda, lambda_cycl, lambda_anti };

const char* ring_name(RingTag tag);

/// Unit-normalized generator of a principal ideal of Lambda or a line ring.
struct IdealGenerator {
  RingTag ring;
  std::variant<IwasawaSeries, LineSeries> generator;

  bool is_zero() const;
  std::string to_text() const;
};

bool ideal_equal(const IdealGenerator& a, const IdealGenerator& b,
                 int32_t guard = kDefaultGuard);

/// Characteristic ideal of the cokernel of a matrix over a line ring: product
/// of the elementary divisors of the Smith normal form.  Throws
/// std::domain_error when the cokernel is not torsion.
IdealGenerator char_ideal_line(const Matrix<LineSeries>& presentation);

/// Divisorial part of the 0th Fitting ideal over the two-variable ring: the
/// gcd of the maximal minors, unit-normalized.  Throws std::domain_error when
/// every maximal minor is indistinguishable from zero.
IdealGenerator char_gcd_two_var(const Matrix<IwasawaSeries>& presentation);

/// Determinant by cofactor expansion (ranks here are small).
IwasawaSeries det_series(const Matrix<IwasawaSeries>& m);
LineSeries det_line(const Matrix<LineSeries>& m);

}  // namespace orthlab
