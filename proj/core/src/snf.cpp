#include "orthlab/snf.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace orthlab {

namespace {

// Euclidean size of a nonzero entry: the Weierstrass degree of its
// distinguished part.  Units have size 0.
int32_t entry_size(const LineSeries& f) { return weierstrass_prepare(f).lambda; }

struct Pivot {
  size_t row, col;
  int32_t size;
};

std::optional<Pivot> find_pivot(const Matrix<LineSeries>& b, size_t from) {
  std::optional<Pivot> best;
  for (size_t i = from; i < b.rows(); ++i) {
    for (size_t j = from; j < b.cols(); ++j) {
      const LineSeries& e = b.at(i, j);
      if (e.negligible()) continue;
      int32_t s = entry_size(e);
      if (!best || s < best->size) best = Pivot{i, j, s};
      if (best->size == 0) return best;
    }
  }
  return best;
}

}  // namespace

LineSnf line_snf(const Matrix<LineSeries>& m, bool track_right) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("snf: empty matrix");
  const SeriesContext& ctx = m.at(0, 0).context();
  Line line = m.at(0, 0).line();
  Matrix<LineSeries> b = m;
  size_t nr = b.rows(), nc = b.cols();

  LineSnf out;
  out.right_tracked = track_right;
  out.right = Matrix<LineSeries>(nc, nc, LineSeries(ctx, line));
  for (size_t j = 0; j < nc; ++j) out.right.at(j, j) = LineSeries::one(ctx, line);

  auto col_swap = [&](size_t a, size_t c) {
    b.swap_cols(a, c);
    if (track_right) out.right.swap_cols(a, c);
  };
  auto col_axpy = [&](size_t dst, size_t src, const LineSeries& f) {
    // col_dst -= f * col_src
    for (size_t i = 0; i < nr; ++i) b.at(i, dst) = b.at(i, dst) - f * b.at(i, src);
    if (track_right)
      for (size_t i = 0; i < nc; ++i)
        out.right.at(i, dst) = out.right.at(i, dst) - f * out.right.at(i, src);
  };

  size_t t = 0;
  size_t dmax = std::min(nr, nc);
  std::vector<LineSeries> diag;
  while (t < dmax) {
    auto piv = find_pivot(b, t);
    if (!piv) break;
    if (piv->row != t) b.swap_rows(piv->row, t);
    if (piv->col != t) col_swap(piv->col, t);

    bool stable = false;
    while (!stable) {
      stable = true;
      WeierstrassDecomposition w = weierstrass_prepare(b.at(t, t));
      PAdicScalar p_pow = PAdicScalar::from_integer(ctx.coeff, ctx.coeff.prime).pow(-w.p_exponent);
      LineSeries unit_inv = w.unit.inverse_unit().scale(p_pow);  // pivot = unit_inv^{-1} * P

      // clear the column below the pivot
      for (size_t i = t + 1; i < nr && stable; ++i) {
        const LineSeries& e = b.at(i, t);
        if (e.negligible()) continue;
        auto [q, r] = divmod_monic(e, w.distinguished);
        LineSeries factor = q * unit_inv;
        for (size_t j = t; j < nc; ++j) b.at(i, j) = b.at(i, j) - factor * b.at(t, j);
        if (!b.at(i, t).negligible()) {
          b.swap_rows(i, t);
          stable = false;
        }
      }
      if (!stable) continue;
      // clear the row to the right of the pivot
      for (size_t j = t + 1; j < nc && stable; ++j) {
        const LineSeries& e = b.at(t, j);
        if (e.negligible()) continue;
        auto [q, r] = divmod_monic(e, w.distinguished);
        col_axpy(j, t, q * unit_inv);
        if (!b.at(t, j).negligible()) {
          col_swap(j, t);
          stable = false;
        }
      }
      if (!stable) continue;
      // pivot must divide the remaining block for a genuine divisor chain
      for (size_t i = t + 1; i < nr && stable; ++i) {
        for (size_t j = t + 1; j < nc && stable; ++j) {
          if (b.at(i, j).negligible()) continue;
          auto [q, r] = divmod_monic(b.at(i, j), w.distinguished);
          (void)q;
          if (!r.negligible()) {
            for (size_t jj = 0; jj < nc; ++jj) b.at(t, jj) = b.at(t, jj) + b.at(i, jj);
            stable = false;
          }
        }
      }
    }
    diag.push_back(b.at(t, t));
    ++t;
  }

  out.rank = t;
  out.divisors.reserve(t);
  for (const auto& d : diag) out.divisors.push_back(normalize_line_ideal(d));
  return out;
}

std::vector<std::vector<LineSeries>> line_kernel(const Matrix<LineSeries>& a) {
  LineSnf snf = line_snf(a, true);
  std::vector<std::vector<LineSeries>> basis;
  for (size_t j = snf.rank; j < a.cols(); ++j) {
    std::vector<LineSeries> v;
    v.reserve(a.cols());
    for (size_t i = 0; i < a.cols(); ++i) v.push_back(snf.right.at(i, j));
    basis.push_back(std::move(v));
  }
  return basis;
}

LineModuleShape line_cokernel_shape(const Matrix<LineSeries>& presentation) {
  LineSnf snf = line_snf(presentation, false);
  LineModuleShape shape;
  shape.free_rank = presentation.rows() - snf.rank;
  for (const auto& d : snf.divisors) {
    if (d.degree() > 0) shape.torsion.push_back(d);
  }
  return shape;
}

// ---------------------------------------------------------------------------
// Q_p linear algebra
// ---------------------------------------------------------------------------

namespace {

// Gaussian elimination with minimal-valuation pivoting; returns the echelon
// form, pivot columns, and the column transform when requested.
struct QpElim {
  Matrix<PAdicScalar> mat;
  std::vector<size_t> pivot_cols;
};

QpElim qp_eliminate(const Matrix<PAdicScalar>& a) {
  QpElim out{a, {}};
  Matrix<PAdicScalar>& b = out.mat;
  size_t nr = b.rows(), nc = b.cols();
  size_t row = 0;
  for (size_t col = 0; col < nc && row < nr; ++col) {
    std::optional<size_t> best;
    for (size_t i = row; i < nr; ++i) {
      const PAdicScalar& e = b.at(i, col);
      if (e.is_zero()) continue;
      if (!best || *e.valuation() < *b.at(*best, col).valuation()) best = i;
    }
    if (!best) continue;
    if (*best != row) b.swap_rows(*best, row);
    PAdicScalar inv = b.at(row, col).inv();
    for (size_t i = row + 1; i < nr; ++i) {
      if (b.at(i, col).is_zero()) continue;
      PAdicScalar f = b.at(i, col) * inv;
      for (size_t j = col; j < nc; ++j) b.at(i, j) = b.at(i, j) - f * b.at(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

}  // namespace

size_t qp_rank(const Matrix<PAdicScalar>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return qp_eliminate(a).pivot_cols.size();
}

std::vector<std::vector<PAdicScalar>> qp_kernel(const Matrix<PAdicScalar>& a) {
  std::vector<std::vector<PAdicScalar>> basis;
  if (a.rows() == 0 || a.cols() == 0) return basis;
  const PadicContext& ctx = a.at(0, 0).context();
  QpElim elim = qp_eliminate(a);
  const auto& piv = elim.pivot_cols;
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : piv) is_pivot[c] = true;

  for (size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<PAdicScalar> v(a.cols(), PAdicScalar::zero(ctx));
    v[free_col] = PAdicScalar::one(ctx);
    // back-substitute through the echelon rows
    for (size_t r = piv.size(); r-- > 0;) {
      size_t pc = piv[r];
      if (pc > free_col) continue;
      PAdicScalar s = PAdicScalar::zero(ctx);
      for (size_t j = pc + 1; j < a.cols(); ++j) s = s + elim.mat.at(r, j) * v[j];
      v[pc] = -(s * elim.mat.at(r, pc).inv());
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace orthlab
