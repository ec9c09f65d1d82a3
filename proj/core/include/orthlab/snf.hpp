#pragma once

#include <vector>

#include "orthlab/ideals.hpp"
#include "orthlab/matrix.hpp"
#include "orthlab/series.hpp"

namespace orthlab {

/// Diagonalization result over a line ring.  `divisors` are the nonzero
/// elementary divisors in distinguished normal form, ordered by divisibility;
/// `right` accumulates the column operations, so kernel vectors of the input
/// are the columns of `right` at indices >= rank.
struct LineSnf {
  std::vector<LineSeries> divisors;
  size_t rank = 0;
  Matrix<LineSeries> right;
  bool right_tracked = false;
};

LineSnf line_snf(const Matrix<LineSeries>& m, bool track_right);

/// Kernel of the map x -> A x over the line ring, as column vectors.
std::vector<std::vector<LineSeries>> line_kernel(const Matrix<LineSeries>& a);

/// Free rank and torsion invariant factors of the cokernel of a presentation.
struct LineModuleShape {
  size_t free_rank = 0;
  std::vector<LineSeries> torsion;  // nonunit invariant factors, distinguished
};

LineModuleShape line_cokernel_shape(const Matrix<LineSeries>& presentation);

/// Exact linear algebra over the residue field Q_p at working precision.
size_t qp_rank(const Matrix<PAdicScalar>& a);
std::vector<std::vector<PAdicScalar>> qp_kernel(const Matrix<PAdicScalar>& a);

}  // namespace orthlab
