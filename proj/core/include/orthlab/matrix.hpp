#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace orthlab {

/// Dense row-major matrix over an arbitrary value type; the algebra lives in
/// free functions next to the concrete element types.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& at(size_t i, size_t j) {
    check(i, j);
    return data_[i * cols_ + j];
  }
  const T& at(size_t i, size_t j) const {
    check(i, j);
    return data_[i * cols_ + j];
  }

  void swap_rows(size_t a, size_t b) {
    for (size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(size_t a, size_t b) {
    for (size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

  Matrix<T> transposed() const {
    if (rows_ == 0 || cols_ == 0) return *this;
    Matrix<T> out(cols_, rows_, data_[0]);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

 private:
  void check(size_t i, size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
  }

  size_t rows_, cols_;
  std::vector<T> data_;
};

}  // namespace orthlab
