#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "intrec/errors.hpp"
#include "intrec/rational.hpp"

namespace intrec {

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw DimensionError("ragged matrix literal");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      out(i, i) = 1;
    }
    return out;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  [[nodiscard]] std::vector<T> column(std::size_t j) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out.push_back((*this)(i, j));
    }
    return out;
  }

  /// Submatrix on the given columns (all rows).
  [[nodiscard]] Matrix select_columns(std::span<const std::size_t> cols) const {
    Matrix out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        out(i, k) = (*this)(i, cols[k]);
      }
    }
    return out;
  }

  [[nodiscard]] Matrix select(std::span<const std::size_t> rows,
                              std::span<const std::size_t> cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        out(i, k) = (*this)(rows[i], cols[k]);
      }
    }
    return out;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out(j, i) = (*this)(i, j);
      }
    }
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

RationalVector multiply(const RationalMatrix& a, const RationalVector& x);
IntVector multiply(const IntegerMatrix& a, const IntVector& x);
RationalVector multiply(const RationalMatrix& a, const IntVector& x);

RationalMatrix to_rational(const IntegerMatrix& a);
/// Requires every entry to be integral.
IntegerMatrix to_integer(const RationalMatrix& a);
bool is_integral(const RationalMatrix& a);

/// Scales each row by the lcm of its denominators; the kernel is unchanged.
IntegerMatrix scale_rows_to_integer(const RationalMatrix& a);

/// (A, -A): the column-split matrix used for signed variable splits.
RationalMatrix split_matrix(const RationalMatrix& a);

/// Checks the m >= 1, n >= 1 shape contract.
void require_nonempty(const RationalMatrix& a, const char* what);

}  // namespace intrec
