#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "toric_af/numeric.hpp"

namespace toric_af {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> column(std::size_t c) const;
  std::vector<std::vector<Integer>> to_rows() const;

  IntMatrix transpose() const;
  /// Fraction-free Gaussian elimination (Bareiss).
  Integer determinant() const;
  bool is_unimodular() const;
  /// Exact inverse; throws NotUnimodular unless det = +-1.
  IntMatrix unimodular_inverse() const;
  bool is_nonnegative() const;

  std::vector<Integer> apply(std::span<const Integer> v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

}  // namespace toric_af
