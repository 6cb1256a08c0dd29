#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pagraph/types.hpp"

namespace pagraph {

// Dense row-major matrix of doubles. Holds node features (one row per node)
// as well as classifier weights; everything in the project is 64-bit.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::int64_t rows, std::int64_t cols, double fill = 0.0);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  std::int64_t size() const { return rows_ * cols_; }

  double& operator()(std::int64_t i, std::int64_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::int64_t i, std::int64_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::int64_t i) {
    return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(std::int64_t i) const {
    return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> data_;
};

// C = A * B. Throws std::invalid_argument on inner-dimension mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);

// C = A^T * B without materializing the transpose.
Matrix matmul_at_b(const Matrix& a, const Matrix& b);

// C = A * B^T.
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

// New matrix whose row r is m.row(rows[r]).
Matrix gather_rows(const Matrix& m, std::span<const NodeId> rows);

double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace pagraph
