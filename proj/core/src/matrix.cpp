#include "pagraph/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pagraph {

namespace {

[[noreturn]] void dim_error(const char* op, const Matrix& a, const Matrix& b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " +
                              std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " and " +
                              std::to_string(b.rows()) + "x" +
                              std::to_string(b.cols()));
}

}  // namespace

Matrix::Matrix(std::int64_t rows, std::int64_t cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("Matrix: negative dimension");
  data_.assign(static_cast<std::size_t>(rows * cols), fill);
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) dim_error("matmul", a, b);
  Matrix c(a.rows(), b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::int64_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::int64_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) dim_error("matmul_at_b", a, b);
  Matrix c(a.cols(), b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    auto bi = b.row(i);
    for (std::int64_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      auto ck = c.row(k);
      for (std::int64_t j = 0; j < b.cols(); ++j) ck[j] += aik * bi[j];
    }
  }
  return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) dim_error("matmul_a_bt", a, b);
  Matrix c(a.rows(), b.rows());
  for (std::int64_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    for (std::int64_t j = 0; j < b.rows(); ++j) {
      auto bj = b.row(j);
      double s = 0.0;
      for (std::int64_t k = 0; k < a.cols(); ++k) s += ai[k] * bj[k];
      c(i, j) = s;
    }
  }
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::int64_t i = 0; i < m.rows(); ++i)
    for (std::int64_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

Matrix gather_rows(const Matrix& m, std::span<const NodeId> rows) {
  Matrix out(static_cast<std::int64_t>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const NodeId i = rows[r];
    if (i < 0 || i >= m.rows())
      throw std::invalid_argument("gather_rows: row index " +
                                  std::to_string(i) + " out of range [0, " +
                                  std::to_string(m.rows()) + ")");
    auto src = m.row(i);
    auto dst = out.row(static_cast<std::int64_t>(r));
    for (std::int64_t j = 0; j < m.cols(); ++j) dst[j] = src[j];
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    dim_error("max_abs_diff", a, b);
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace pagraph
