#pragma once

// Shared helpers for the unit suites: random instances, dense brute-force
// counterparts of the sparse operators, and a temp-dir RAII guard.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pagraph/edge_set.hpp"
#include "pagraph/matrix.hpp"
#include "pagraph/rng.hpp"
#include "pagraph/sparse.hpp"

namespace testutil {

using Dense = std::vector<std::vector<double>>;

inline pagraph::Matrix random_matrix(pagraph::Rng& rng, std::int64_t rows,
                                     std::int64_t cols, double lo = -1.0,
                                     double hi = 1.0) {
  pagraph::Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

inline pagraph::EdgeSet random_edge_set(pagraph::Rng& rng, pagraph::NodeId n,
                                        double p) {
  std::vector<pagraph::Edge> edges;
  for (pagraph::NodeId i = 0; i < n; ++i)
    for (pagraph::NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < p) edges.push_back({i, j});
  return pagraph::EdgeSet(std::move(edges));
}

inline Dense dense_zeros(std::size_t r, std::size_t c) {
  return Dense(r, std::vector<double>(c, 0.0));
}

inline Dense dense_from_adj(const pagraph::SparseAdjacency& adj) {
  const auto n = static_cast<std::size_t>(adj.num_nodes());
  Dense a = dense_zeros(n, n);
  for (pagraph::NodeId i = 0; i < adj.num_nodes(); ++i) {
    auto ns = adj.neighbors(i);
    auto ws = adj.weights(i);
    for (std::size_t k = 0; k < ns.size(); ++k)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(ns[k])] = ws[k];
  }
  return a;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense c = dense_zeros(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Dense dense_from_matrix(const pagraph::Matrix& m) {
  Dense d = dense_zeros(static_cast<std::size_t>(m.rows()),
                        static_cast<std::size_t>(m.cols()));
  for (std::int64_t i = 0; i < m.rows(); ++i)
    for (std::int64_t j = 0; j < m.cols(); ++j)
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return d;
}

// D^{-1/2} (A + I) D^{-1/2} assembled densely, the oracle for normalize().
inline Dense dense_normalized(const pagraph::SparseAdjacency& adj) {
  const auto n = static_cast<std::size_t>(adj.num_nodes());
  Dense a = dense_from_adj(adj);
  for (std::size_t i = 0; i < n; ++i) a[i][i] += 1.0;
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) deg += a[i][j];
    scale[i] = 1.0 / std::sqrt(deg);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] *= scale[i] * scale[j];
  return a;
}

inline double dense_max_abs_diff(const Dense& a, const pagraph::Matrix& b) {
  double m = 0.0;
  for (std::int64_t i = 0; i < b.rows(); ++i)
    for (std::int64_t j = 0; j < b.cols(); ++j)
      m = std::max(m, std::abs(a[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(j)] - b(i, j)));
  return m;
}

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    std::string tmpl = (std::filesystem::temp_directory_path() /
                        ("pagraph_" + tag + "_XXXXXX")).string();
    if (::mkdtemp(tmpl.data()) == nullptr)
      throw std::runtime_error("mkdtemp failed");
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
