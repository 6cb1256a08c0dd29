#include "pagraph/trees.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pagraph {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Deterministic unit start vectors for the power iteration: attempt 0 is the
// normalized all-ones vector, later attempts perturb it from a fixed
// splitmix64 stream so a start orthogonal to the top eigenvector cannot wedge
// the iteration.
std::vector<double> power_start(std::int64_t d, int attempt) {
  std::vector<double> v(static_cast<std::size_t>(d), 1.0);
  if (attempt > 0) {
    std::uint64_t s = splitmix64(0x9E3779B97F4A7C15ull +
                                 static_cast<std::uint64_t>(attempt));
    for (double& e : v) {
      s = splitmix64(s);
      e = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
    }
  }
  const double nv = norm2(v);
  if (nv == 0.0) return power_start(d, attempt + 1);
  for (double& e : v) e /= nv;
  return v;
}

}  // namespace

std::vector<double> principal_direction(const Matrix& x,
                                        std::span<const NodeId> subset,
                                        int max_iters, double tol) {
  const std::int64_t d = x.cols();
  const auto m = static_cast<double>(subset.size());
  if (subset.empty()) return {};

  std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
  for (NodeId i : subset) {
    auto xi = x.row(i);
    for (std::int64_t j = 0; j < d; ++j) mean[static_cast<std::size_t>(j)] += xi[j];
  }
  for (double& e : mean) e /= m;

  double total_var = 0.0;
  for (NodeId i : subset) {
    auto xi = x.row(i);
    for (std::int64_t j = 0; j < d; ++j) {
      const double c = xi[j] - mean[static_cast<std::size_t>(j)];
      total_var += c * c;
    }
  }
  total_var /= m;
  if (total_var == 0.0) return {};  // all points identical

  // u = Cov * v applied matrix-free: Cov = (1/m) sum (x_i - mu)(x_i - mu)^T.
  auto apply_cov = [&](const std::vector<double>& v, std::vector<double>& u) {
    std::fill(u.begin(), u.end(), 0.0);
    for (NodeId i : subset) {
      auto xi = x.row(i);
      double w = 0.0;
      for (std::int64_t j = 0; j < d; ++j)
        w += (xi[j] - mean[static_cast<std::size_t>(j)]) *
             v[static_cast<std::size_t>(j)];
      if (w == 0.0) continue;
      for (std::int64_t j = 0; j < d; ++j)
        u[static_cast<std::size_t>(j)] +=
            w * (xi[j] - mean[static_cast<std::size_t>(j)]);
    }
    for (double& e : u) e /= m;
  };

  std::vector<double> u(static_cast<std::size_t>(d));
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<double> v = power_start(d, attempt);
    bool stuck = false;
    for (int it = 0; it < max_iters; ++it) {
      apply_cov(v, u);
      const double lambda = dot(v, u);
      double resid = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        const double r = u[j] - lambda * v[j];
        resid += r * r;
      }
      resid = std::sqrt(resid);
      const double nu = norm2(u);
      if (nu == 0.0) {  // v fell into the null space; try another start
        stuck = true;
        break;
      }
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = u[j] / nu;
      if (resid <= tol * std::max(std::abs(lambda), 1e-300)) break;
    }
    if (stuck) continue;
    // Fixed sign convention: largest-magnitude entry positive.
    std::size_t arg = 0;
    for (std::size_t j = 1; j < v.size(); ++j)
      if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
    if (v[arg] < 0.0)
      for (double& e : v) e = -e;
    return v;
  }
  return {};
}

PartitionTree build_partition_tree(const Matrix& x, const TreeConfig& cfg);

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, const TreeConfig& cfg)
      : x_(x), cfg_(cfg), rng_(cfg.seed) {}

  std::vector<PartitionTree::Node> build() {
    std::vector<NodeId> all(static_cast<std::size_t>(x_.rows()));
    for (NodeId i = 0; i < x_.rows(); ++i) all[static_cast<std::size_t>(i)] = i;
    build_node(std::move(all));
    return std::move(nodes_);
  }

 private:
  int build_node(std::vector<NodeId> subset) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    if (subset.size() <= static_cast<std::size_t>(cfg_.n0)) {
      nodes_[static_cast<std::size_t>(id)].points = std::move(subset);
      return id;
    }

    std::vector<double> dir = choose_direction(subset);
    std::vector<NodeId> left, right;
    SplitRule rule = SplitRule::kProjection;
    double threshold = 0.0;

    if (!dir.empty()) {
      std::vector<double> proj(subset.size());
      for (std::size_t k = 0; k < subset.size(); ++k)
        proj[k] = dot(x_.row(subset[k]), dir);

      // Lower median: element at position ceil(|S|/2) - 1 in sorted order.
      std::vector<double> sorted = proj;
      const std::size_t mid = (sorted.size() - 1) / 2;
      std::nth_element(sorted.begin(),
                       sorted.begin() + static_cast<std::ptrdiff_t>(mid),
                       sorted.end());
      threshold = sorted[mid];

      for (std::size_t k = 0; k < subset.size(); ++k)
        (proj[k] <= threshold ? left : right).push_back(subset[k]);
      if (right.empty()) {  // all projections tied at the median
        left.clear();
        rule = SplitRule::kIndexFallback;
      }
    } else {
      rule = SplitRule::kIndexFallback;
    }

    if (rule == SplitRule::kIndexFallback) {
      const std::size_t half = (subset.size() + 1) / 2;
      left.assign(subset.begin(), subset.begin() + static_cast<std::ptrdiff_t>(half));
      right.assign(subset.begin() + static_cast<std::ptrdiff_t>(half), subset.end());
      dir.clear();
      threshold = 0.0;
    }

    subset.clear();
    subset.shrink_to_fit();

    const int l = build_node(std::move(left));
    const int r = build_node(std::move(right));
    PartitionTree::Node& node = nodes_[static_cast<std::size_t>(id)];
    node.left = l;
    node.right = r;
    node.rule = rule;
    node.direction = std::move(dir);
    node.threshold = threshold;
    return id;
  }

  std::vector<double> choose_direction(std::span<const NodeId> subset) {
    if (cfg_.kind == TreeKind::kPrincipalAxis)
      return principal_direction(x_, subset, cfg_.power_iters, cfg_.power_tol);
    // Random projection: direction uniform on the unit sphere.
    std::vector<double> dir(static_cast<std::size_t>(x_.cols()));
    double n = 0.0;
    do {
      for (double& e : dir) e = rng_.normal();
      n = norm2(dir);
    } while (n == 0.0);
    for (double& e : dir) e /= n;
    return dir;
  }

  const Matrix& x_;
  TreeConfig cfg_;
  Rng rng_;
  std::vector<PartitionTree::Node> nodes_;
};

PartitionTree build_tree_checked(const Matrix& x, const TreeConfig& cfg,
                                 TreeKind expected) {
  if (cfg.kind != expected)
    throw std::invalid_argument("tree build: config kind does not match builder");
  if (x.rows() < 1 || x.cols() < 1)
    throw std::invalid_argument("tree build: features must be at least 1x1");
  if (cfg.n0 < 1) throw std::invalid_argument("tree build: n0 must be >= 1");
  return build_partition_tree(x, cfg);
}

}  // namespace

PartitionTree build_partition_tree(const Matrix& x, const TreeConfig& cfg) {
  PartitionTree tree;
  tree.nodes_ = TreeBuilder(x, cfg).build();
  tree.num_points_ = static_cast<NodeId>(x.rows());
  tree.config_ = cfg;
  return tree;
}

PartitionTree build_pa_tree(const Matrix& x, const TreeConfig& cfg) {
  return build_tree_checked(x, cfg, TreeKind::kPrincipalAxis);
}

PartitionTree build_rp_tree(const Matrix& x, const TreeConfig& cfg) {
  return build_tree_checked(x, cfg, TreeKind::kRandomProjection);
}

std::vector<std::vector<NodeId>> PartitionTree::leaves() const {
  std::vector<std::vector<NodeId>> out;
  std::vector<int> stack{root()};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& nd = node(id);
    if (nd.is_leaf()) {
      out.push_back(nd.points);
    } else {
      stack.push_back(nd.right);  // left child processed first
      stack.push_back(nd.left);
    }
  }
  return out;
}

}  // namespace pagraph
