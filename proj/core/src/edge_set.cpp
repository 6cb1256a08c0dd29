#include "pagraph/edge_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pagraph {

Edge make_edge(NodeId u, NodeId v) {
  if (u == v)
    throw std::invalid_argument("make_edge: self pair (" + std::to_string(u) +
                                ", " + std::to_string(v) + ")");
  return u < v ? Edge{u, v} : Edge{v, u};
}

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.a == e.b)
      throw std::invalid_argument("EdgeSet: self pair at node " +
                                  std::to_string(e.a));
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool EdgeSet::contains(NodeId u, NodeId v) const {
  if (u == v) return false;
  const Edge e = u < v ? Edge{u, v} : Edge{v, u};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

NodeId EdgeSet::min_node_count() const {
  NodeId m = 0;
  for (const Edge& e : edges_) m = std::max(m, e.b + 1);
  return m;
}

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.edges().begin(), a.edges().end(), b.edges().begin(),
                 b.edges().end(), std::back_inserter(out));
  return EdgeSet(std::move(out));
}

EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  out.reserve(a.size());
  std::set_difference(a.edges().begin(), a.edges().end(), b.edges().begin(),
                      b.edges().end(), std::back_inserter(out));
  return EdgeSet(std::move(out));
}

EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(),
                        b.edges().end(), std::back_inserter(out));
  return EdgeSet(std::move(out));
}

}  // namespace pagraph
