#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pagraph/types.hpp"

namespace pagraph {

// Unordered node pair stored canonically with a < b.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Throws std::invalid_argument on a self pair.
Edge make_edge(NodeId u, NodeId v);

// Set of undirected edges over node indices: canonical pairs, sorted,
// duplicate-free, no self pairs.
class EdgeSet {
 public:
  EdgeSet() = default;

  // Canonicalizes arbitrary input: swaps pairs into a < b order, sorts,
  // removes duplicates. Self pairs are rejected.
  explicit EdgeSet(std::vector<Edge> edges);

  bool contains(NodeId u, NodeId v) const;
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  std::span<const Edge> edges() const { return edges_; }

  // Smallest node count that can hold every referenced index (0 if empty).
  NodeId min_node_count() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> edges_;  // sorted, unique
};

EdgeSet set_union(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_difference(const EdgeSet& a, const EdgeSet& b);
EdgeSet set_intersection(const EdgeSet& a, const EdgeSet& b);

}  // namespace pagraph
