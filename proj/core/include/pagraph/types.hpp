#pragma once

#include <cstdint>

namespace pagraph {

// Node index into a feature matrix / adjacency. Desk-scale datasets stay
// well below 2^31 nodes.
using NodeId = std::int32_t;

}  // namespace pagraph
