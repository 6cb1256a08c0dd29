#include "pagraph/labels.hpp"

#include <stdexcept>

namespace pagraph {

void LabelAssignment::validate() const {
  if (n < 1) throw std::invalid_argument("LabelAssignment: n must be >= 1");
  if (labels.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("LabelAssignment: labels size " +
                                std::to_string(labels.size()) +
                                " != n = " + std::to_string(n));
  const std::int32_t c = num_classes();
  for (NodeId i = 0; i < n; ++i)
    if (labels[i] < -1 || labels[i] >= c)
      throw std::invalid_argument("LabelAssignment: label " +
                                  std::to_string(labels[i]) + " at node " +
                                  std::to_string(i) + " outside [-1, " +
                                  std::to_string(c) + ")");

  std::vector<std::int8_t> seen(static_cast<std::size_t>(n), 0);
  auto check_set = [&](const std::vector<NodeId>& set, const char* name,
                       bool needs_label) {
    for (NodeId i : set) {
      if (i < 0 || i >= n)
        throw std::invalid_argument(std::string("LabelAssignment: ") + name +
                                    " index " + std::to_string(i) +
                                    " out of range [0, " + std::to_string(n) +
                                    ")");
      if (seen[static_cast<std::size_t>(i)]++)
        throw std::invalid_argument(std::string("LabelAssignment: node ") +
                                    std::to_string(i) +
                                    " appears in more than one split set");
      if (needs_label && labels[i] < 0)
        throw std::invalid_argument(std::string("LabelAssignment: ") + name +
                                    " node " + std::to_string(i) +
                                    " has no label");
    }
  };
  check_set(train, "train", true);
  check_set(valid, "valid", true);
  check_set(test, "test", false);
}

}  // namespace pagraph
