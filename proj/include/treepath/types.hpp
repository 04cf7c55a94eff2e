#pragma once

#include <cstdint>
#include <utility>

namespace treepath {

// Preorder rank, 1-based. 0 is never a valid node.
using NodeId = uint32_t;
// Weight in rank space [1..sigma].
using Weight = uint32_t;

inline constexpr NodeId kNoNode = 0;

// A reported path node and its weight.
struct Hit {
  NodeId node;
  Weight weight;
  friend bool operator==(const Hit&, const Hit&) = default;
  friend auto operator<=>(const Hit&, const Hit&) = default;
};

}  // namespace treepath
