#include "treepath/bptree.hpp"

#include <stdexcept>

namespace treepath {

RawBits bp_from_parents(std::span<const NodeId> parent) {
  std::size_t n = parent.empty() ? 0 : parent.size() - 1;
  RawBits bp;
  std::vector<NodeId> stack;
  stack.reserve(64);
  for (NodeId x = 1; x <= n; ++x) {
    NodeId p = parent[x];
    if (p >= x) throw std::invalid_argument("bp_from_parents: parent must precede child in preorder");
    while (!stack.empty() && stack.back() != p) {
      stack.pop_back();
      bp.push_back(false);
    }
    if (p != kNoNode && stack.empty()) throw std::invalid_argument("bp_from_parents: ids are not a preorder");
    stack.push_back(x);
    bp.push_back(true);
  }
  while (!stack.empty()) {
    stack.pop_back();
    bp.push_back(false);
  }
  return bp;
}

template class BpTree<PlainBitVector>;
template class BpTree<RrrBitVector>;

}  // namespace treepath
