#pragma once

// Brute-force path answers straight from a parent array.

#include <algorithm>
#include <vector>

#include "treepath/tree.hpp"

namespace treepath::testing {

inline std::vector<NodeId> brute_path(const WeightedTree& t, NodeId x, NodeId y) {
  std::vector<NodeId> ax, ay;
  for (NodeId v = x; v != kNoNode; v = t.parent(v)) ax.push_back(v);
  for (NodeId v = y; v != kNoNode; v = t.parent(v)) ay.push_back(v);
  // strip the common suffix (shared ancestors), keep the lowest one once
  while (ax.size() > 1 && ay.size() > 1 && ax[ax.size() - 2] == ay[ay.size() - 2]) {
    ax.pop_back();
    ay.pop_back();
  }
  ay.pop_back();
  ax.insert(ax.end(), ay.rbegin(), ay.rend());
  return ax;
}

inline QueryResult brute_answer(const WeightedTree& t, const PathQuery& q) {
  QueryResult r;
  if (q.x < 1 || q.x > t.size() || q.y < 1 || q.y > t.size() ||
      (q.kind != QueryKind::Median && (q.a < 1 || q.a > q.b || q.b > t.sigma()))) {
    r.ok = false;
    return r;
  }
  auto path = brute_path(t, q.x, q.y);
  if (q.kind == QueryKind::Median) {
    std::vector<Weight> w;
    for (NodeId v : path) w.push_back(t.weight(v));
    std::sort(w.begin(), w.end());
    r.value = w[w.size() / 2];
    return r;
  }
  std::sort(path.begin(), path.end());
  for (NodeId v : path)
    if (q.a <= t.weight(v) && t.weight(v) <= q.b) r.hits.push_back(Hit{v, t.weight(v)});
  r.value = r.hits.size();
  if (q.kind == QueryKind::Count) r.hits.clear();
  return r;
}

inline const char* kWorkedTree = "10 8\n(((()())())((())()))\n5 3 8 1 4 8 2 7 6 2\n";

}  // namespace treepath::testing
