#include "treepath/batch.hpp"

#include <algorithm>

namespace treepath {

std::vector<QueryResult> answer_batch_serial(const PathIndex& idx, std::span<const PathQuery> queries) {
  std::vector<QueryResult> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(idx.answer(q));
  return out;
}

std::vector<QueryResult> answer_batch_parallel(const PathIndex& idx, std::span<const PathQuery> queries) {
  std::vector<QueryResult> out(queries.size());
  const auto m = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < m; ++i) out[i] = idx.answer(queries[i]);
  return out;
}

std::size_t first_mismatch(std::span<const QueryResult> a, std::span<const QueryResult> b) {
  std::size_t m = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i)
    if (!(a[i] == b[i])) return i;
  return a.size() == b.size() ? a.size() : m;
}

}  // namespace treepath
