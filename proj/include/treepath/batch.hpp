#pragma once

// Answering a whole workload against one index.

#include <span>
#include <vector>

#include "treepath/path_index.hpp"

namespace treepath {

std::vector<QueryResult> answer_batch_serial(const PathIndex& idx, std::span<const PathQuery> queries);

// OpenMP over the queries; results land in input order and equal the serial ones.
std::vector<QueryResult> answer_batch_parallel(const PathIndex& idx, std::span<const PathQuery> queries);

// Index of the first query whose results differ, or queries.size() if none.
std::size_t first_mismatch(std::span<const QueryResult> a, std::span<const QueryResult> b);

}  // namespace treepath
