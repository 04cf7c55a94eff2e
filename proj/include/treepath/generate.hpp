#pragma once

// Deterministic random trees and query workloads.

#include <cstdint>
#include <string_view>
#include <vector>

#include "treepath/tree.hpp"

namespace treepath {

enum class TreeShape { UniformAttach, LongPaths };

// Parses "uniform_attach" / "long_paths"; throws std::invalid_argument.
TreeShape parse_shape(std::string_view s);
std::string_view shape_name(TreeShape s);

// Random recursive tree relabelled to preorder, weights uniform over [1..sigma].
// long_paths: the parent of node i is i-1 with probability 0.85, otherwise
// uniform over 1..i-1.
WeightedTree gen_tree(std::size_t n, Weight sigma, TreeShape shape, uint64_t seed);

// Same topology rule, explicit weights (size n, 0-based) instead of random ones.
WeightedTree gen_tree_with_weights(std::size_t n, TreeShape shape, uint64_t seed,
                                   const std::vector<Weight>& weights, Weight sigma);

QueryKind parse_kind(std::string_view s);  // median|count|report
std::string_view kind_name(QueryKind k);

// Endpoints uniform over [1..n]. For Count/Report the weight range is drawn in
// rank space: i uniform in [1..n], j uniform in [i, min(n, i + ceil((n-i)/K))],
// a = sorted_weights[i], b = sorted_weights[j].
std::vector<PathQuery> gen_queries(const WeightedTree& t, QueryKind kind, uint32_t k_factor, std::size_t count,
                                   uint64_t seed);

// Exact expectation of (j - i + 1) / n under the rank-space rule above; equals
// the mean node coverage of [a, b] when the weights are a permutation.
double expected_rank_coverage(std::size_t n, uint32_t k_factor);

}  // namespace treepath
