#pragma once

// Weighted ordinal trees, path queries and their text formats.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treepath/types.hpp"

namespace treepath {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Ordinal tree on nodes 1..n in preorder, root = 1. Arrays are indexed by
// node id; slot 0 is unused.
class WeightedTree {
 public:
  WeightedTree() = default;
  // parent[x] < x for x >= 2, parent[1] == kNoNode; ids must be a preorder.
  WeightedTree(std::vector<NodeId> parent, std::vector<Weight> weights, Weight sigma,
               std::vector<int64_t> weight_decode = {});

  std::size_t size() const { return n_; }
  Weight sigma() const { return sigma_; }
  NodeId parent(NodeId x) const { return parent_[x]; }
  Weight weight(NodeId x) const { return weights_[x]; }
  std::span<const NodeId> children(NodeId x) const {
    return {child_list_.data() + child_start_[x], child_list_.data() + child_start_[x + 1]};
  }
  uint32_t depth(NodeId x) const { return depth_[x]; }

  const std::vector<NodeId>& parents() const { return parent_; }
  const std::vector<Weight>& weights() const { return weights_; }
  // decode[w] is the raw weight that rank w came from; identity if never normalized.
  const std::vector<int64_t>& weight_decode() const { return decode_; }

  std::string bp_string() const;

 private:
  std::size_t n_ = 0;
  Weight sigma_ = 1;
  std::vector<NodeId> parent_;
  std::vector<Weight> weights_;
  std::vector<uint32_t> depth_;
  std::vector<uint32_t> child_start_;
  std::vector<NodeId> child_list_;
  std::vector<int64_t> decode_;
};

// Tree from BP string plus weights (preorder).
WeightedTree tree_from_bp(std::string_view bp, std::vector<Weight> weights, Weight sigma);

// PTW text format:
//   <n> <sigma>
//   <BP string of 2n characters>
//   <n weights in [1..sigma], preorder>
WeightedTree parse_ptw(std::string_view text);
std::string serialize_ptw(const WeightedTree& t);

struct Normalized {
  std::vector<Weight> weights;   // dense order-preserving ranks, 1-based
  std::vector<int64_t> decode;   // decode[rank] = raw value, decode[0] unused
  Weight sigma;
};
Normalized normalize_weights(std::span<const int64_t> raw);

enum class QueryKind { Median, Count, Report };

struct PathQuery {
  QueryKind kind = QueryKind::Median;
  NodeId x = 1, y = 1;
  Weight a = 0, b = 0;  // Count/Report only
  friend bool operator==(const PathQuery&, const PathQuery&) = default;
};

struct QueryResult {
  bool ok = true;       // false: the query was rejected (bad node/range)
  uint64_t value = 0;   // median weight or count
  std::vector<Hit> hits;  // Report, sorted by node id
  friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Query file: one of "M x y", "C x y a b", "R x y a b" per line; lines
// starting with '#' are comments.
std::vector<PathQuery> parse_queries(std::string_view text);
std::string serialize_queries(std::span<const PathQuery> qs);
std::string format_answer(const PathQuery& q, const QueryResult& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace treepath
