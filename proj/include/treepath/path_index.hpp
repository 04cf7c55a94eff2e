#pragma once

// Common query contract shared by every path index.

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "treepath/tree.hpp"
#include "treepath/types.hpp"

namespace treepath {

class PathIndex {
 public:
  virtual ~PathIndex() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t nodes() const = 0;
  virtual Weight sigma() const = 0;

  // Number of nodes on the path between x and y, endpoints included.
  virtual std::size_t path_length(NodeId x, NodeId y) const = 0;
  // k-th smallest weight on the path, 0-based; k < path_length(x, y).
  virtual Weight select(NodeId x, NodeId y, std::size_t k) const = 0;
  virtual Weight median(NodeId x, NodeId y) const { return select(x, y, path_length(x, y) / 2); }
  virtual std::size_t count(NodeId x, NodeId y, Weight a, Weight b) const = 0;
  // Appends the path nodes with weight in [a, b], in no particular order.
  virtual void report(NodeId x, NodeId y, Weight a, Weight b, std::vector<Hit>& out) const = 0;

  virtual std::size_t size_in_bits() const = 0;

  // Validates the query and dispatches; report hits come back sorted by id.
  QueryResult answer(const PathQuery& q) const;
  bool valid(const PathQuery& q) const;
};

enum class IndexKind { Nv, NvLca, NvSuc, ExtUn, ExtRrr, ExtPlain, HpdUn, HpdRrr, HpdPlain };

inline constexpr std::array<IndexKind, 9> kAllIndexKinds{
    IndexKind::Nv,    IndexKind::NvLca,    IndexKind::NvSuc,  IndexKind::ExtUn,   IndexKind::ExtRrr,
    IndexKind::ExtPlain, IndexKind::HpdUn, IndexKind::HpdRrr, IndexKind::HpdPlain};

std::string_view index_name(IndexKind k);
// Throws std::invalid_argument for unknown names.
IndexKind parse_index_kind(std::string_view name);
std::vector<IndexKind> parse_index_list(std::string_view comma_separated);

std::unique_ptr<PathIndex> make_index(const WeightedTree& t, IndexKind kind);

}  // namespace treepath
