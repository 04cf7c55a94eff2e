#pragma once

// Measurement harness behind the command-line tool: timed builds, timed
// workloads, oracle verification and tree statistics.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "treepath/hpd_index.hpp"
#include "treepath/path_index.hpp"

namespace treepath {

struct BuiltIndex {
  std::unique_ptr<PathIndex> index;
  double build_s = 0;
  std::size_t peak_bytes = 0;  // heap high-water above the level before the build
};
BuiltIndex build_measured(const WeightedTree& t, IndexKind kind);

// Query files written by the generator start with "# kind=<k> k=<K> ...".
std::string workload_header(QueryKind kind, uint32_t k_factor, std::size_t count, uint64_t seed);
// K recorded in the header, 0 if there is none.
uint32_t workload_k_factor(std::string_view query_file_text);

// Distinct heavy chains met by the path x..y.
std::size_t path_chain_count(const HpdExplicit& hpd, NodeId x, NodeId y);

struct BenchOptions {
  unsigned repeat = 3;
  bool by_chains = false;  // extra rows per chain count, median queries only
};

struct BenchRow {
  std::string index;
  QueryKind kind = QueryKind::Median;
  uint32_t k_factor = 0;
  long chains = -1;  // -1: whole workload of this kind
  std::size_t n_queries = 0;
  double mean_us = 0, stddev_us = 0;
  double bits_per_node = 0, build_s = 0, peak_bits_per_node = 0;
};

std::vector<BenchRow> run_bench(const WeightedTree& t, std::span<const PathQuery> queries, uint32_t k_factor,
                                std::span<const IndexKind> kinds, const BenchOptions& opt);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& r);

struct VerifyOutcome {
  bool ok = true;
  std::string index;        // first failing index
  std::size_t query = 0;    // 0-based position of the first mismatch
  std::string expected, got;
};

// Answers of every listed index, built on subject, against nv built on reference.
VerifyOutcome verify_indexes(const WeightedTree& reference, const WeightedTree& subject,
                             std::span<const PathQuery> queries, std::span<const IndexKind> kinds);

struct TreeStats {
  std::size_t n = 0;
  Weight sigma = 0;
  double avg_depth = 0;
  uint32_t max_depth = 0;
  double unary_fraction = 0;
  std::size_t chains = 0;
  double mean_path_chains = 0;
};
TreeStats tree_stats(const WeightedTree& t, std::size_t samples = 10000, uint64_t seed = 1);
std::string format_stats(const TreeStats& s);

}  // namespace treepath
