#include "treepath/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "treepath/alloc_counter.hpp"
#include "treepath/batch.hpp"
#include "treepath/generate.hpp"

namespace treepath {

namespace {

using Clock = std::chrono::steady_clock;

// keeps timed answers observable
volatile uint64_t g_sink;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs the batch once and returns wall seconds.
double time_batch(const PathIndex& idx, std::span<const PathQuery> qs) {
  uint64_t acc = 0;
  auto t0 = Clock::now();
  for (const auto& q : qs) {
    auto r = idx.answer(q);
    acc += r.value + r.hits.size();
  }
  double s = seconds_since(t0);
  g_sink = acc;
  return s;
}

// Mean and stddev of the per-query latency across repeats, in microseconds.
std::pair<double, double> time_workload(const PathIndex& idx, std::span<const PathQuery> qs, unsigned repeat) {
  if (qs.empty()) return {0, 0};
  time_batch(idx, qs);  // warm-up
  std::vector<double> per_query;
  for (unsigned r = 0; r < std::max(1u, repeat); ++r) per_query.push_back(time_batch(idx, qs) * 1e6 / qs.size());
  double mean = 0;
  for (double v : per_query) mean += v;
  mean /= per_query.size();
  double var = 0;
  for (double v : per_query) var += (v - mean) * (v - mean);
  double sd = per_query.size() > 1 ? std::sqrt(var / (per_query.size() - 1)) : 0;
  return {mean, sd};
}

std::string fmt(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

}  // namespace

BuiltIndex build_measured(const WeightedTree& t, IndexKind kind) {
  BuiltIndex b;
  std::size_t before = alloc::current_bytes();
  alloc::reset_peak();
  auto t0 = Clock::now();
  b.index = make_index(t, kind);
  b.build_s = seconds_since(t0);
  b.peak_bytes = alloc::peak_bytes() - before;
  return b;
}

std::string workload_header(QueryKind kind, uint32_t k_factor, std::size_t count, uint64_t seed) {
  return "# kind=" + std::string(kind_name(kind)) + " k=" + std::to_string(k_factor) +
         " count=" + std::to_string(count) + " seed=" + std::to_string(seed) + "\n";
}

uint32_t workload_k_factor(std::string_view text) {
  if (text.empty() || text.front() != '#') return 0;
  auto line = text.substr(0, text.find('\n'));
  auto at = line.find(" k=");
  if (at == std::string_view::npos) return 0;
  uint32_t k = 0;
  for (std::size_t i = at + 3; i < line.size() && line[i] >= '0' && line[i] <= '9'; ++i) k = k * 10 + (line[i] - '0');
  return k;
}

std::size_t path_chain_count(const HpdExplicit& hpd, NodeId x, NodeId y) {
  thread_local std::vector<ChainInterval> parts;
  hpd.decompose(x, y, parts);
  // only the chain through the LCA can show up twice, as the last two parts
  std::size_t c = parts.size();
  if (c >= 2 && hpd.ref(parts[c - 1].deep) == hpd.ref(parts[c - 2].deep)) --c;
  return c;
}

std::vector<BenchRow> run_bench(const WeightedTree& t, std::span<const PathQuery> queries, uint32_t k_factor,
                                std::span<const IndexKind> kinds, const BenchOptions& opt) {
  std::map<QueryKind, std::vector<PathQuery>> by_kind;
  for (const auto& q : queries) by_kind[q.kind].push_back(q);

  // chain-count buckets of the median workload, shared by all indexes
  std::map<std::size_t, std::vector<PathQuery>> buckets;
  if (opt.by_chains && by_kind.count(QueryKind::Median)) {
    HpdExplicit hpd(t);
    for (const auto& q : by_kind[QueryKind::Median]) {
      if (q.x < 1 || q.x > t.size() || q.y < 1 || q.y > t.size()) continue;
      buckets[path_chain_count(hpd, q.x, q.y)].push_back(q);
    }
  }

  std::vector<BenchRow> rows;
  const double n = static_cast<double>(t.size());
  for (IndexKind kind : kinds) {
    BuiltIndex b = build_measured(t, kind);
    BenchRow base;
    base.index = std::string(index_name(kind));
    base.k_factor = k_factor;
    base.bits_per_node = b.index->size_in_bits() / n;
    base.build_s = b.build_s;
    base.peak_bits_per_node = 8.0 * b.peak_bytes / n;
    for (const auto& [qk, qs] : by_kind) {
      BenchRow r = base;
      r.kind = qk;
      r.n_queries = qs.size();
      std::tie(r.mean_us, r.stddev_us) = time_workload(*b.index, qs, opt.repeat);
      rows.push_back(r);
    }
    for (const auto& [chains, qs] : buckets) {
      BenchRow r = base;
      r.kind = QueryKind::Median;
      r.chains = static_cast<long>(chains);
      r.n_queries = qs.size();
      std::tie(r.mean_us, r.stddev_us) = time_workload(*b.index, qs, opt.repeat);
      rows.push_back(r);
    }
  }
  return rows;
}

std::string bench_csv_header() {
  return "index,kind,K,chains,n_queries,mean_us,stddev_us,bits_per_node,build_s,peak_bits_per_node\n";
}

std::string bench_csv_row(const BenchRow& r) {
  return r.index + "," + std::string(kind_name(r.kind)) + "," + (r.k_factor ? std::to_string(r.k_factor) : "") + "," +
         (r.chains >= 0 ? std::to_string(r.chains) : "") + "," + std::to_string(r.n_queries) + "," +
         fmt(r.mean_us, 4) + "," + fmt(r.stddev_us, 4) + "," + fmt(r.bits_per_node, 3) + "," + fmt(r.build_s, 4) +
         "," + fmt(r.peak_bits_per_node, 3) + "\n";
}

VerifyOutcome verify_indexes(const WeightedTree& reference, const WeightedTree& subject,
                             std::span<const PathQuery> queries, std::span<const IndexKind> kinds) {
  auto oracle = make_index(reference, IndexKind::Nv);
  auto expected = answer_batch_parallel(*oracle, queries);
  VerifyOutcome out;
  for (IndexKind kind : kinds) {
    auto idx = make_index(subject, kind);
    auto got = answer_batch_parallel(*idx, queries);
    std::size_t at = first_mismatch(expected, got);
    if (at == queries.size()) continue;
    out.ok = false;
    out.index = std::string(index_name(kind));
    out.query = at;
    out.expected = format_answer(queries[at], expected[at]);
    out.got = format_answer(queries[at], got[at]);
    return out;
  }
  return out;
}

TreeStats tree_stats(const WeightedTree& t, std::size_t samples, uint64_t seed) {
  TreeStats s;
  s.n = t.size();
  s.sigma = t.sigma();
  if (s.n == 0) return s;
  uint64_t depth_sum = 0;
  std::size_t unary = 0;
  for (NodeId x = 1; x <= s.n; ++x) {
    depth_sum += t.depth(x);
    s.max_depth = std::max(s.max_depth, t.depth(x));
    unary += t.children(x).size() == 1;
  }
  s.avg_depth = static_cast<double>(depth_sum) / s.n;
  s.unary_fraction = static_cast<double>(unary) / s.n;
  HpdExplicit hpd(t);
  for (NodeId x = 1; x <= s.n; ++x) s.chains += hpd.ref(x) == x;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> nd(1, static_cast<NodeId>(s.n));
  uint64_t total = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    NodeId x = nd(rng), y = nd(rng);
    total += path_chain_count(hpd, x, y);
  }
  s.mean_path_chains = samples ? static_cast<double>(total) / samples : 0;
  return s;
}

std::string format_stats(const TreeStats& s) {
  return "nodes " + std::to_string(s.n) + "\nsigma " + std::to_string(s.sigma) + "\navg_depth " +
         fmt(s.avg_depth, 3) + "\nmax_depth " + std::to_string(s.max_depth) + "\nunary_fraction " +
         fmt(s.unary_fraction, 4) + "\nchains " + std::to_string(s.chains) + "\nmean_chains_per_path " +
         fmt(s.mean_path_chains, 3) + "\n";
}

}  // namespace treepath
