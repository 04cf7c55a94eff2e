// treepath: generate trees and workloads, answer, verify and benchmark path queries.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "treepath/batch.hpp"
#include "treepath/bench.hpp"
#include "treepath/generate.hpp"

using namespace treepath;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kMismatch = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WeightedTree load_tree(const std::string& path) {
  try {
    return parse_ptw(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  }
}

std::vector<IndexKind> index_list(const std::string& s) {
  try {
    return parse_index_list(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path median, counting and reporting on weighted trees"};
  app.require_subcommand(1);

  std::size_t nodes = 0;
  Weight sigma = 0;
  std::string shape = "uniform_attach", out;
  uint64_t seed = 1;
  auto* gen_tree_cmd = app.add_subcommand("gen-tree", "Write a random weighted tree");
  gen_tree_cmd->add_option("--nodes", nodes, "Number of nodes")->required()->check(CLI::PositiveNumber);
  gen_tree_cmd->add_option("--sigma", sigma, "Alphabet size")->required()->check(CLI::PositiveNumber);
  gen_tree_cmd->add_option("--shape", shape, "uniform_attach or long_paths")
      ->check(CLI::IsMember({"uniform_attach", "long_paths"}));
  gen_tree_cmd->add_option("--seed", seed, "Random seed");
  gen_tree_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  std::string tree_path, kind = "median", queries_path, index = "nv", indexes = "all", csv;
  uint32_t k_factor = 1;
  std::size_t count = 10000;
  auto* gen_q_cmd = app.add_subcommand("gen-queries", "Write a random query workload for a tree");
  gen_q_cmd->add_option("--tree", tree_path, "Tree file")->required();
  gen_q_cmd->add_option("--kind", kind, "median, count or report")->check(CLI::IsMember({"median", "count", "report"}));
  gen_q_cmd->add_option("--k-factor", k_factor, "Range narrowing factor K")->check(CLI::PositiveNumber);
  gen_q_cmd->add_option("--count", count, "Number of queries");
  gen_q_cmd->add_option("--seed", seed, "Random seed");
  gen_q_cmd->add_option("-o,--output", out, "Output file (default stdout)");

  auto* query_cmd = app.add_subcommand("query", "Answer a workload with one index");
  query_cmd->add_option("--tree", tree_path, "Tree file")->required();
  query_cmd->add_option("--queries", queries_path, "Query file")->required();
  query_cmd->add_option("--index", index, "Index name");

  auto* verify_cmd = app.add_subcommand("verify", "Compare indexes against the naive oracle");
  verify_cmd->add_option("--tree", tree_path, "Tree file")->required();
  verify_cmd->add_option("--queries", queries_path, "Query file")->required();
  verify_cmd->add_option("--indexes", indexes, "Comma-separated index names or 'all'");

  unsigned repeat = 3;
  bool by_chains = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time indexes on a workload and write CSV");
  bench_cmd->add_option("--tree", tree_path, "Tree file")->required();
  bench_cmd->add_option("--queries", queries_path, "Query file")->required();
  bench_cmd->add_option("--indexes", indexes, "Comma-separated index names or 'all'");
  bench_cmd->add_option("--repeat", repeat, "Timed passes after the warm-up")->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--by-chains", by_chains, "Add median rows bucketed by heavy-chain count");
  bench_cmd->add_option("--csv", csv, "CSV output file (default stdout)");

  auto* stats_cmd = app.add_subcommand("stats", "Print tree statistics");
  stats_cmd->add_option("--tree", tree_path, "Tree file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_tree_cmd) {
      emit(out, serialize_ptw(gen_tree(nodes, sigma, parse_shape(shape), seed)));
    } else if (*gen_q_cmd) {
      auto t = load_tree(tree_path);
      QueryKind qk = parse_kind(kind);
      auto qs = gen_queries(t, qk, k_factor, count, seed);
      emit(out, workload_header(qk, k_factor, count, seed) + serialize_queries(qs));
    } else if (*query_cmd) {
      IndexKind ik;
      try {
        ik = parse_index_kind(index);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      auto t = load_tree(tree_path);
      auto qs = parse_queries(read_file(queries_path));
      auto idx = make_index(t, ik);
      std::string text;
      for (const auto& q : qs) text += format_answer(q, idx->answer(q)) + "\n";
      std::cout << text;
    } else if (*verify_cmd) {
      auto kinds = index_list(indexes);
      auto t = load_tree(tree_path);
      auto qs = parse_queries(read_file(queries_path));
      auto res = verify_indexes(t, t, qs, kinds);
      if (!res.ok) {
        std::cout << "MISMATCH " << res.index << " at query " << res.query + 1 << ": "
                  << serialize_queries(std::span(qs).subspan(res.query, 1)) << "  expected " << res.expected
                  << "\n  got      " << res.got << "\n";
        return kMismatch;
      }
      std::cout << "OK " << qs.size() << " queries, " << kinds.size() << " indexes\n";
    } else if (*bench_cmd) {
      auto kinds = index_list(indexes);
      auto t = load_tree(tree_path);
      std::string text = read_file(queries_path);
      auto qs = parse_queries(text);
      auto rows = run_bench(t, qs, workload_k_factor(text), kinds, BenchOptions{repeat, by_chains});
      std::string body = bench_csv_header();
      for (const auto& r : rows) body += bench_csv_row(r);
      emit(csv, body);
    } else if (*stats_cmd) {
      std::cout << format_stats(tree_stats(load_tree(tree_path)));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}
