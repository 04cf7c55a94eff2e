#include "treepath/tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace treepath {

WeightedTree::WeightedTree(std::vector<NodeId> parent, std::vector<Weight> weights, Weight sigma,
                           std::vector<int64_t> weight_decode)
    : n_(parent.empty() ? 0 : parent.size() - 1),
      sigma_(sigma),
      parent_(std::move(parent)),
      weights_(std::move(weights)),
      decode_(std::move(weight_decode)) {
  if (n_ == 0) throw std::invalid_argument("WeightedTree: empty tree");
  if (weights_.size() != n_ + 1) throw std::invalid_argument("WeightedTree: weight count mismatch");
  if (sigma_ < 1) throw std::invalid_argument("WeightedTree: sigma must be >= 1");
  if (parent_[1] != kNoNode) throw std::invalid_argument("WeightedTree: node 1 must be the root");
  depth_.assign(n_ + 1, 0);
  child_start_.assign(n_ + 2, 0);
  // preorder check: the parent of x must be on the current root-to-(x-1) path
  std::vector<NodeId> stack{1};
  for (NodeId x = 2; x <= n_; ++x) {
    NodeId p = parent_[x];
    if (p == kNoNode || p >= x) throw std::invalid_argument("WeightedTree: parent must precede child");
    while (!stack.empty() && stack.back() != p) stack.pop_back();
    if (stack.empty()) throw std::invalid_argument("WeightedTree: node ids are not a preorder");
    stack.push_back(x);
    depth_[x] = depth_[p] + 1;
    ++child_start_[p + 1];
  }
  for (NodeId x = 1; x <= n_ + 1; ++x) child_start_[x] += child_start_[x - 1];
  child_list_.resize(n_ > 0 ? n_ - 1 : 0);
  std::vector<uint32_t> fill(child_start_.begin(), child_start_.end() - 1);
  for (NodeId x = 2; x <= n_; ++x) child_list_[fill[parent_[x]]++] = x;
  for (NodeId x = 1; x <= n_; ++x)
    if (weights_[x] < 1 || weights_[x] > sigma_) throw std::invalid_argument("WeightedTree: weight outside [1..sigma]");
  if (decode_.empty()) {
    decode_.resize(sigma_ + 1);
    for (Weight w = 0; w <= sigma_; ++w) decode_[w] = w;
  }
}

std::string WeightedTree::bp_string() const {
  std::string s;
  s.reserve(2 * n_);
  std::vector<NodeId> stack;
  for (NodeId x = 1; x <= n_; ++x) {
    while (!stack.empty() && stack.back() != parent_[x]) {
      stack.pop_back();
      s.push_back(')');
    }
    stack.push_back(x);
    s.push_back('(');
  }
  s.append(stack.size(), ')');
  return s;
}

WeightedTree tree_from_bp(std::string_view bp, std::vector<Weight> weights, Weight sigma) {
  std::vector<NodeId> parent{kNoNode};
  std::vector<NodeId> stack;
  for (char c : bp) {
    if (c == '(') {
      if (parent.size() > 1 && stack.empty()) throw std::invalid_argument("tree_from_bp: more than one root");
      NodeId x = static_cast<NodeId>(parent.size());
      parent.push_back(stack.empty() ? kNoNode : stack.back());
      stack.push_back(x);
    } else if (c == ')') {
      if (stack.empty()) throw std::invalid_argument("tree_from_bp: unbalanced");
      stack.pop_back();
    } else {
      throw std::invalid_argument("tree_from_bp: bad character");
    }
  }
  if (!stack.empty()) throw std::invalid_argument("tree_from_bp: unbalanced");
  if (weights.size() == parent.size() - 1) weights.insert(weights.begin(), 0);
  return WeightedTree(std::move(parent), std::move(weights), sigma);
}

namespace {

struct Line {
  std::string_view text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t start = 0, no = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines.push_back({l, no++});
    if (end == text.size()) break;
    start = end + 1;
  }
  // drop a single trailing empty line produced by the final newline
  if (!lines.empty() && lines.back().text.empty()) lines.pop_back();
  return lines;
}

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view l) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < l.size()) {
    while (i < l.size() && (l[i] == ' ' || l[i] == '\t')) ++i;
    std::size_t s = i;
    while (i < l.size() && l[i] != ' ' && l[i] != '\t') ++i;
    if (i > s) out.push_back({l.substr(s, i - s), s + 1});
  }
  return out;
}

uint64_t parse_uint(const Token& t, std::size_t line, const char* what) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    throw ParseError(line, t.column, std::string("expected non-negative integer for ") + what);
  return v;
}

}  // namespace

WeightedTree parse_ptw(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.size() < 3) throw ParseError(lines.size() + 1, 1, "expected 3 lines (header, BP, weights)");
  if (lines.size() > 3) throw ParseError(4, 1, "unexpected trailing content");
  auto head = tokenize(lines[0].text);
  if (head.size() != 2) throw ParseError(1, head.size() < 2 ? lines[0].text.size() + 1 : head[2].column, "expected '<n> <sigma>'");
  uint64_t n = parse_uint(head[0], 1, "n");
  uint64_t sigma = parse_uint(head[1], 1, "sigma");
  if (n < 1) throw ParseError(1, head[0].column, "n must be >= 1");
  if (sigma < 1 || sigma > UINT32_MAX) throw ParseError(1, head[1].column, "sigma out of range");

  std::string_view bp = lines[1].text;
  if (bp.size() != 2 * n)
    throw ParseError(2, std::min(bp.size(), 2 * n) + 1,
                     "BP string has " + std::to_string(bp.size()) + " characters, expected " + std::to_string(2 * n));
  std::vector<NodeId> parent{kNoNode};
  parent.reserve(n + 1);
  std::vector<NodeId> stack;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    char c = bp[i];
    if (c == '(') {
      if (parent.size() > 1 && stack.empty()) throw ParseError(2, i + 1, "BP describes more than one tree");
      parent.push_back(stack.empty() ? kNoNode : stack.back());
      stack.push_back(static_cast<NodeId>(parent.size() - 1));
    } else if (c == ')') {
      if (stack.empty()) throw ParseError(2, i + 1, "unbalanced ')'");
      stack.pop_back();
    } else {
      throw ParseError(2, i + 1, "unexpected character in BP string");
    }
  }
  if (!stack.empty()) throw ParseError(2, bp.size(), "unbalanced BP string");

  auto wt = tokenize(lines[2].text);
  if (wt.size() != n)
    throw ParseError(3, wt.size() > n ? wt[n].column : lines[2].text.size() + 1,
                     "expected " + std::to_string(n) + " weights, found " + std::to_string(wt.size()));
  std::vector<Weight> weights(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    uint64_t w = parse_uint(wt[i], 3, "weight");
    if (w < 1 || w > sigma) throw ParseError(3, wt[i].column, "weight outside [1..sigma]");
    weights[i + 1] = static_cast<Weight>(w);
  }
  return WeightedTree(std::move(parent), std::move(weights), static_cast<Weight>(sigma));
}

std::string serialize_ptw(const WeightedTree& t) {
  std::string out = std::to_string(t.size()) + " " + std::to_string(t.sigma()) + "\n";
  out += t.bp_string();
  out += '\n';
  for (NodeId x = 1; x <= t.size(); ++x) {
    if (x > 1) out += ' ';
    out += std::to_string(t.weight(x));
  }
  out += '\n';
  return out;
}

Normalized normalize_weights(std::span<const int64_t> raw) {
  std::vector<int64_t> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Normalized out;
  out.sigma = static_cast<Weight>(std::max<std::size_t>(sorted.size(), 1));
  out.decode.assign(1, 0);
  out.decode.insert(out.decode.end(), sorted.begin(), sorted.end());
  out.weights.reserve(raw.size());
  for (int64_t v : raw)
    out.weights.push_back(static_cast<Weight>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin() + 1));
  return out;
}

std::vector<PathQuery> parse_queries(std::string_view text) {
  std::vector<PathQuery> qs;
  for (const auto& line : split_lines(text)) {
    auto tok = tokenize(line.text);
    if (tok.empty() || tok[0].text.front() == '#') continue;
    PathQuery q;
    std::size_t want;
    if (tok[0].text == "M") {
      q.kind = QueryKind::Median;
      want = 3;
    } else if (tok[0].text == "C") {
      q.kind = QueryKind::Count;
      want = 5;
    } else if (tok[0].text == "R") {
      q.kind = QueryKind::Report;
      want = 5;
    } else {
      throw ParseError(line.number, tok[0].column, "unknown query kind (expected M, C or R)");
    }
    if (tok.size() != want)
      throw ParseError(line.number, tok.size() > want ? tok[want].column : line.text.size() + 1,
                       "expected " + std::to_string(want - 1) + " arguments");
    auto get = [&](std::size_t i) -> uint32_t {
      uint64_t v = parse_uint(tok[i], line.number, "query argument");
      if (v > UINT32_MAX) throw ParseError(line.number, tok[i].column, "query argument too large");
      return static_cast<uint32_t>(v);
    };
    q.x = get(1);
    q.y = get(2);
    if (want == 5) {
      q.a = get(3);
      q.b = get(4);
    }
    qs.push_back(q);
  }
  return qs;
}

std::string serialize_queries(std::span<const PathQuery> qs) {
  std::string out;
  for (const auto& q : qs) {
    switch (q.kind) {
      case QueryKind::Median:
        out += "M " + std::to_string(q.x) + " " + std::to_string(q.y);
        break;
      case QueryKind::Count:
      case QueryKind::Report:
        out += (q.kind == QueryKind::Count ? "C " : "R ") + std::to_string(q.x) + " " + std::to_string(q.y) + " " +
               std::to_string(q.a) + " " + std::to_string(q.b);
        break;
    }
    out += '\n';
  }
  return out;
}

std::string format_answer(const PathQuery& q, const QueryResult& r) {
  if (!r.ok) return "!";
  if (q.kind != QueryKind::Report) return std::to_string(r.value);
  std::string s = std::to_string(r.hits.size());
  for (std::size_t i = 0; i < r.hits.size(); ++i) {
    s += i == 0 ? ' ' : ';';
    s += std::to_string(r.hits[i].node);
    s += ':';
    s += std::to_string(r.hits[i].weight);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace treepath
