#include "treepath/path_index.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "treepath/ext_index.hpp"
#include "treepath/hpd_index.hpp"
#include "treepath/naive.hpp"

namespace treepath {

bool PathIndex::valid(const PathQuery& q) const {
  std::size_t n = nodes();
  if (q.x < 1 || q.x > n || q.y < 1 || q.y > n) return false;
  if (q.kind != QueryKind::Median && (q.a < 1 || q.a > q.b || q.b > sigma())) return false;
  return true;
}

QueryResult PathIndex::answer(const PathQuery& q) const {
  QueryResult r;
  if (!valid(q)) {
    r.ok = false;
    return r;
  }
  switch (q.kind) {
    case QueryKind::Median:
      r.value = median(q.x, q.y);
      break;
    case QueryKind::Count:
      r.value = count(q.x, q.y, q.a, q.b);
      break;
    case QueryKind::Report:
      report(q.x, q.y, q.a, q.b, r.hits);
      std::sort(r.hits.begin(), r.hits.end());
      r.value = r.hits.size();
      break;
  }
  return r;
}

std::string_view index_name(IndexKind k) {
  switch (k) {
    case IndexKind::Nv: return "nv";
    case IndexKind::NvLca: return "nv-lca";
    case IndexKind::NvSuc: return "nv-suc";
    case IndexKind::ExtUn: return "ext-un";
    case IndexKind::ExtRrr: return "ext-rrr";
    case IndexKind::ExtPlain: return "ext-plain";
    case IndexKind::HpdUn: return "hpd-un";
    case IndexKind::HpdRrr: return "hpd-rrr";
    case IndexKind::HpdPlain: return "hpd-plain";
  }
  return "?";
}

IndexKind parse_index_kind(std::string_view name) {
  for (IndexKind k : kAllIndexKinds)
    if (index_name(k) == name) return k;
  throw std::invalid_argument("unknown index '" + std::string(name) + "'");
}

std::vector<IndexKind> parse_index_list(std::string_view list) {
  std::vector<IndexKind> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(start, end - start);
    if (item == "all") {
      out.insert(out.end(), kAllIndexKinds.begin(), kAllIndexKinds.end());
    } else if (!item.empty()) {
      out.push_back(parse_index_kind(item));
    }
    start = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty index list");
  return out;
}

std::unique_ptr<PathIndex> make_index(const WeightedTree& t, IndexKind kind) {
  switch (kind) {
    case IndexKind::Nv: return std::make_unique<NaiveExplicit>(t);
    case IndexKind::NvLca: return std::make_unique<NaiveLca>(t);
    case IndexKind::NvSuc: return std::make_unique<NaiveSuccinct>(t);
    case IndexKind::ExtUn: return std::make_unique<ExtSuccinct<PlainBitVector>>(t);
    case IndexKind::ExtRrr: return std::make_unique<ExtSuccinct<RrrBitVector>>(t);
    case IndexKind::ExtPlain: return std::make_unique<ExtExplicit>(t);
    case IndexKind::HpdUn: return std::make_unique<HpdSuccinct<PlainBitVector>>(t);
    case IndexKind::HpdRrr: return std::make_unique<HpdSuccinct<RrrBitVector>>(t);
    case IndexKind::HpdPlain: return std::make_unique<HpdExplicit>(t);
  }
  throw std::invalid_argument("unknown index kind");
}

}  // namespace treepath
