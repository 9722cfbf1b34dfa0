#include "geocross/pattern_detect.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <utility>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

using Clock = std::chrono::steady_clock;

class SearchContext {
 public:
  explicit SearchContext(const SearchBudget& budget) : budget_(budget), start_(Clock::now()) {
    if (budget.node_limit < 1) throw ArgumentError("search budget needs at least one node");
  }

  /// Counts a node; false once the budget is gone.
  bool tick() {
    if (exhausted_) return false;
    if (nodes_ >= budget_.node_limit) {
      exhausted_ = true;
      return false;
    }
    ++nodes_;
    if (budget_.deadline && (nodes_ & 255) == 0 && Clock::now() - start_ > *budget_.deadline) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  bool exhausted() const noexcept { return exhausted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  SearchBudget budget_;
  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

struct Relation {
  const IntersectionMatrix& m;
  IntersectionType type;

  const EdgeSet& row(std::size_t i) const { return type == IntersectionType::CROSS ? m.cross_row(i) : m.disjoint_row(i); }
};

// Descending degree in `rel`, lowest index first among equals.
std::vector<std::size_t> degree_order(const Relation& rel) {
  const std::size_t n = rel.m.edge_count();
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = rel.row(i).count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  return order;
}

// Greedy sequential coloring of `candidates` visited in `order`; returns the
// vertices sorted by ascending color together with their (1-based) colors.
void color_sort(const Relation& rel, const EdgeSet& candidates, const std::vector<std::size_t>& order,
                std::vector<std::size_t>& vertices, std::vector<std::size_t>& colors) {
  std::vector<EdgeSet> classes;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t v : order) {
    if (!candidates.test(v)) continue;
    const EdgeSet& nbrs = rel.row(v);
    std::size_t c = 0;
    while (c < classes.size() && classes[c].intersects(nbrs)) ++c;
    if (c == classes.size()) {
      classes.emplace_back(candidates.size());
      members.emplace_back();
    }
    classes[c].set(v);
    members[c].push_back(v);
  }
  vertices.clear();
  colors.clear();
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (std::size_t v : members[c]) {
      vertices.push_back(v);
      colors.push_back(c + 1);
    }
  }
}

// Extends `chosen` to a clique of `target` members of `rel` drawn from
// `candidates` (all of which are already adjacent to every chosen member).
bool extend_clique(const Relation& rel, const std::vector<std::size_t>& order, EdgeSet candidates,
                   std::vector<std::size_t>& chosen, std::size_t target, SearchContext& ctx) {
  if (!ctx.tick()) return false;
  if (chosen.size() >= target) return true;
  const std::size_t need = target - chosen.size();
  if (candidates.count() < need) return false;
  if (need == 1) {
    for (std::size_t v : order) {
      if (candidates.test(v)) {
        chosen.push_back(v);
        return true;
      }
    }
    return false;
  }
  std::vector<std::size_t> vertices, colors;
  color_sort(rel, candidates, order, vertices, colors);
  for (std::size_t idx = vertices.size(); idx-- > 0;) {
    if (colors[idx] < need) return false;
    const std::size_t v = vertices[idx];
    chosen.push_back(v);
    if (extend_clique(rel, order, candidates & rel.row(v), chosen, target, ctx)) return true;
    chosen.pop_back();
    if (ctx.exhausted()) return false;
    candidates.reset(v);
  }
  return false;
}

// Two cliques of `within` (sizes k and l) with every cross pair in `across`.
// `pool` holds the edges related by `across` to every member of `first`.
bool extend_family(const Relation& within, const Relation& across, const std::vector<std::size_t>& order,
                   EdgeSet candidates, const EdgeSet& pool, std::vector<std::size_t>& first,
                   std::vector<std::size_t>& second, std::size_t k, std::size_t l, SearchContext& ctx) {
  if (!ctx.tick()) return false;
  if (first.size() == k) return extend_clique(within, order, pool, second, l, ctx);
  const std::size_t need = k - first.size();
  std::vector<std::size_t> vertices, colors;
  color_sort(within, candidates, order, vertices, colors);
  for (std::size_t idx = vertices.size(); idx-- > 0;) {
    if (colors[idx] < need) return false;
    const std::size_t v = vertices[idx];
    EdgeSet next_pool = pool & across.row(v);
    if (next_pool.count() >= l) {
      first.push_back(v);
      if (extend_family(within, across, order, candidates & within.row(v), next_pool, first, second, k, l, ctx)) {
        return true;
      }
      first.pop_back();
      if (ctx.exhausted()) return false;
    }
    candidates.reset(v);
  }
  return false;
}

void check_anchor(const IntersectionMatrix& m, std::optional<std::size_t> anchor) {
  if (anchor && *anchor >= m.edge_count()) throw ArgumentError("anchor edge out of range");
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

DetectResult clique_search(const IntersectionMatrix& m, IntersectionType type, std::size_t k,
                           const SearchBudget& budget, std::optional<std::size_t> anchor, WitnessKind kind) {
  if (k == 0) throw ArgumentError("k must be at least 1");
  check_anchor(m, anchor);
  const Relation rel{m, type};
  SearchContext ctx(budget);
  const auto order = degree_order(rel);
  std::vector<std::size_t> chosen;
  EdgeSet candidates(m.edge_count(), true);
  if (anchor) {
    chosen.push_back(*anchor);
    candidates = rel.row(*anchor);
  }
  const bool found = extend_clique(rel, order, std::move(candidates), chosen, k, ctx);
  DetectResult result;
  result.nodes_explored = ctx.nodes();
  result.witness.kind = kind;
  if (found) {
    result.status = SearchStatus::FOUND;
    result.witness.e1 = sorted(chosen);
  } else {
    result.status = ctx.exhausted() ? SearchStatus::BUDGET : SearchStatus::NONE;
  }
  return result;
}

DetectResult family_search(const IntersectionMatrix& m, IntersectionType within_type, IntersectionType across_type,
                           std::size_t k, std::size_t l, const SearchBudget& budget,
                           std::optional<std::size_t> anchor, WitnessKind kind) {
  if (k == 0 || l == 0) throw ArgumentError("k and l must be at least 1");
  check_anchor(m, anchor);
  const Relation within{m, within_type};
  const Relation across{m, across_type};
  SearchContext ctx(budget);
  const auto order = degree_order(within);
  const std::size_t n = m.edge_count();

  DetectResult result;
  result.witness.kind = kind;
  auto finish = [&](bool found, std::vector<std::size_t> first, std::vector<std::size_t> second) {
    result.nodes_explored = ctx.nodes();
    if (found) {
      result.status = SearchStatus::FOUND;
      result.witness.e1 = sorted(std::move(first));
      result.witness.e2 = sorted(std::move(second));
    } else {
      result.status = ctx.exhausted() ? SearchStatus::BUDGET : SearchStatus::NONE;
    }
    return result;
  };

  // Members of the first clique need k-1 within-neighbours and l across-neighbours.
  auto viable = [&](std::size_t rows_k, std::size_t rows_l) {
    EdgeSet set(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (within.row(i).count() + 1 >= rows_k && across.row(i).count() >= rows_l) set.set(i);
    }
    return set;
  };

  if (!anchor) {
    std::vector<std::size_t> first, second;
    const bool found = extend_family(within, across, order, viable(k, l), EdgeSet(n, true), first, second, k, l, ctx);
    return finish(found, std::move(first), std::move(second));
  }

  const std::size_t r = *anchor;
  // Anchor in the first clique of a (k,l) witness, then in the first clique of
  // an (l,k) witness (i.e. the second clique of a (k,l) witness).
  for (const bool swapped : {false, true}) {
    if (swapped && k == l) break;
    const std::size_t kk = swapped ? l : k;
    const std::size_t ll = swapped ? k : l;
    const EdgeSet& pool = across.row(r);
    if (pool.count() < ll) continue;
    std::vector<std::size_t> first{r}, second;
    EdgeSet candidates = viable(kk, ll) & within.row(r);
    if (extend_family(within, across, order, std::move(candidates), pool, first, second, kk, ll, ctx)) {
      return swapped ? finish(true, std::move(second), std::move(first)) : finish(true, std::move(first), std::move(second));
    }
    if (ctx.exhausted()) break;
  }
  return finish(false, {}, {});
}

std::size_t parse_count(std::string_view text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ArgumentError("expected a positive integer, got '" + std::string(text) + "'");
  }
  if (value == 0) throw ArgumentError("pattern parameters must be at least 1");
  return value;
}

bool all_pairs(const IntersectionMatrix& m, const std::vector<std::size_t>& a, IntersectionType type) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (m.at(a[i], a[j]) != type) return false;
    }
  }
  return true;
}

bool all_across(const IntersectionMatrix& m, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                IntersectionType type) {
  for (std::size_t x : a) {
    for (std::size_t y : b) {
      if (m.at(x, y) != type) return false;
    }
  }
  return true;
}

// Splits a matching triple of the given pattern into (e1, e2) as documented
// for find_matching_with_pattern.
FamilyWitness circle3_witness(const IntersectionMatrix& m, const std::vector<std::size_t>& triple,
                              CircleGraphPattern3 pattern) {
  FamilyWitness w;
  w.kind = WitnessKind::CIRCLE3;
  w.pattern = pattern;
  if (pattern == CircleGraphPattern3::TRIPLE_CROSSING || pattern == CircleGraphPattern3::TRIPLE_DISJOINT) {
    w.e1 = sorted(triple);
    return w;
  }
  const auto g = matching_intersection_graph(m, triple);
  const auto deg = g.degrees();
  for (std::size_t i = 0; i < 3; ++i) {
    const bool special = pattern == CircleGraphPattern3::GRID_21 ? deg[i] == 2 : deg[i] == 0;
    (special ? w.e2 : w.e1).push_back(triple[i]);
  }
  w.e1 = sorted(w.e1);
  return w;
}

std::uint64_t capped_binomial(std::size_t n, std::size_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 value = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(value);
}

// Calls f(combination) for every k-subset of {0..n-1} in lexicographic order
// until f returns true.
template <typename F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::FOUND: return "FOUND";
    case SearchStatus::NONE: return "NONE";
    case SearchStatus::BUDGET: return "BUDGET";
  }
  return "?";
}

const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::PAIRWISE_CROSSING: return "PAIRWISE_CROSSING";
    case WitnessKind::DISJOINT_MATCHING: return "DISJOINT_MATCHING";
    case WitnessKind::CROSSING_FAMILY: return "CROSSING_FAMILY";
    case WitnessKind::NATURAL_GRID: return "NATURAL_GRID";
    case WitnessKind::CIRCLE3: return "CIRCLE3";
  }
  return "?";
}

ForbiddenQuery ForbiddenQuery::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ArgumentError("pattern needs the form NAME:PARAMS");
  const auto name = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  ForbiddenQuery q;
  auto two = [&] {
    const auto comma = params.find(',');
    if (comma == std::string_view::npos) throw ArgumentError("pattern needs two parameters K,L");
    q.k = parse_count(params.substr(0, comma));
    q.l = parse_count(params.substr(comma + 1));
  };
  if (name == "crossing-family") {
    q.kind = WitnessKind::CROSSING_FAMILY;
    two();
  } else if (name == "grid") {
    q.kind = WitnessKind::NATURAL_GRID;
    two();
  } else if (name == "pairwise-crossing") {
    q.kind = WitnessKind::PAIRWISE_CROSSING;
    q.k = parse_count(params);
  } else if (name == "disjoint-matching") {
    q.kind = WitnessKind::DISJOINT_MATCHING;
    q.k = parse_count(params);
  } else if (name == "circle3") {
    q.kind = WitnessKind::CIRCLE3;
    const auto p = parse_pattern_label(params);
    if (!p) throw ArgumentError("unknown circle3 pattern '" + std::string(params) + "'");
    q.pattern = *p;
  } else {
    throw ArgumentError("unknown pattern '" + std::string(name) + "'");
  }
  return q;
}

std::string ForbiddenQuery::to_string() const {
  switch (kind) {
    case WitnessKind::CROSSING_FAMILY: return "crossing-family:" + std::to_string(k) + "," + std::to_string(l);
    case WitnessKind::NATURAL_GRID: return "grid:" + std::to_string(k) + "," + std::to_string(l);
    case WitnessKind::PAIRWISE_CROSSING: return "pairwise-crossing:" + std::to_string(k);
    case WitnessKind::DISJOINT_MATCHING: return "disjoint-matching:" + std::to_string(k);
    case WitnessKind::CIRCLE3: return std::string("circle3:") + label(pattern);
  }
  return "?";
}

DetectResult find_pairwise_crossing(const IntersectionMatrix& m, std::size_t k, const SearchBudget& budget,
                                    std::optional<std::size_t> anchor) {
  return clique_search(m, IntersectionType::CROSS, k, budget, anchor, WitnessKind::PAIRWISE_CROSSING);
}

DetectResult find_disjoint_matching(const IntersectionMatrix& m, std::size_t k, const SearchBudget& budget,
                                    std::optional<std::size_t> anchor) {
  return clique_search(m, IntersectionType::DISJOINT, k, budget, anchor, WitnessKind::DISJOINT_MATCHING);
}

DetectResult find_crossing_family(const IntersectionMatrix& m, std::size_t k, std::size_t l,
                                  const SearchBudget& budget, std::optional<std::size_t> anchor) {
  return family_search(m, IntersectionType::CROSS, IntersectionType::DISJOINT, k, l, budget, anchor,
                       WitnessKind::CROSSING_FAMILY);
}

DetectResult find_natural_grid(const IntersectionMatrix& m, std::size_t k, std::size_t l, const SearchBudget& budget,
                               std::optional<std::size_t> anchor) {
  return family_search(m, IntersectionType::DISJOINT, IntersectionType::CROSS, k, l, budget, anchor,
                       WitnessKind::NATURAL_GRID);
}

DetectResult find_matching_with_pattern(const IntersectionMatrix& m, CircleGraphPattern3 pattern,
                                        const SearchBudget& budget, std::optional<std::size_t> anchor) {
  DetectResult r;
  switch (pattern) {
    case CircleGraphPattern3::TRIPLE_CROSSING: r = find_pairwise_crossing(m, 3, budget, anchor); break;
    case CircleGraphPattern3::TRIPLE_DISJOINT: r = find_disjoint_matching(m, 3, budget, anchor); break;
    case CircleGraphPattern3::GRID_21: r = find_natural_grid(m, 2, 1, budget, anchor); break;
    case CircleGraphPattern3::FAMILY_21: r = find_crossing_family(m, 2, 1, budget, anchor); break;
  }
  r.witness.kind = WitnessKind::CIRCLE3;
  r.witness.pattern = pattern;
  return r;
}

DetectResult detect(const IntersectionMatrix& m, const ForbiddenQuery& query, const SearchBudget& budget,
                    std::optional<std::size_t> anchor) {
  switch (query.kind) {
    case WitnessKind::PAIRWISE_CROSSING: return find_pairwise_crossing(m, query.k, budget, anchor);
    case WitnessKind::DISJOINT_MATCHING: return find_disjoint_matching(m, query.k, budget, anchor);
    case WitnessKind::CROSSING_FAMILY: return find_crossing_family(m, query.k, query.l, budget, anchor);
    case WitnessKind::NATURAL_GRID: return find_natural_grid(m, query.k, query.l, budget, anchor);
    case WitnessKind::CIRCLE3: return find_matching_with_pattern(m, query.pattern, budget, anchor);
  }
  throw InternalError("unhandled query kind");
}

bool verify_witness(const IntersectionMatrix& m, const FamilyWitness& w) {
  std::vector<std::size_t> all = w.e1;
  all.insert(all.end(), w.e2.begin(), w.e2.end());
  for (std::size_t e : all) {
    if (e >= m.edge_count()) return false;
  }
  auto unique = sorted(all);
  if (std::adjacent_find(unique.begin(), unique.end()) != unique.end()) return false;

  switch (w.kind) {
    case WitnessKind::PAIRWISE_CROSSING:
      return !w.e1.empty() && w.e2.empty() && all_pairs(m, w.e1, IntersectionType::CROSS);
    case WitnessKind::DISJOINT_MATCHING:
      return !w.e1.empty() && w.e2.empty() && all_pairs(m, w.e1, IntersectionType::DISJOINT);
    case WitnessKind::CROSSING_FAMILY:
      return !w.e1.empty() && !w.e2.empty() && all_pairs(m, w.e1, IntersectionType::CROSS) &&
             all_pairs(m, w.e2, IntersectionType::CROSS) && all_across(m, w.e1, w.e2, IntersectionType::DISJOINT);
    case WitnessKind::NATURAL_GRID:
      return !w.e1.empty() && !w.e2.empty() && all_pairs(m, w.e1, IntersectionType::DISJOINT) &&
             all_pairs(m, w.e2, IntersectionType::DISJOINT) && all_across(m, w.e1, w.e2, IntersectionType::CROSS);
    case WitnessKind::CIRCLE3: {
      if (!w.pattern || all.size() != 3) return false;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          if (m.at(all[i], all[j]) == IntersectionType::SHARE_ENDPOINT) return false;
        }
      }
      return classify_pattern3(matching_intersection_graph(m, all)) == *w.pattern;
    }
  }
  return false;
}

bool witness_matches_query(const IntersectionMatrix& m, const FamilyWitness& w, const ForbiddenQuery& query) {
  if (w.kind != query.kind || !verify_witness(m, w)) return false;
  switch (query.kind) {
    case WitnessKind::PAIRWISE_CROSSING:
    case WitnessKind::DISJOINT_MATCHING: return w.e1.size() == query.k;
    case WitnessKind::CROSSING_FAMILY:
    case WitnessKind::NATURAL_GRID: return w.e1.size() == query.k && w.e2.size() == query.l;
    case WitnessKind::CIRCLE3: return w.pattern == query.pattern;
  }
  return false;
}

DetectResult exhaustive_oracle(const IntersectionMatrix& m, const ForbiddenQuery& query) {
  if (query.k == 0 || query.l == 0) throw ArgumentError("k and l must be at least 1");
  const std::size_t n = m.edge_count();
  std::size_t subset = query.k;
  if (query.kind == WitnessKind::CROSSING_FAMILY || query.kind == WitnessKind::NATURAL_GRID) subset = query.k + query.l;
  if (query.kind == WitnessKind::CIRCLE3) subset = 3;
  if (capped_binomial(n, subset, kOracleSubsetCap) > kOracleSubsetCap) {
    throw SizeError("exhaustive enumeration exceeds the subset cap");
  }

  DetectResult result;
  result.witness.kind = query.kind;
  if (query.kind == WitnessKind::CIRCLE3) result.witness.pattern = query.pattern;
  std::uint64_t visited = 0;
  std::vector<std::size_t> chosen;

  const bool found = for_each_combination(n, subset, [&](const std::vector<std::size_t>& idx) {
    ++visited;
    switch (query.kind) {
      case WitnessKind::PAIRWISE_CROSSING:
      case WitnessKind::DISJOINT_MATCHING: {
        const auto type = query.kind == WitnessKind::PAIRWISE_CROSSING ? IntersectionType::CROSS
                                                                       : IntersectionType::DISJOINT;
        if (!all_pairs(m, idx, type)) return false;
        result.witness.e1 = idx;
        return true;
      }
      case WitnessKind::CROSSING_FAMILY:
      case WitnessKind::NATURAL_GRID: {
        const bool family = query.kind == WitnessKind::CROSSING_FAMILY;
        const auto within = family ? IntersectionType::CROSS : IntersectionType::DISJOINT;
        const auto across = family ? IntersectionType::DISJOINT : IntersectionType::CROSS;
        return for_each_combination(subset, query.k, [&](const std::vector<std::size_t>& pos) {
          std::vector<std::size_t> a, b;
          std::size_t p = 0;
          for (std::size_t i = 0; i < subset; ++i) {
            if (p < pos.size() && pos[p] == i) {
              a.push_back(idx[i]);
              ++p;
            } else {
              b.push_back(idx[i]);
            }
          }
          if (!all_pairs(m, a, within) || !all_pairs(m, b, within) || !all_across(m, a, b, across)) return false;
          result.witness.e1 = a;
          result.witness.e2 = b;
          return true;
        });
      }
      case WitnessKind::CIRCLE3: {
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = i + 1; j < 3; ++j) {
            if (m.at(idx[i], idx[j]) == IntersectionType::SHARE_ENDPOINT) return false;
          }
        }
        if (classify_pattern3(matching_intersection_graph(m, idx)) != query.pattern) return false;
        result.witness = circle3_witness(m, idx, query.pattern);
        return true;
      }
    }
    return false;
  });

  result.nodes_explored = visited;
  result.status = found ? SearchStatus::FOUND : SearchStatus::NONE;
  return result;
}

}  // namespace geocross
