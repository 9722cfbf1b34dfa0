#include "geocross/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

int side_sign(const Point& anchor, const Vector& d, const Point& x) { return sign(cross(d, x - anchor)); }

struct HalfCounts {
  std::size_t left = 0;
  std::size_t right = 0;
};

HalfCounts point_sides(std::span<const Point> points, const Point& anchor, const Vector& d) {
  HalfCounts c;
  for (const auto& p : points) {
    const int s = side_sign(anchor, d, p);
    if (s > 0) ++c.left;
    if (s < 0) ++c.right;
  }
  return c;
}

HalfCounts edge_sides(std::span<const Point> points, std::span<const Edge> edges, const Point& anchor,
                      const Vector& d) {
  HalfCounts c;
  for (const auto& e : edges) {
    const int a = side_sign(anchor, d, points[e.u]);
    const int b = side_sign(anchor, d, points[e.v]);
    if (a > 0 && b > 0) ++c.left;
    if (a < 0 && b < 0) ++c.right;
  }
  return c;
}

HalvingState make_state(std::span<const Point> points, std::span<const Edge> edges, std::size_t pivot,
                        std::size_t partner, const Vector& d, std::size_t step) {
  const auto counts = edge_sides(points, edges, points[pivot], d);
  return HalvingState{DirectedLine::through(points[pivot], d), pivot, partner, counts.left, counts.right, step};
}

void check_even(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw ArgumentError("halving lines need an even number of at least 2 points");
}

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::pair<std::size_t, std::size_t> find_halving_edge(std::span<const Point> points) {
  const std::size_t n = points.size();
  check_even(n);
  const std::size_t half = (n - 2) / 2;
  for (std::size_t v = 1; v < n; ++v) {
    const auto c = point_sides(points, points[0], points[v] - points[0]);
    if (c.left == half && c.right == half) return {0, v};
  }
  throw InternalError("no halving partner for vertex 0");
}

std::pair<std::size_t, std::size_t> find_halving_edge(const GeometricGraph& g) { return find_halving_edge(g.points()); }

RotationResult rotate_to_balance(std::span<const Point> points, std::span<const Edge> edges) {
  const std::size_t n = points.size();
  auto [u, v] = find_halving_edge(points);
  Vector d = points[v] - points[u];
  if (const auto c = edge_sides(points, edges, points[u], d); c.left > c.right) {
    std::swap(u, v);
    d = -d;
  }

  RotationResult result;
  const Vector start = d;
  std::size_t pivot = u, partner = v;
  int heavy = -1;  // open side that gains a point when the line next leaves a vertex
  result.trace.push_back(make_state(points, edges, pivot, partner, d, 0));

  const std::size_t limit = n * (n - 1);
  while (true) {
    // Next event: the point whose direction from the pivot (or its opposite)
    // is reached first by counterclockwise rotation of d.
    std::optional<std::size_t> next;
    Vector next_dir{};
    int next_side = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (x == pivot || x == partner) continue;
      const Vector r = points[x] - points[pivot];
      const int s = sign(cross(d, r));
      const Vector candidate = s > 0 ? r : -r;
      if (!next || cross(candidate, next_dir) > 0) {
        next = x;
        next_dir = candidate;
        next_side = s;
      }
    }
    if (!next) {
      // Two points: the only event is the partner again, at the opposite direction.
      next = partner;
      next_dir = -d;
      next_side = heavy;
    }
    d = next_dir;
    ++result.events;
    if (next_side == heavy) {
      partner = *next;
      heavy = -heavy;
      result.trace.push_back(make_state(points, edges, pivot, partner, d, result.events));
    } else {
      partner = pivot;
      pivot = *next;
    }
    if (cross(start, d) == 0 && dot(start, d) < 0) break;
    if (result.events > limit) throw InternalError("rotation did not complete a half-turn");
  }

  const std::size_t bound = 2 * n;
  const auto it = std::find_if(result.trace.begin(), result.trace.end(),
                               [&](const HalvingState& s) { return abs_diff(s.e_left, s.e_right) <= bound; });
  if (it == result.trace.end()) throw InternalError("rotation never balanced the edge counts");
  result.balanced_index = static_cast<std::size_t>(it - result.trace.begin());
  return result;
}

RotationResult rotate_to_balance(const GeometricGraph& g) { return rotate_to_balance(g.points(), g.edges()); }

std::array<std::vector<std::size_t>, 2> split_by_halving(std::span<const Point> points, const HalvingState& state) {
  std::array<std::vector<std::size_t>, 2> classes;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool first = i == state.pivot || (i != state.partner && side_of_line(state.line, points[i]) == Side::LEFT);
    classes[first ? 0 : 1].push_back(i);
  }
  return classes;
}

SideCounts count_sides(const DirectedLine& line, std::span<const Point> points) {
  SideCounts c;
  for (const auto& p : points) {
    switch (side_of_line(line, p)) {
      case Side::LEFT: ++c.left; break;
      case Side::ON: ++c.on; break;
      case Side::RIGHT: ++c.right; break;
    }
  }
  return c;
}

bool is_bisecting(const HamSandwichCut& cut, std::size_t size1, std::size_t size2) {
  const std::array<std::size_t, 2> sizes{size1, size2};
  for (std::size_t i = 0; i < 2; ++i) {
    if (cut.counts[i].left > sizes[i] / 2 || cut.counts[i].right > sizes[i] / 2) return false;
    if (cut.counts[i].left + cut.counts[i].on + cut.counts[i].right != sizes[i]) return false;
  }
  return true;
}

HamSandwichCut ham_sandwich(std::span<const Point> v1, std::span<const Point> v2) {
  // Second class first: fixes the tie-break order among equally balanced cuts.
  std::vector<Point> all(v2.begin(), v2.end());
  all.insert(all.end(), v1.begin(), v1.end());

  if (all.size() < 2) {
    const Point anchor = all.empty() ? Point{0, 0} : all.front();
    HamSandwichCut cut{DirectedLine::through(anchor, Vector{1, 0}), {}};
    cut.counts = {count_sides(cut.line, v1), count_sides(cut.line, v2)};
    return cut;
  }

  std::optional<HamSandwichCut> best;
  std::size_t best_imbalance = 0;
  for (std::size_t i = 0; i < all.size() && !(best && best_imbalance == 0); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      HamSandwichCut cut{DirectedLine::through(all[i], all[j]), {}};
      cut.counts = {count_sides(cut.line, v1), count_sides(cut.line, v2)};
      if (!is_bisecting(cut, v1.size(), v2.size())) continue;
      const std::size_t imbalance =
          abs_diff(cut.counts[0].left, cut.counts[0].right) + abs_diff(cut.counts[1].left, cut.counts[1].right);
      if (!best || imbalance < best_imbalance) {
        best = cut;
        best_imbalance = imbalance;
        if (imbalance == 0) break;
      }
    }
  }
  if (!best) throw InternalError("no bisecting line among the candidates");
  return *best;
}

DirectedLine translate_balance(const DirectedLine& halving, const DirectedLine& cut,
                               std::span<const Edge> crossing_edges, std::span<const Point> points) {
  if (crossing_edges.empty() || cross(halving.direction, cut.direction) == 0) return cut;
  const Vector d = cut.direction;
  auto offset = [&](const Point& p) { return cross(d, Vector{p.x, p.y}); };

  // Candidate lines sit strictly between consecutive distinct offsets, or
  // beyond the extremes. Each is represented by an anchor and its offset
  // doubled (so that midpoints stay integral).
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return offset(points[a]) < offset(points[b]);
  });

  struct Candidate {
    RationalPoint anchor;
    Wide doubled;
  };
  std::vector<Candidate> candidates;
  auto exact = [](const Point& p) { return RationalPoint{Rational{p.x, 1}, Rational{p.y, 1}}; };
  const Vector perp{-d.y, d.x};  // offset(p + perp) = offset(p) + |d|^2
  if (!points.empty()) {
    const Point& low = points[order.front()];
    const Point& high = points[order.back()];
    candidates.push_back({exact(Point{low.x - perp.x, low.y - perp.y}), 2 * offset(low) - 2 * dot(d, d)});
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const Point& a = points[order[k]];
      const Point& b = points[order[k + 1]];
      if (offset(a) == offset(b)) continue;
      candidates.push_back({RationalPoint{Rational::make(Wide(a.x) + b.x, 2), Rational::make(Wide(a.y) + b.y, 2)},
                            offset(a) + offset(b)});
    }
    candidates.push_back({exact(Point{high.x + perp.x, high.y + perp.y}), 2 * offset(high) + 2 * dot(d, d)});
  }

  std::optional<std::size_t> best;
  std::size_t best_score = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::size_t left = 0, right = 0;
    for (const auto& e : crossing_edges) {
      const Wide a = 2 * offset(points[e.u]), b = 2 * offset(points[e.v]);
      // A point is left of the line iff its offset exceeds the line's offset.
      if (a > candidates[c].doubled && b > candidates[c].doubled) ++left;
      if (a < candidates[c].doubled && b < candidates[c].doubled) ++right;
    }
    const std::size_t score = std::max(left, right);
    if (!best || score <= best_score) {
      best = c;
      best_score = score;
    }
  }
  return DirectedLine::through(candidates[*best].anchor, d);
}

const char* to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::LEFT_OF_L: return "LEFT_OF_L";
    case DiscardReason::RIGHT_OF_L: return "RIGHT_OF_L";
    case DiscardReason::SAME_SIDE_OF_CUT: return "SAME_SIDE_OF_L'";
    case DiscardReason::BETWEEN_CHILDREN: return "BETWEEN_CHILDREN";
    case DiscardReason::ODD_VERTEX_DROP: return "ODD_VERTEX_DROP";
  }
  return "?";
}

std::size_t PartitionNode::depth() const {
  std::size_t deepest = 0;
  for (const auto& c : children) deepest = std::max(deepest, c.depth());
  return deepest + 1;
}

namespace {

template <typename F>
void visit(const PartitionNode& node, F&& f) {
  f(node);
  for (const auto& c : node.children) visit(c, f);
}

void split_node(const GeometricGraph& g, PartitionNode& node, std::size_t leaf_size) {
  if (node.vertices.size() <= leaf_size) return;
  const auto& all_points = g.points();
  const auto& all_edges = g.edges();

  PartitionSplit split;
  std::vector<std::size_t> kept = node.vertices;
  std::vector<std::size_t> live_edges = node.edges;

  if (kept.size() % 2 != 0) {
    std::vector<std::size_t> degree(all_points.size(), 0);
    for (std::size_t e : live_edges) {
      ++degree[all_edges[e].u];
      ++degree[all_edges[e].v];
    }
    const auto drop = *std::min_element(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
      return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
    });
    split.dropped_vertex = drop;
    kept.erase(std::find(kept.begin(), kept.end(), drop));
    auto& dropped = split.discarded[static_cast<std::size_t>(DiscardReason::ODD_VERTEX_DROP)];
    std::erase_if(live_edges, [&](std::size_t e) {
      const bool touches = all_edges[e].u == drop || all_edges[e].v == drop;
      if (touches) dropped.push_back(e);
      return touches;
    });
  }

  // Local copies for the rotation.
  std::vector<std::size_t> local(all_points.size(), 0);
  std::vector<Point> points;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    local[kept[i]] = i;
    points.push_back(all_points[kept[i]]);
  }
  std::vector<Edge> edges;
  for (std::size_t e : live_edges) edges.push_back({local[all_edges[e].u], local[all_edges[e].v]});

  const auto rotation = rotate_to_balance(points, edges);
  const HalvingState& state = rotation.balanced();
  split.halving_line = state.line;

  // Class 1 (left of l, plus the pivot) vs class 2 (right, plus the partner).
  std::vector<int> cls(points.size());
  std::vector<int> side_l(points.size());
  std::vector<Point> v1, v2;
  const auto classes = split_by_halving(points, state);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i : classes[c]) {
      cls[i] = c + 1;
      (c == 0 ? v1 : v2).push_back(points[i]);
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) side_l[i] = static_cast<int>(side_of_line(state.line, points[i]));

  std::vector<Edge> crossing;
  for (const auto& e : edges) {
    if (cls[e.u] != cls[e.v]) crossing.push_back(e);
  }
  const auto cut = ham_sandwich(v1, v2);
  split.cut_line = translate_balance(state.line, cut.line, crossing, points);

  std::vector<int> side_cut(points.size());
  std::vector<int> quadrant(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    side_cut[i] = side_of_line(split.cut_line, points[i]) == Side::RIGHT ? -1 : 1;
    quadrant[i] = (cls[i] == 1 ? 0 : 2) + (side_cut[i] > 0 ? 0 : 1);
    split.quadrants[static_cast<std::size_t>(quadrant[i])].push_back(kept[i]);
  }
  // Child A = V11 ∪ V22 (quadrants 0, 3); child B = V12 ∪ V21 (quadrants 1, 2).
  auto child_of = [&](std::size_t i) { return (quadrant[i] == 0 || quadrant[i] == 3) ? 0 : 1; };

  std::array<PartitionNode, 2> kids;
  for (std::size_t i = 0; i < points.size(); ++i) kids[child_of(i)].vertices.push_back(kept[i]);
  for (std::size_t k = 0; k < live_edges.size(); ++k) {
    const auto& e = edges[k];
    DiscardReason reason;
    if (side_l[e.u] > 0 && side_l[e.v] > 0) {
      reason = DiscardReason::LEFT_OF_L;
    } else if (side_l[e.u] < 0 && side_l[e.v] < 0) {
      reason = DiscardReason::RIGHT_OF_L;
    } else if (cls[e.u] != cls[e.v] && side_cut[e.u] == side_cut[e.v]) {
      reason = DiscardReason::SAME_SIDE_OF_CUT;
    } else if (child_of(e.u) != child_of(e.v)) {
      reason = DiscardReason::BETWEEN_CHILDREN;
    } else {
      kids[child_of(e.u)].edges.push_back(live_edges[k]);
      continue;
    }
    split.discarded[static_cast<std::size_t>(reason)].push_back(live_edges[k]);
  }

  for (auto& kid : kids) {
    if (kid.vertices.size() >= node.vertices.size()) throw InternalError("decomposition made no progress");
    std::sort(kid.vertices.begin(), kid.vertices.end());
    std::sort(kid.edges.begin(), kid.edges.end());
  }
  for (auto& list : split.quadrants) std::sort(list.begin(), list.end());
  for (auto& list : split.discarded) std::sort(list.begin(), list.end());

  node.split = std::move(split);
  for (auto& kid : kids) {
    split_node(g, kid, leaf_size);
    node.children.push_back(std::move(kid));
  }
}

}  // namespace

std::array<std::size_t, kDiscardReasonCount> PartitionTree::discard_totals() const {
  std::array<std::size_t, kDiscardReasonCount> totals{};
  visit(root, [&](const PartitionNode& n) {
    if (!n.split) return;
    for (std::size_t r = 0; r < kDiscardReasonCount; ++r) totals[r] += n.split->discarded[r].size();
  });
  return totals;
}

std::size_t PartitionTree::leaf_edge_count() const {
  std::size_t total = 0;
  visit(root, [&](const PartitionNode& n) {
    if (n.children.empty()) total += n.edges.size();
  });
  return total;
}

PartitionTree decompose(const GeometricGraph& g, std::size_t leaf_size) {
  if (leaf_size < 2) throw ArgumentError("leaf size must be at least 2");
  PartitionTree tree;
  tree.leaf_size = leaf_size;
  tree.root.vertices.resize(g.vertex_count());
  std::iota(tree.root.vertices.begin(), tree.root.vertices.end(), 0);
  tree.root.edges.resize(g.edge_count());
  std::iota(tree.root.edges.begin(), tree.root.edges.end(), 0);
  split_node(g, tree.root, leaf_size);
  return tree;
}

double recurrence_bound_value(std::uint64_t n, const std::function<std::uint64_t(std::uint64_t)>& exl) {
  if (n < 2) throw ArgumentError("recurrence bound needs n >= 2");
  const double levels = std::log(static_cast<double>(n)) / std::log(4.0 / 3.0);
  return levels * (4.0 * static_cast<double>(exl(2 * n)) + 6.0 * static_cast<double>(n));
}

std::uint64_t recurrence_bound(std::uint64_t n, const std::function<std::uint64_t(std::uint64_t)>& exl) {
  return static_cast<std::uint64_t>(std::ceil(recurrence_bound_value(n, exl)));
}

}  // namespace geocross
