#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "geocross/errors.hpp"
#include "geocross/partition.hpp"
#include "oracles.hpp"

using namespace geocross;

namespace {

struct Brute {
  std::size_t left = 0, on = 0, right = 0;
  std::size_t e_left = 0, e_right = 0;
};

Brute recount(const DirectedLine& line, std::span<const Point> pts, std::span<const Edge> edges) {
  Brute b;
  std::vector<Side> s(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s[i] = side_of_line(line, pts[i]);
    (s[i] == Side::LEFT ? b.left : s[i] == Side::RIGHT ? b.right : b.on)++;
  }
  for (const auto& e : edges) {
    if (s[e.u] == Side::LEFT && s[e.v] == Side::LEFT) ++b.e_left;
    if (s[e.u] == Side::RIGHT && s[e.v] == Side::RIGHT) ++b.e_right;
  }
  return b;
}

void check_rotation(const GeometricGraph& g) {
  const auto n = g.vertex_count();
  const auto r = rotate_to_balance(g);
  REQUIRE(r.trace.size() >= 2);
  CHECK(r.events <= n * (n - 1));
  for (std::size_t t = 0; t < r.trace.size(); ++t) {
    const auto& st = r.trace[t];
    const auto b = recount(st.line, g.points(), g.edges());
    REQUIRE(b.left == (n - 2) / 2);
    REQUIRE(b.right == (n - 2) / 2);
    REQUIRE(b.on == 2);
    CHECK(side_of_line(st.line, g.points()[st.pivot]) == Side::ON);
    CHECK(side_of_line(st.line, g.points()[st.partner]) == Side::ON);
    CHECK(st.e_left == b.e_left);
    CHECK(st.e_right == b.e_right);
    if (t > 0) {
      const auto& prev = r.trace[t - 1];
      CHECK(std::max(st.e_left, prev.e_left) - std::min(st.e_left, prev.e_left) <= n);
      CHECK(std::max(st.e_right, prev.e_right) - std::min(st.e_right, prev.e_right) <= n);
      CHECK(st.step > prev.step);
    }
  }
  const auto& first = r.trace.front();
  const auto& last = r.trace.back();
  CHECK(std::set<std::size_t>{first.pivot, first.partner} == std::set<std::size_t>{last.pivot, last.partner});
  CHECK(cross(first.line.direction, last.line.direction) == 0);
  CHECK(dot(first.line.direction, last.line.direction) < 0);
  CHECK(first.e_left == last.e_right);
  CHECK(first.e_right == last.e_left);
  const auto& bal = r.balanced();
  const std::size_t diff = std::max(bal.e_left, bal.e_right) - std::min(bal.e_left, bal.e_right);
  CHECK(diff <= 2 * n);
  for (std::size_t t = 0; t < r.balanced_index; ++t) {
    const auto& st = r.trace[t];
    CHECK(std::max(st.e_left, st.e_right) - std::min(st.e_left, st.e_right) > 2 * n);
  }
}

struct TranslateCheck {
  std::size_t best = 0;
  std::size_t got = 0;
  bool furthest_left = true;
};

// Sweeps every gap between distinct point offsets along the cut's normal.
TranslateCheck sweep_translates(const DirectedLine& result, const DirectedLine& cut, std::span<const Edge> crossing,
                                std::span<const Point> pts) {
  const Vector d = cut.direction;
  std::vector<Wide> offs;
  for (const auto& p : pts) offs.push_back(2 * cross(d, Vector{p.x, p.y}));
  std::vector<Wide> sorted = offs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Wide> gaps{sorted.front() - 1};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gaps.push_back((sorted[i] + sorted[i + 1]) / 2);
  gaps.push_back(sorted.back() + 1);
  auto score = [&](Wide c) {
    std::size_t l = 0, r = 0;
    for (const auto& e : crossing) {
      if (offs[e.u] > c && offs[e.v] > c) ++l;
      if (offs[e.u] < c && offs[e.v] < c) ++r;
    }
    return std::max(l, r);
  };
  TranslateCheck out;
  out.best = SIZE_MAX;
  Wide best_pos = 0;
  for (Wide c : gaps) {
    const auto s = score(c);
    if (s <= out.best) {
      out.best = s;
      best_pos = c;
    }
  }
  const auto b = recount(result, pts, crossing);
  out.got = std::max(b.e_left, b.e_right);
  // Points strictly right of the optimum's furthest-left position must be right of the result too.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (offs[i] < best_pos && side_of_line(result, pts[i]) != Side::RIGHT) out.furthest_left = false;
    if (offs[i] > best_pos && side_of_line(result, pts[i]) != Side::LEFT) out.furthest_left = false;
  }
  return out;
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, Coord range) {
  std::uniform_int_distribution<Coord> c(-range, range);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {c(rng), c(rng)};
  return perturb(pts, rng(), 1);
}

void collect(const PartitionNode& n, std::vector<const PartitionNode*>& out) {
  out.push_back(&n);
  for (const auto& c : n.children) collect(c, out);
}

}  // namespace

TEST_CASE("find_halving_edge examples") {
  const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto [u, v] = find_halving_edge(square);
  CHECK(u == 0);
  CHECK(v == 2);
  const std::vector<Point> two{{3, 4}, {-1, 2}};
  CHECK(find_halving_edge(two) == std::pair<std::size_t, std::size_t>{0, 1});
  const std::vector<Point> three{{0, 0}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(find_halving_edge(three), ArgumentError);

  std::mt19937_64 rng(10);
  for (int it = 0; it < 50; ++it) {
    const auto pts = random_points(rng, 10, 1000);
    const auto [a, b] = find_halving_edge(pts);
    int left = 0, right = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const int s = oracle::side(pts[a], pts[b] - pts[a], pts[i]);
      left += s > 0;
      right += s < 0;
    }
    CHECK(left == 4);
    CHECK(right == 4);
  }
}

TEST_CASE("rotation on the square with both diagonals balances immediately") {
  const auto r = rotate_to_balance(fixture::square_diagonals());
  CHECK(r.balanced_index == 0);
  CHECK(r.balanced().e_left == 0);
  CHECK(r.balanced().e_right == 0);
  check_rotation(fixture::square_diagonals());
}

TEST_CASE("rotation on six points with a heavy initial side") {
  const GeometricGraph g({{0, 0}, {10, 1}, {2, 6}, {6, 8}, {3, -5}, {8, -4}},
                         {{0, 2}, {0, 3}, {2, 3}, {1, 3}, {4, 5}});
  check_rotation(g);
  const auto r = rotate_to_balance(g);
  const auto b = recount(r.balanced().line, g.points(), g.edges());
  CHECK(std::max(b.e_left, b.e_right) - std::min(b.e_left, b.e_right) <= 12);
}

TEST_CASE("rotation invariants on random graphs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 2 * (1 + seed % 12);
    check_rotation(fixture::random_graph(seed, n, 3 * n, 500));
  }
}

TEST_CASE("split_by_halving puts the pivot left and the partner right") {
  const auto g = fixture::random_graph(3, 12, 20, 100);
  const auto r = rotate_to_balance(g);
  for (const auto& st : r.trace) {
    const auto cls = split_by_halving(g.points(), st);
    CHECK(cls[0].size() == 6);
    CHECK(cls[1].size() == 6);
    CHECK(std::find(cls[0].begin(), cls[0].end(), st.pivot) != cls[0].end());
    CHECK(std::find(cls[1].begin(), cls[1].end(), st.partner) != cls[1].end());
  }
}

TEST_CASE("ham_sandwich examples") {
  {
    const std::vector<Point> v1{{0, 0}, {2, 0}}, v2{{1, 1}, {1, -1}};
    const auto cut = ham_sandwich(v1, v2);
    CHECK(side_of_line(cut.line, Point{1, 1}) == Side::ON);
    CHECK(side_of_line(cut.line, Point{1, -1}) == Side::ON);
    CHECK(cut.counts[0] == SideCounts{1, 0, 1});
    CHECK(cut.counts[1] == SideCounts{0, 2, 0});
  }
  {
    const std::vector<Point> v1{{0, 0}}, v2{{5, 5}};
    const auto cut = ham_sandwich(v1, v2);
    CHECK(cut.counts[0] == SideCounts{0, 1, 0});
    CHECK(cut.counts[1] == SideCounts{0, 1, 0});
  }
  {
    const std::vector<Point> none;
    const auto cut = ham_sandwich(none, none);
    CHECK(is_bisecting(cut, 0, 0));
  }
}

TEST_CASE("ham_sandwich bisects random instances") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 200; ++it) {
    const std::size_t a = it % 21, b = (it * 7) % 23;
    const auto pts = random_points(rng, std::max<std::size_t>(a + b, 3), 1000);
    const std::vector<Point> v1(pts.begin(), pts.begin() + static_cast<long>(a));
    const std::vector<Point> v2(pts.begin() + static_cast<long>(a), pts.begin() + static_cast<long>(a + b));
    const auto cut = ham_sandwich(v1, v2);
    const auto c1 = count_sides(cut.line, v1), c2 = count_sides(cut.line, v2);
    CHECK(c1 == cut.counts[0]);
    CHECK(c2 == cut.counts[1]);
    CHECK(c1.left <= a / 2);
    CHECK(c1.right <= a / 2);
    CHECK(c2.left <= b / 2);
    CHECK(c2.right <= b / 2);
    CHECK(is_bisecting(cut, a, b));
  }
}

TEST_CASE("translate_balance with no crossing edges is the identity") {
  const std::vector<Point> pts{{0, 0}, {3, 1}, {1, 4}};
  const auto l = DirectedLine::through(Point{0, 0}, Point{3, 1});
  const auto cut = DirectedLine::through(Point{1, 4}, Vector{1, -2});
  CHECK(translate_balance(l, cut, {}, pts) == cut);
}

TEST_CASE("translate_balance is optimal by exhaustive sweep") {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const auto g = fixture::random_graph(seed, 2 * (2 + seed % 10), 40, 300);
    const auto r = rotate_to_balance(g);
    const auto& st = r.balanced();
    const auto cls = split_by_halving(g.points(), st);
    std::vector<int> which(g.vertex_count());
    std::vector<Point> v1, v2;
    for (int c = 0; c < 2; ++c) {
      for (auto i : cls[c]) {
        which[i] = c;
        (c == 0 ? v1 : v2).push_back(g.points()[i]);
      }
    }
    std::vector<Edge> crossing;
    for (const auto& e : g.edges()) {
      if (which[e.u] != which[e.v]) crossing.push_back(e);
    }
    const auto cut = ham_sandwich(v1, v2).line;
    const auto moved = translate_balance(st.line, cut, crossing, g.points());
    if (cross(st.line.direction, cut.direction) == 0) {
      // Only translates along a line that the cut actually crosses are defined.
      CHECK(moved == cut);
      continue;
    }
    CHECK(cross(moved.direction, cut.direction) == 0);
    CHECK(dot(moved.direction, cut.direction) > 0);
    for (const auto& p : g.points()) CHECK(side_of_line(moved, p) != Side::ON);
    if (crossing.empty()) continue;
    const auto chk = sweep_translates(moved, cut, crossing, g.points());
    CHECK(chk.got == chk.best);
    CHECK(chk.furthest_left);
  }
}

TEST_CASE("translate_balance on a mirror-symmetric instance") {
  // Mirror pairs of vertical edges about the y axis; every edge crosses the x axis.
  const std::vector<Point> pts{{-9, 5}, {-9, -4}, {-3, 7}, {-3, -6}, {3, 6}, {3, -7}, {9, 4}, {9, -5}};
  REQUIRE(validate_general_position(pts).ok());
  const std::vector<Edge> crossing{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  const auto l = DirectedLine::through(Point{0, 0}, Vector{1, 0});
  const auto cut = DirectedLine::through(Point{-100, 0}, Vector{0, 1});
  const auto moved = translate_balance(l, cut, crossing, pts);
  const auto b = recount(moved, pts, crossing);
  CHECK(b.e_left == b.e_right);
  CHECK(b.e_left == 2);
}

TEST_CASE("decompose small inputs and arguments") {
  const auto g = fixture::square_diagonals();
  const auto t = decompose(g, 4);
  CHECK(t.root.children.empty());
  CHECK_FALSE(t.root.split);
  CHECK(t.leaf_edge_count() == 2);
  CHECK(t.depth() == 1);
  CHECK_THROWS_AS(decompose(g, 1), ArgumentError);
}

TEST_CASE("decompose accounting, child sizes, depth and determinism") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 8 + seed * 7;
    const auto g = fixture::random_graph(seed, n, 3 * n, 5000);
    const auto t = decompose(g, 4);
    std::vector<const PartitionNode*> nodes;
    collect(t.root, nodes);
    std::size_t discarded = 0;
    for (const auto* node : nodes) {
      if (node->children.empty()) {
        CHECK(node->vertices.size() <= 4);
        continue;
      }
      REQUIRE(node->split);
      REQUIRE(node->children.size() == 2);
      const auto& sp = *node->split;
      std::multiset<std::size_t> seen;
      for (const auto& list : sp.discarded) seen.insert(list.begin(), list.end());
      for (const auto& c : node->children) seen.insert(c.edges.begin(), c.edges.end());
      CHECK(seen == std::multiset<std::size_t>(node->edges.begin(), node->edges.end()));
      for (const auto& list : sp.discarded) discarded += list.size();

      const std::size_t m = node->vertices.size();
      const std::size_t lo = m / 4 >= 2 ? m / 4 - 2 : 0;
      const std::size_t hi = (3 * m + 3) / 4 + 2;
      std::set<std::size_t> kid_union;
      for (const auto& c : node->children) {
        CHECK(c.vertices.size() >= lo);
        CHECK(c.vertices.size() <= hi);
        kid_union.insert(c.vertices.begin(), c.vertices.end());
      }
      std::set<std::size_t> quad_union;
      for (const auto& q : sp.quadrants) quad_union.insert(q.begin(), q.end());
      CHECK(kid_union == quad_union);
      CHECK(node->children[0].vertices.size() + node->children[1].vertices.size() == quad_union.size());
      std::set<std::size_t> a(sp.quadrants[0].begin(), sp.quadrants[0].end());
      a.insert(sp.quadrants[3].begin(), sp.quadrants[3].end());
      CHECK(std::set<std::size_t>(node->children[0].vertices.begin(), node->children[0].vertices.end()) == a);
      CHECK(quad_union.size() + (sp.dropped_vertex ? 1 : 0) == m);
      if (sp.dropped_vertex) CHECK(m % 2 == 1);
    }
    CHECK(discarded + t.leaf_edge_count() == g.edge_count());
    std::size_t totals = 0;
    for (auto x : t.discard_totals()) totals += x;
    CHECK(totals == discarded);
    const auto depth_cap = static_cast<std::size_t>(std::ceil(std::log(double(n)) / std::log(4.0 / 3.0))) + 1;
    CHECK(t.depth() <= depth_cap);

    const auto again = decompose(g, 4);
    std::vector<const PartitionNode*> nodes2;
    collect(again.root, nodes2);
    REQUIRE(nodes2.size() == nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(nodes[i]->vertices == nodes2[i]->vertices);
      CHECK(nodes[i]->edges == nodes2[i]->edges);
      if (nodes[i]->split) CHECK(nodes[i]->split->cut_line == nodes2[i]->split->cut_line);
    }
  }
}

TEST_CASE("odd vertex count drops a minimum-degree vertex") {
  const GeometricGraph g({{0, 0}, {10, 1}, {2, 6}, {6, 8}, {3, -5}, {8, -4}, {12, 7}},
                         {{0, 2}, {0, 3}, {2, 3}, {1, 3}, {4, 5}, {1, 6}, {0, 6}, {2, 6}});
  const auto t = decompose(g, 2);
  REQUIRE(t.root.split);
  // Degrees: 0:3 1:2 2:3 3:3 4:1 5:1 6:3; lowest index among the minimum is 4.
  CHECK(t.root.split->dropped_vertex == 4);
  CHECK(t.root.split->discarded[static_cast<std::size_t>(DiscardReason::ODD_VERTEX_DROP)] ==
        std::vector<std::size_t>{4});
}

TEST_CASE("recurrence bound") {
  CHECK(recurrence_bound(2, [](std::uint64_t) { return 0; }) == 29);
  for (std::uint64_t n : {2, 10, 100, 1000}) {
    const double v = recurrence_bound_value(n, [](std::uint64_t) { return 0; });
    CHECK(v / (double(n) * std::log(double(n)) / std::log(4.0 / 3.0)) == doctest::Approx(6.0).epsilon(1e-12));
  }
  auto lin = [](std::uint64_t m) { return 3 * m; };
  for (std::uint64_t n = 2; n < 5000; n = n * 2 + 1) CHECK(recurrence_bound(2 * n, lin) >= 2 * recurrence_bound(n, lin) - 1);
  CHECK_THROWS_AS(recurrence_bound(1, lin), ArgumentError);
}
