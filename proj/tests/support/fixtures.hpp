#pragma once

// Small hand-built configurations shared by several test files. Every one is
// checked against the pair-classification oracle in test_graph_model.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "geocross/errors.hpp"
#include "geocross/exact_geometry.hpp"
#include "geocross/good_vertex.hpp"
#include "geocross/graph_model.hpp"

namespace fixture {

using geocross::Edge;
using geocross::GeometricGraph;
using geocross::Point;

/// Builds a graph whose edges are the given segments, one fresh vertex per endpoint.
inline GeometricGraph from_segments(const std::vector<geocross::Segment>& segs) {
  std::vector<Point> pts;
  std::vector<Edge> edges;
  for (const auto& s : segs) {
    edges.push_back({pts.size(), pts.size() + 1});
    pts.push_back(s.a);
    pts.push_back(s.b);
  }
  return GeometricGraph(std::move(pts), std::move(edges));
}

/// Square with both diagonals only: points 0..3, edges (0,2) and (1,3).
inline GeometricGraph square_diagonals() { return GeometricGraph({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{0, 2}, {1, 3}}); }

/// Three pairwise crossing chords.
inline GeometricGraph triple_crossing() {
  return from_segments({{{-10, 1}, {10, -2}}, {{-1, -10}, {2, 10}}, {{-8, -7}, {7, 9}}});
}

/// Three pairwise disjoint, slightly sloped segments.
inline GeometricGraph triple_disjoint() {
  return from_segments({{{0, 0}, {4, 1}}, {{1, 3}, {5, 5}}, {{0, 7}, {6, 8}}});
}

/// Two disjoint verticals both crossed by one horizontal.
inline GeometricGraph grid_21() { return from_segments({{{1, 0}, {1, 2}}, {{5, 0}, {5, 2}}, {{0, 1}, {6, 1}}}); }

/// Two crossing diagonals plus a far segment disjoint from both.
inline GeometricGraph family_21() { return from_segments({{{0, 0}, {4, 4}}, {{0, 4}, {4, 0}}, {{10, 1}, {11, 5}}}); }

/// Five near-diametral chords of a circle of radius ~100; all pairs cross.
inline GeometricGraph five_chords() {
  return from_segments({{{100, 3}, {-100, -1}},
                        {{31, 95}, {-30, -96}},
                        {{-81, 59}, {80, -58}},
                        {{-80, -60}, {81, 57}},
                        {{30, -95}, {-33, 94}}});
}

/// Random graph on `n` points in general position in [-range, range]^2 with
/// up to `m` distinct random edges.
inline GeometricGraph random_graph(std::uint64_t seed, std::size_t n, std::size_t m, geocross::Coord range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<geocross::Coord> c(-range, range);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {c(rng), c(rng)};
  pts = geocross::perturb(pts, seed ^ 0x9e37U, 2);
  std::vector<Edge> edges;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t tries = 0; edges.size() < m && tries < 50 * m + 50; ++tries) {
    std::size_t u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const Edge e{u, v};
    bool dup = false;
    for (const auto& f : edges) dup = dup || f == e;
    if (!dup) edges.push_back(e);
  }
  return GeometricGraph(std::move(pts), std::move(edges));
}

/// Random abstract matrix: every pair gets CROSS, DISJOINT or SHARE_ENDPOINT
/// with the given weights.
inline geocross::IntersectionMatrix random_matrix(std::mt19937_64& rng, std::size_t edges, int w_cross = 2,
                                                  int w_disjoint = 2, int w_share = 1) {
  std::discrete_distribution<int> pick({double(w_disjoint), double(w_share), double(w_cross)});
  std::vector<geocross::PairEntry> pairs;
  for (std::size_t i = 0; i < edges; ++i) {
    for (std::size_t j = i + 1; j < edges; ++j) {
      pairs.push_back({i, j, static_cast<geocross::IntersectionType>(pick(rng))});
    }
  }
  return geocross::IntersectionMatrix::from_pairs(edges, pairs);
}

/// Matching with exactly one good endpoint, (edge 0, end 0).
inline std::vector<geocross::Segment> one_good_matching() {
  return {{{-4, 13}, {5, -15}}, {{-14, -20}, {0, -1}}, {{15, 9}, {-12, 20}}};
}

/// Rejection-sampled pairwise disjoint segments with endpoints in general
/// position inside [-range, range]^2.
inline geocross::DisjointMatching random_disjoint_matching(std::mt19937_64& rng, std::size_t size,
                                                           geocross::Coord range) {
  std::vector<geocross::Segment> segs;
  while (segs.size() < size) {
    std::uniform_int_distribution<geocross::Coord> c(-range, range);
    const geocross::Segment s{{c(rng), c(rng)}, {c(rng), c(rng)}};
    if (s.a == s.b) continue;
    auto next = segs;
    next.push_back(s);
    try {
      geocross::DisjointMatching probe(next);
      segs = std::move(next);
    } catch (const geocross::Error&) {
    }
  }
  return geocross::DisjointMatching(segs);
}

/// Rejection-sampled fourth edge of the requested case for `frame`: valid
/// together with the frame and off every supporting line.
inline std::optional<geocross::Segment> sample_fourth_edge(std::mt19937_64& rng, const geocross::TriangleFrame& frame,
                                                           geocross::FourthEdgeCase want, int attempts = 200000) {
  geocross::Coord lo_x = INT64_MAX, hi_x = INT64_MIN, lo_y = INT64_MAX, hi_y = INT64_MIN;
  for (const auto& e : frame.edges) {
    for (const auto& p : {e.a, e.b}) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  }
  const geocross::Coord w = hi_x - lo_x, h = hi_y - lo_y;
  std::uniform_int_distribution<geocross::Coord> near_x(lo_x, hi_x), near_y(lo_y, hi_y);
  std::uniform_int_distribution<geocross::Coord> far_x(lo_x - w, hi_x + w), far_y(lo_y - h, hi_y + h);
  for (int i = 0; i < attempts; ++i) {
    auto pick = [&](bool inside) {
      return inside ? geocross::Point{near_x(rng), near_y(rng)} : geocross::Point{far_x(rng), far_y(rng)};
    };
    const bool first_in = want != geocross::FourthEdgeCase::OUTSIDE_T;
    const bool second_in = want == geocross::FourthEdgeCase::INSIDE_T;
    const geocross::Segment e{pick(first_in), pick(second_in)};
    if (e.a == e.b) continue;
    try {
      std::vector<geocross::Segment> all(frame.edges.begin(), frame.edges.end());
      all.push_back(e);
      geocross::DisjointMatching probe(all);
      if (geocross::classify_fourth_edge(frame, e) == want) return e;
    } catch (const geocross::Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace fixture
