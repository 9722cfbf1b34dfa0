#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geocross/bitset.hpp"
#include "geocross/exact_geometry.hpp"

namespace geocross {

/// Undirected edge, normalized so that u < v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Integer-coordinate points in general position plus a simple edge list.
/// Construction validates everything; a constructed graph is always valid.
class GeometricGraph {
 public:
  GeometricGraph() = default;

  /// Normalizes edges to u < v. Throws RangeError (coordinate budget) or
  /// ValidationError (general position, self-loop, duplicate edge, index out
  /// of range).
  GeometricGraph(std::vector<Point> points, std::vector<Edge> edges);

  const std::vector<Point>& points() const noexcept { return points_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return points_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Segment segment(std::size_t edge) const { return {points_[edges_[edge].u], points_[edges_[edge].v]}; }

  friend bool operator==(const GeometricGraph&, const GeometricGraph&) = default;

 private:
  std::vector<Point> points_;
  std::vector<Edge> edges_;
};

enum class Provenance { GEOMETRIC, TOPOLOGICAL };

struct PairEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  IntersectionType type = IntersectionType::DISJOINT;
};

/// Total symmetric classification of edge pairs, stored as two relation
/// bitsets per edge (CROSS and DISJOINT; SHARE_ENDPOINT is neither).
class IntersectionMatrix {
 public:
  IntersectionMatrix() = default;

  static IntersectionMatrix from_graph(const GeometricGraph& g);

  /// Abstract (topological) input. Every unordered pair of distinct edges must
  /// appear exactly once. Throws ValidationError otherwise.
  static IntersectionMatrix from_pairs(std::size_t edge_count, std::span<const PairEntry> pairs);

  std::size_t edge_count() const noexcept { return cross_.size(); }
  Provenance provenance() const noexcept { return provenance_; }

  IntersectionType at(std::size_t i, std::size_t j) const;

  const EdgeSet& cross_row(std::size_t i) const { return cross_[i]; }
  const EdgeSet& disjoint_row(std::size_t i) const { return disjoint_[i]; }

  /// Appends an edge whose classification against edges 0..edge_count()-1 is
  /// given by `row`.
  void append_edge(std::span<const IntersectionType> row);
  void pop_edge();

 private:
  std::vector<EdgeSet> cross_;
  std::vector<EdgeSet> disjoint_;
  Provenance provenance_ = Provenance::GEOMETRIC;
};

IntersectionMatrix build_intersection_matrix(const GeometricGraph& g);
/// The four crossing graphs a three-edge matching can realize.
/// three-segment matchings.
enum class CircleGraphPattern3 { TRIPLE_CROSSING, TRIPLE_DISJOINT, GRID_21, FAMILY_21 };

const char* to_string(CircleGraphPattern3 p);
/// Short CLI label: k3 | empty | grid21 | family21.
const char* label(CircleGraphPattern3 p);
std::optional<CircleGraphPattern3> parse_pattern_label(std::string_view label);

/// Intersection graph of a matching: vertices are the chosen edges, adjacent
/// iff they cross.
struct MatchingGraph {
  std::vector<std::size_t> edges;
  std::vector<std::vector<bool>> adjacent;

  std::size_t link_count() const;
  std::vector<std::size_t> degrees() const;
};

/// Throws ValidationError ("not a matching") if two of the edges share an
/// endpoint.
MatchingGraph matching_intersection_graph(const IntersectionMatrix& m, std::span<const std::size_t> edge_ids);

/// Identifies a three-vertex matching graph by link count and degree multiset.
CircleGraphPattern3 classify_pattern3(const MatchingGraph& g);

}  // namespace geocross
