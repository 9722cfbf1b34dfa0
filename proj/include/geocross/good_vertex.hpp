#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "geocross/exact_geometry.hpp"
#include "geocross/graph_model.hpp"

namespace geocross {

/// One end of a matching edge: `end` is 0 for segment.a, 1 for segment.b.
struct Endpoint {
  std::size_t edge = 0;
  int end = 0;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

/// Pairwise disjoint segments whose endpoints are in general position.
class DisjointMatching {
 public:
  /// Throws ValidationError when two segments are not disjoint or the
  /// endpoints are not in general position.
  explicit DisjointMatching(std::vector<Segment> segments);

  /// The graph's edges as a matching (same validation).
  static DisjointMatching from_graph(const GeometricGraph& g);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  Point point(Endpoint e) const;

 private:
  std::vector<Segment> segments_;
};

/// An endpoint is good when some ray from it misses another edge of the
/// matching; its own edge counts as hit by every ray.
bool is_good(const DisjointMatching& m, Endpoint endpoint);

/// All good endpoints in (edge, end) order.
std::vector<Endpoint> good_endpoints(const DisjointMatching& m);

/// At least |M| - 2 good endpoints. Throws SizeError below four edges.
bool check_lama(const DisjointMatching& m);

/// Three disjoint segments, each of whose extension runs into the next one,
/// so that the supporting lines bound a triangle. No endpoint is good.
struct TriangleFrame {
  std::array<Segment, 3> edges;
  /// corners[i] = supporting line of edges[i] meets that of edges[(i+1)%3].
  std::array<RationalPoint, 3> corners;

  /// Strict interior test. Throws DegenerateGeometryError when `p` lies on a
  /// supporting line.
  bool contains_strictly(const Point& p) const;
};

/// Coordinates of every frame must stay within this bound.
inline constexpr Coord kFrameCoordinateLimit = Coord{1} << 20;

/// The unperturbed integer template.
std::array<Segment, 3> triangle_frame_template();

/// Validates and builds a frame. Throws ValidationError when the segments
/// are not a frame (not disjoint, wrong combinatorics, some endpoint good)
/// and RangeError when a coordinate exceeds kFrameCoordinateLimit.
TriangleFrame make_triangle_frame(const std::array<Segment, 3>& edges);

/// Random perturbation of the template, validated. Throws GenerationError
/// after 1000 rejected attempts.
TriangleFrame generate_triangle_frame(std::uint64_t seed);

enum class FourthEdgeCase { INSIDE_T, ONE_IN_ONE_OUT, OUTSIDE_T };

const char* to_string(FourthEdgeCase c);

/// Throws ValidationError if `e` is not disjoint from every frame edge and
/// DegenerateGeometryError if an endpoint of `e` lies on a supporting line.
FourthEdgeCase classify_fourth_edge(const TriangleFrame& frame, const Segment& e);

/// The frame plus `e` has at least two good endpoints.
bool verify_appendix(const TriangleFrame& frame, const Segment& e);

}  // namespace geocross
