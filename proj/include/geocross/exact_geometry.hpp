#pragma once

// Exact predicates over integer coordinates. Every coordinate is bounded by
// kCoordinateLimit so that all three-point determinants fit in 128 bits.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geocross {

using Coord = std::int64_t;
using Wide = __int128;

inline constexpr Coord kCoordinateLimit = Coord{1} << 30;

struct Point {
  Coord x = 0;
  Coord y = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Difference vector; also used as an exact ray direction (positive scaling
/// does not change the direction it denotes).
struct Vector {
  Coord x = 0;
  Coord y = 0;

  friend auto operator<=>(const Vector&, const Vector&) = default;
};

inline Vector operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Vector operator-(const Vector& v) { return {-v.x, -v.y}; }

inline Wide cross(const Vector& a, const Vector& b) {
  return static_cast<Wide>(a.x) * b.y - static_cast<Wide>(a.y) * b.x;
}
inline Wide dot(const Vector& a, const Vector& b) {
  return static_cast<Wide>(a.x) * b.x + static_cast<Wide>(a.y) * b.y;
}

template <typename T>
int sign(T v) {
  return (v > 0) - (v < 0);
}

struct Segment {
  Point a;
  Point b;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  /// Reduces num/den; throws RangeError if the reduced value does not fit in
  /// 64 bits and ArgumentError on a zero denominator.
  static Rational make(Wide num, Wide den = 1);

  friend bool operator==(const Rational&, const Rational&) = default;
};

struct RationalPoint {
  Rational x;
  Rational y;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

enum class Orientation { CW = -1, COLLINEAR = 0, CCW = 1 };
enum class Side { RIGHT = -1, ON = 0, LEFT = 1 };
enum class IntersectionType : std::uint8_t { DISJOINT = 0, SHARE_ENDPOINT = 1, CROSS = 2 };

const char* to_string(Orientation o);
const char* to_string(Side s);
const char* to_string(IntersectionType t);
std::optional<IntersectionType> parse_intersection_type(std::string_view name);

/// Directed line with an exact rational anchor. LEFT/RIGHT are taken relative
/// to `direction`, which must be nonzero.
struct DirectedLine {
  RationalPoint origin;
  Vector direction;

  static DirectedLine through(const Point& from, const Point& to);
  static DirectedLine through(const Point& anchor, const Vector& direction);
  static DirectedLine through(const RationalPoint& anchor, const Vector& direction);

  friend bool operator==(const DirectedLine&, const DirectedLine&) = default;
};

/// Closed set of ray directions between two boundary directions. `from` and
/// `to` follow the segment's endpoint order; `ccw` says whether the set is
/// swept counterclockwise from `from` to `to`. Always less than a half-turn.
struct AngularInterval {
  Vector from;
  Vector to;
  bool ccw = true;

  Vector ccw_start() const { return ccw ? from : to; }
  Vector ccw_end() const { return ccw ? to : from; }
  bool contains(const Vector& dir) const;
};

/// Closed counterclockwise arc [start, end] of directions, strictly less than
/// a half-turn (a single direction when start and end are parallel).
struct Arc {
  Vector start;
  Vector end;

  bool contains(const Vector& dir) const;
};

std::optional<Arc> intersect(const Arc& a, const Arc& b);

Orientation orientation(const Point& p, const Point& q, const Point& r);

/// Throws DegenerateGeometryError on collinear overlap or when an endpoint
/// touches the other segment's interior.
IntersectionType classify_pair(const Segment& s1, const Segment& s2);

Side side_of_line(const DirectedLine& line, const Point& p);
Side side_of_line(const DirectedLine& line, const RationalPoint& p);

/// Directions of rays from `v` that meet `s`. Throws DegenerateGeometryError
/// when `v` lies on the supporting line of `s`.
AngularInterval ray_hit_interval(const Point& v, const Segment& s);

/// Exact test: does the ray from `v` with direction `dir` meet `s`?
bool ray_hits_segment(const Point& v, const Vector& dir, const Segment& s);

/// True iff `p` lies on the closed segment.
bool on_segment(const Point& p, const Segment& s);

struct GeneralPositionReport {
  enum class Kind { OK, DUPLICATE, COLLINEAR };

  Kind kind = Kind::OK;
  /// The first violating pair (DUPLICATE) or triple (COLLINEAR) in
  /// lexicographic index order.
  std::vector<std::size_t> indices;

  bool ok() const { return kind == Kind::OK; }
  std::string describe() const;
};

GeneralPositionReport validate_general_position(std::span<const Point> points);

/// Throws RangeError when |x| or |y| exceeds kCoordinateLimit.
void check_coordinate_budget(const Point& p);

/// Jitters every coordinate by a uniform integer in [-magnitude, magnitude]
/// until the result is in general position. Up to 100 attempts, then
/// GenerationError.
std::vector<Point> perturb(std::span<const Point> points, std::uint64_t seed, Coord magnitude);

}  // namespace geocross
