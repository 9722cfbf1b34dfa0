#include "geocross/exact_geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

using Huge = boost::multiprecision::int256_t;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_int64(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

// Direction modulo sign, mapped into the half-open upper half-plane.
Vector canonical_axis(Vector d) {
  if (d.y < 0 || (d.y == 0 && d.x < 0)) return -d;
  return d;
}

bool within_box(const Point& p, const Segment& s) {
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

Rational Rational::make(Wide num, Wide den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (Wide g = wide_gcd(num, den); g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits_int64(num) || !fits_int64(den)) throw RangeError("rational value exceeds 64-bit range");
  return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::CW: return "CW";
    case Orientation::COLLINEAR: return "COLLINEAR";
    case Orientation::CCW: return "CCW";
  }
  return "?";
}

const char* to_string(Side s) {
  switch (s) {
    case Side::RIGHT: return "RIGHT";
    case Side::ON: return "ON";
    case Side::LEFT: return "LEFT";
  }
  return "?";
}

const char* to_string(IntersectionType t) {
  switch (t) {
    case IntersectionType::DISJOINT: return "DISJOINT";
    case IntersectionType::SHARE_ENDPOINT: return "SHARE_ENDPOINT";
    case IntersectionType::CROSS: return "CROSS";
  }
  return "?";
}

std::optional<IntersectionType> parse_intersection_type(std::string_view name) {
  if (name == "DISJOINT") return IntersectionType::DISJOINT;
  if (name == "SHARE_ENDPOINT") return IntersectionType::SHARE_ENDPOINT;
  if (name == "CROSS") return IntersectionType::CROSS;
  return std::nullopt;
}

DirectedLine DirectedLine::through(const Point& from, const Point& to) {
  return through(from, to - from);
}

DirectedLine DirectedLine::through(const Point& anchor, const Vector& direction) {
  return through(RationalPoint{Rational{anchor.x, 1}, Rational{anchor.y, 1}}, direction);
}

DirectedLine DirectedLine::through(const RationalPoint& anchor, const Vector& direction) {
  if (direction.x == 0 && direction.y == 0) throw ArgumentError("directed line with zero direction");
  return DirectedLine{anchor, direction};
}

bool Arc::contains(const Vector& dir) const {
  if (cross(start, end) == 0) return cross(start, dir) == 0 && dot(start, dir) > 0;
  return cross(start, dir) >= 0 && cross(dir, end) >= 0;
}

bool AngularInterval::contains(const Vector& dir) const {
  return Arc{ccw_start(), ccw_end()}.contains(dir);
}

std::optional<Arc> intersect(const Arc& a, const Arc& b) {
  std::optional<Vector> start;
  if (b.contains(a.start)) {
    start = a.start;
  } else if (a.contains(b.start)) {
    start = b.start;
  }
  std::optional<Vector> end;
  if (b.contains(a.end)) {
    end = a.end;
  } else if (a.contains(b.end)) {
    end = b.end;
  }
  if (!start || !end) return std::nullopt;
  return Arc{*start, *end};
}

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  return static_cast<Orientation>(sign(cross(q - p, r - p)));
}

bool on_segment(const Point& p, const Segment& s) {
  return orientation(s.a, s.b, p) == Orientation::COLLINEAR && within_box(p, s);
}

IntersectionType classify_pair(const Segment& s1, const Segment& s2) {
  if (s1.a == s1.b || s2.a == s2.b) throw DegenerateGeometryError("zero-length segment");

  const bool aa = s1.a == s2.a, ab = s1.a == s2.b, ba = s1.b == s2.a, bb = s1.b == s2.b;
  const int shared = aa + ab + ba + bb;
  if (shared == 2) throw DegenerateGeometryError("collinear overlap: identical segments");
  if (shared == 1) {
    const Point& common = (aa || ab) ? s1.a : s1.b;
    const Point& other1 = (aa || ab) ? s1.b : s1.a;
    const Point& other2 = (aa || ba) ? s2.b : s2.a;
    const Vector d1 = other1 - common, d2 = other2 - common;
    if (cross(d1, d2) == 0 && dot(d1, d2) > 0) {
      throw DegenerateGeometryError("collinear overlap at a shared endpoint");
    }
    return IntersectionType::SHARE_ENDPOINT;
  }

  const auto o1 = orientation(s1.a, s1.b, s2.a);
  const auto o2 = orientation(s1.a, s1.b, s2.b);
  const auto o3 = orientation(s2.a, s2.b, s1.a);
  const auto o4 = orientation(s2.a, s2.b, s1.b);

  if (static_cast<int>(o1) * static_cast<int>(o2) < 0 &&
      static_cast<int>(o3) * static_cast<int>(o4) < 0) {
    return IntersectionType::CROSS;
  }
  if (o1 == Orientation::COLLINEAR && o2 == Orientation::COLLINEAR) {
    if (within_box(s2.a, s1) || within_box(s2.b, s1) || within_box(s1.a, s2)) {
      throw DegenerateGeometryError("collinear overlap");
    }
    return IntersectionType::DISJOINT;
  }
  if ((o1 == Orientation::COLLINEAR && within_box(s2.a, s1)) ||
      (o2 == Orientation::COLLINEAR && within_box(s2.b, s1)) ||
      (o3 == Orientation::COLLINEAR && within_box(s1.a, s2)) ||
      (o4 == Orientation::COLLINEAR && within_box(s1.b, s2))) {
    throw DegenerateGeometryError("segment endpoint touches another segment's interior");
  }
  return IntersectionType::DISJOINT;
}

Side side_of_line(const DirectedLine& line, const RationalPoint& p) {
  // sign of cross(direction, p - origin), scaled by the positive product of all
  // denominators.
  const Huge ox_den = line.origin.x.den, oy_den = line.origin.y.den;
  const Huge px_den = p.x.den, py_den = p.y.den;
  const Huge dx = Huge(p.x.num) * ox_den - Huge(line.origin.x.num) * px_den;
  const Huge dy = Huge(p.y.num) * oy_den - Huge(line.origin.y.num) * py_den;
  const Huge value = Huge(line.direction.x) * dy * ox_den * px_den -
                     Huge(line.direction.y) * dx * oy_den * py_den;
  return static_cast<Side>(value.sign());
}

Side side_of_line(const DirectedLine& line, const Point& p) {
  if (line.origin.x.den == 1 && line.origin.y.den == 1) {
    const Point o{line.origin.x.num, line.origin.y.num};
    return static_cast<Side>(sign(cross(line.direction, p - o)));
  }
  return side_of_line(line, RationalPoint{Rational{p.x, 1}, Rational{p.y, 1}});
}

AngularInterval ray_hit_interval(const Point& v, const Segment& s) {
  const Vector from = s.a - v, to = s.b - v;
  const Wide turn = cross(from, to);
  if (turn == 0) throw DegenerateGeometryError("ray origin lies on the segment's supporting line");
  return AngularInterval{from, to, turn > 0};
}

bool ray_hits_segment(const Point& v, const Vector& dir, const Segment& s) {
  // Solve v + t*dir = a + u*(b - a) with t >= 0, 0 <= u <= 1.
  const Vector e = s.b - s.a;
  const Vector w = s.a - v;
  const Wide den = cross(dir, e);
  if (den == 0) {
    if (cross(w, dir) != 0) return false;
    // Collinear: the ray meets the segment iff some endpoint is ahead of v.
    return dot(s.a - v, dir) >= 0 || dot(s.b - v, dir) >= 0;
  }
  Wide t = cross(w, e);
  Wide u = cross(w, dir);
  Wide d = den;
  if (d < 0) {
    t = -t;
    u = -u;
    d = -d;
  }
  return t >= 0 && u >= 0 && u <= d;
}

std::string GeneralPositionReport::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::OK: return "general position";
    case Kind::DUPLICATE: out << "duplicate points"; break;
    case Kind::COLLINEAR: out << "collinear triple"; break;
  }
  for (std::size_t i = 0; i < indices.size(); ++i) out << (i == 0 ? " " : ",") << indices[i];
  return out.str();
}

GeneralPositionReport validate_general_position(std::span<const Point> points) {
  const std::size_t n = points.size();
  GeneralPositionReport report;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::pair(points[i], i) < std::pair(points[j], j);
  });
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (points[order[k]] != points[order[k + 1]]) continue;
    const std::vector<std::size_t> pair{order[k], order[k + 1]};
    if (report.ok() || pair < report.indices) {
      report.kind = GeneralPositionReport::Kind::DUPLICATE;
      report.indices = pair;
    }
  }
  if (!report.ok()) return report;

  // For each i, bucket later points by the axis of (p_j - p_i); the smallest
  // bucket pair gives the lexicographically first triple starting at i.
  std::vector<std::pair<Vector, std::size_t>> axes;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    axes.clear();
    for (std::size_t j = i + 1; j < n; ++j) axes.emplace_back(canonical_axis(points[j] - points[i]), j);
    std::sort(axes.begin(), axes.end(), [](const auto& a, const auto& b) {
      const Wide c = cross(a.first, b.first);
      if (c != 0) return c > 0;
      return a.second < b.second;
    });
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t k = 0; k + 1 < axes.size(); ++k) {
      if (cross(axes[k].first, axes[k + 1].first) != 0) continue;
      if (k > 0 && cross(axes[k - 1].first, axes[k].first) == 0) continue;  // not the bucket head
      const std::pair cand{axes[k].second, axes[k + 1].second};
      if (!best || cand < *best) best = cand;
    }
    if (best) {
      report.kind = GeneralPositionReport::Kind::COLLINEAR;
      report.indices = {i, best->first, best->second};
      return report;
    }
  }
  return report;
}

void check_coordinate_budget(const Point& p) {
  if (p.x > kCoordinateLimit || p.x < -kCoordinateLimit || p.y > kCoordinateLimit ||
      p.y < -kCoordinateLimit) {
    std::ostringstream msg;
    msg << "coordinate (" << p.x << "," << p.y << ") exceeds the budget of 2^30";
    throw RangeError(msg.str());
  }
}

std::vector<Point> perturb(std::span<const Point> points, std::uint64_t seed, Coord magnitude) {
  if (magnitude < 0) throw ArgumentError("perturbation magnitude must be non-negative");
  constexpr int kAttempts = 100;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> jitter(-magnitude, magnitude);
  std::vector<Point> out(points.begin(), points.end());
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    bool in_budget = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
      out[i] = Point{points[i].x + jitter(rng), points[i].y + jitter(rng)};
      in_budget = in_budget && std::max(std::abs(out[i].x), std::abs(out[i].y)) <= kCoordinateLimit;
    }
    if (in_budget && validate_general_position(out).ok()) return out;
  }
  throw GenerationError("perturbation failed to reach general position after 100 attempts");
}

}  // namespace geocross
