#include "geocross/good_vertex.hpp"

#include <optional>
#include <random>
#include <string>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

std::vector<Point> endpoints_of(const std::vector<Segment>& segments) {
  std::vector<Point> pts;
  for (const auto& s : segments) {
    pts.push_back(s.a);
    pts.push_back(s.b);
  }
  return pts;
}

// Intersection of the supporting lines of s and t as parameters along each:
// s.a + (t_num/den)(s.b - s.a) = t.a + (u_num/den)(t.b - t.a), den > 0.
struct LineHit {
  Wide t_num;
  Wide u_num;
  Wide den;
};

std::optional<LineHit> line_hit(const Segment& s, const Segment& t) {
  const Vector d1 = s.b - s.a, d2 = t.b - t.a, w = t.a - s.a;
  Wide den = cross(d1, d2);
  if (den == 0) return std::nullopt;
  Wide t_num = cross(w, d2), u_num = cross(w, d1);
  if (den < 0) {
    den = -den;
    t_num = -t_num;
    u_num = -u_num;
  }
  return LineHit{t_num, u_num, den};
}

RationalPoint hit_point(const Segment& s, const LineHit& h) {
  const Vector d = s.b - s.a;
  return RationalPoint{Rational::make(Wide(s.a.x) * h.den + h.t_num * d.x, h.den),
                       Rational::make(Wide(s.a.y) * h.den + h.t_num * d.y, h.den)};
}

}  // namespace

DisjointMatching::DisjointMatching(std::vector<Segment> segments) : segments_(std::move(segments)) {
  const auto pts = endpoints_of(segments_);
  for (const auto& p : pts) check_coordinate_budget(p);
  if (auto report = validate_general_position(pts); !report.ok()) {
    std::vector<std::size_t> edges;
    for (std::size_t i : report.indices) edges.push_back(i / 2);
    throw ValidationError("matching endpoints not in general position: " + report.describe(), edges);
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    for (std::size_t j = i + 1; j < segments_.size(); ++j) {
      if (classify_pair(segments_[i], segments_[j]) != IntersectionType::DISJOINT) {
        throw ValidationError("matching edges " + std::to_string(i) + " and " + std::to_string(j) + " are not disjoint",
                              {i, j});
      }
    }
  }
}

DisjointMatching DisjointMatching::from_graph(const GeometricGraph& g) {
  std::vector<Segment> segments;
  for (std::size_t e = 0; e < g.edge_count(); ++e) segments.push_back(g.segment(e));
  return DisjointMatching(std::move(segments));
}

Point DisjointMatching::point(Endpoint e) const {
  const auto& s = segments_.at(e.edge);
  return e.end == 0 ? s.a : s.b;
}

bool is_good(const DisjointMatching& m, Endpoint endpoint) {
  const Point v = m.point(endpoint);
  std::optional<Arc> common;
  bool first = true;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (j == endpoint.edge) continue;
    const auto interval = ray_hit_interval(v, m.segments()[j]);
    const Arc arc{interval.ccw_start(), interval.ccw_end()};
    common = first ? std::optional<Arc>(arc) : intersect(*common, arc);
    first = false;
    if (!common) return true;
  }
  return false;
}

std::vector<Endpoint> good_endpoints(const DisjointMatching& m) {
  std::vector<Endpoint> good;
  for (std::size_t e = 0; e < m.size(); ++e) {
    for (int end : {0, 1}) {
      if (is_good(m, {e, end})) good.push_back({e, end});
    }
  }
  return good;
}

bool check_lama(const DisjointMatching& m) {
  if (m.size() < 4) throw SizeError("the good-endpoint bound needs at least four edges");
  return good_endpoints(m).size() + 2 >= m.size();
}

bool TriangleFrame::contains_strictly(const Point& p) const {
  for (std::size_t i = 0; i < 3; ++i) {
    const auto line = DirectedLine::through(edges[i].a, edges[i].b);
    const Side s = side_of_line(line, p);
    if (s == Side::ON) throw DegenerateGeometryError("point lies on a supporting line of the frame");
    // The corner off line i is where lines i+1 and i+2 meet.
    if (s != side_of_line(line, corners[(i + 1) % 3])) return false;
  }
  return true;
}

std::array<Segment, 3> triangle_frame_template() {
  return {Segment{{-2000, -1732}, {850, -87}}, Segment{{2500, -866}, {-350, 779}},
          Segment{{-500, 2598}, {-500, -693}}};
}

TriangleFrame make_triangle_frame(const std::array<Segment, 3>& edges) {
  for (const auto& s : edges) {
    for (const auto& p : {s.a, s.b}) {
      if (p.x > kFrameCoordinateLimit || p.x < -kFrameCoordinateLimit || p.y > kFrameCoordinateLimit ||
          p.y < -kFrameCoordinateLimit) {
        throw RangeError("frame coordinate outside the frame budget");
      }
    }
  }
  const DisjointMatching matching(std::vector<Segment>(edges.begin(), edges.end()));
  TriangleFrame frame{edges, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = edges[i];
    const auto& next = edges[(i + 1) % 3];
    const auto hit = line_hit(s, next);
    if (!hit) throw ValidationError("frame edges are parallel", {i, (i + 1) % 3});
    // Extending edge i must run into the interior of edge i+1.
    const bool inside_next = hit->u_num > 0 && hit->u_num < hit->den;
    const bool off_self = hit->t_num < 0 || hit->t_num > hit->den;
    if (!inside_next || !off_self) throw ValidationError("frame edges do not form the triangle pattern", {i});
    frame.corners[i] = hit_point(s, *hit);
  }
  if (!good_endpoints(matching).empty()) throw ValidationError("frame has a good endpoint");
  return frame;
}

TriangleFrame generate_triangle_frame(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coord> jitter(-60, 60);
  const auto base = triangle_frame_template();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto edges = base;
    for (auto& s : edges) {
      for (Point* p : {&s.a, &s.b}) {
        p->x += jitter(rng);
        p->y += jitter(rng);
      }
    }
    try {
      return make_triangle_frame(edges);
    } catch (const ValidationError&) {
    } catch (const DegenerateGeometryError&) {
    }
  }
  throw GenerationError("no valid triangle frame after 1000 attempts");
}

const char* to_string(FourthEdgeCase c) {
  switch (c) {
    case FourthEdgeCase::INSIDE_T: return "INSIDE_T";
    case FourthEdgeCase::ONE_IN_ONE_OUT: return "ONE_IN_ONE_OUT";
    case FourthEdgeCase::OUTSIDE_T: return "OUTSIDE_T";
  }
  return "?";
}

FourthEdgeCase classify_fourth_edge(const TriangleFrame& frame, const Segment& e) {
  for (std::size_t i = 0; i < 3; ++i) {
    IntersectionType type;
    try {
      type = classify_pair(frame.edges[i], e);
    } catch (const DegenerateGeometryError&) {
      throw ValidationError("fourth edge touches frame edge " + std::to_string(i), {i});
    }
    if (type != IntersectionType::DISJOINT) {
      throw ValidationError("fourth edge is not disjoint from frame edge " + std::to_string(i), {i});
    }
  }
  const int inside = int(frame.contains_strictly(e.a)) + int(frame.contains_strictly(e.b));
  switch (inside) {
    case 2: return FourthEdgeCase::INSIDE_T;
    case 1: return FourthEdgeCase::ONE_IN_ONE_OUT;
    default: return FourthEdgeCase::OUTSIDE_T;
  }
}

bool verify_appendix(const TriangleFrame& frame, const Segment& e) {
  classify_fourth_edge(frame, e);
  const DisjointMatching m({frame.edges[0], frame.edges[1], frame.edges[2], e});
  return good_endpoints(m).size() >= 2;
}

}  // namespace geocross
