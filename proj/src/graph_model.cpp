#include "geocross/graph_model.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "geocross/errors.hpp"

namespace geocross {

GeometricGraph::GeometricGraph(std::vector<Point> points, std::vector<Edge> edges)
    : points_(std::move(points)), edges_(std::move(edges)) {
  for (const auto& p : points_) check_coordinate_budget(p);
  if (auto report = validate_general_position(points_); !report.ok()) {
    throw ValidationError(report.describe(), report.indices);
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& edge = edges_[e];
    if (edge.u >= points_.size() || edge.v >= points_.size()) {
      throw ValidationError("edge " + std::to_string(e) + " references a missing vertex", {e});
    }
    if (edge.u == edge.v) throw ValidationError("edge " + std::to_string(e) + " is a self-loop", {e});
    if (edge.u > edge.v) std::swap(edge.u, edge.v);
  }
  std::vector<std::size_t> order(edges_.size());
  for (std::size_t e = 0; e < order.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(edges_[a], a) < std::pair(edges_[b], b);
  });
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    if (edges_[order[k]] == edges_[order[k + 1]]) {
      std::ostringstream msg;
      msg << "duplicate edge " << edges_[order[k]].u << "-" << edges_[order[k]].v;
      throw ValidationError(msg.str(), {order[k], order[k + 1]});
    }
  }
}

IntersectionMatrix IntersectionMatrix::from_graph(const GeometricGraph& g) {
  IntersectionMatrix m;
  const std::size_t count = g.edge_count();
  m.cross_.assign(count, EdgeSet(count));
  m.disjoint_.assign(count, EdgeSet(count));
  std::vector<Segment> segments(count);
  for (std::size_t i = 0; i < count; ++i) segments[i] = g.segment(i);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      switch (classify_pair(segments[i], segments[j])) {
        case IntersectionType::CROSS:
          m.cross_[i].set(j);
          m.cross_[j].set(i);
          break;
        case IntersectionType::DISJOINT:
          m.disjoint_[i].set(j);
          m.disjoint_[j].set(i);
          break;
        case IntersectionType::SHARE_ENDPOINT:
          break;
      }
    }
  }
  return m;
}

IntersectionMatrix IntersectionMatrix::from_pairs(std::size_t edge_count, std::span<const PairEntry> pairs) {
  IntersectionMatrix m;
  m.provenance_ = Provenance::TOPOLOGICAL;
  m.cross_.assign(edge_count, EdgeSet(edge_count));
  m.disjoint_.assign(edge_count, EdgeSet(edge_count));
  EdgeSet seen(edge_count * edge_count);
  for (const auto& [i, j, type] : pairs) {
    if (i >= edge_count || j >= edge_count) throw ValidationError("matrix pair index out of range", {i, j});
    if (i == j) throw ValidationError("matrix pair relates an edge to itself", {i, j});
    const std::size_t key = std::min(i, j) * edge_count + std::max(i, j);
    if (seen.test(key)) throw ValidationError("matrix pair listed twice", {i, j});
    seen.set(key);
    if (type == IntersectionType::CROSS) {
      m.cross_[i].set(j);
      m.cross_[j].set(i);
    } else if (type == IntersectionType::DISJOINT) {
      m.disjoint_[i].set(j);
      m.disjoint_[j].set(i);
    }
  }
  const std::size_t expected = edge_count * (edge_count - (edge_count > 0 ? 1 : 0)) / 2;
  if (pairs.size() != expected) throw ValidationError("matrix does not list every edge pair");
  return m;
}

IntersectionType IntersectionMatrix::at(std::size_t i, std::size_t j) const {
  if (cross_[i].test(j)) return IntersectionType::CROSS;
  if (disjoint_[i].test(j)) return IntersectionType::DISJOINT;
  return IntersectionType::SHARE_ENDPOINT;
}

void IntersectionMatrix::append_edge(std::span<const IntersectionType> row) {
  const std::size_t e = edge_count();
  if (row.size() != e) throw ArgumentError("appended row must classify every existing edge");
  for (std::size_t j = 0; j < e; ++j) {
    cross_[j].resize(e + 1);
    disjoint_[j].resize(e + 1);
  }
  EdgeSet cross_row(e + 1), disjoint_row(e + 1);
  for (std::size_t j = 0; j < e; ++j) {
    if (row[j] == IntersectionType::CROSS) {
      cross_row.set(j);
      cross_[j].set(e);
    } else if (row[j] == IntersectionType::DISJOINT) {
      disjoint_row.set(j);
      disjoint_[j].set(e);
    }
  }
  cross_.push_back(std::move(cross_row));
  disjoint_.push_back(std::move(disjoint_row));
}

void IntersectionMatrix::pop_edge() {
  if (cross_.empty()) throw ArgumentError("pop_edge on an empty matrix");
  cross_.pop_back();
  disjoint_.pop_back();
  const std::size_t e = cross_.size();
  for (std::size_t j = 0; j < e; ++j) {
    cross_[j].resize(e);
    disjoint_[j].resize(e);
  }
}

IntersectionMatrix build_intersection_matrix(const GeometricGraph& g) {
  return IntersectionMatrix::from_graph(g);
}

const char* to_string(CircleGraphPattern3 p) {
  switch (p) {
    case CircleGraphPattern3::TRIPLE_CROSSING: return "TRIPLE_CROSSING";
    case CircleGraphPattern3::TRIPLE_DISJOINT: return "TRIPLE_DISJOINT";
    case CircleGraphPattern3::GRID_21: return "GRID_21";
    case CircleGraphPattern3::FAMILY_21: return "FAMILY_21";
  }
  return "?";
}

const char* label(CircleGraphPattern3 p) {
  switch (p) {
    case CircleGraphPattern3::TRIPLE_CROSSING: return "k3";
    case CircleGraphPattern3::TRIPLE_DISJOINT: return "empty";
    case CircleGraphPattern3::GRID_21: return "grid21";
    case CircleGraphPattern3::FAMILY_21: return "family21";
  }
  return "?";
}

std::optional<CircleGraphPattern3> parse_pattern_label(std::string_view text) {
  for (auto p : {CircleGraphPattern3::TRIPLE_CROSSING, CircleGraphPattern3::TRIPLE_DISJOINT,
                 CircleGraphPattern3::GRID_21, CircleGraphPattern3::FAMILY_21}) {
    if (text == label(p) || text == to_string(p)) return p;
  }
  return std::nullopt;
}

std::size_t MatchingGraph::link_count() const {
  std::size_t links = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) links += adjacent[i][j] ? 1 : 0;
  }
  return links;
}

std::vector<std::size_t> MatchingGraph::degrees() const {
  std::vector<std::size_t> deg(edges.size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = 0; j < edges.size(); ++j) deg[i] += (i != j && adjacent[i][j]) ? 1 : 0;
  }
  return deg;
}

MatchingGraph matching_intersection_graph(const IntersectionMatrix& m, std::span<const std::size_t> edge_ids) {
  MatchingGraph g;
  g.edges.assign(edge_ids.begin(), edge_ids.end());
  const std::size_t k = g.edges.size();
  g.adjacent.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto type = m.at(g.edges[a], g.edges[b]);
      if (type == IntersectionType::SHARE_ENDPOINT) {
        throw ValidationError("not a matching: edges share an endpoint", {g.edges[a], g.edges[b]});
      }
      g.adjacent[a][b] = g.adjacent[b][a] = (type == IntersectionType::CROSS);
    }
  }
  return g;
}

CircleGraphPattern3 classify_pattern3(const MatchingGraph& g) {
  if (g.edges.size() != 3) throw ArgumentError("pattern classification needs exactly three edges");
  auto deg = g.degrees();
  std::sort(deg.begin(), deg.end());
  switch (g.link_count()) {
    case 3: return CircleGraphPattern3::TRIPLE_CROSSING;  // degrees 2,2,2
    case 0: return CircleGraphPattern3::TRIPLE_DISJOINT;  // 0,0,0
    case 2: return CircleGraphPattern3::GRID_21;          // 1,1,2
    default: break;
  }
  if (deg != std::vector<std::size_t>{0, 1, 1}) throw InternalError("impossible degree sequence");
  return CircleGraphPattern3::FAMILY_21;
}

}  // namespace geocross
