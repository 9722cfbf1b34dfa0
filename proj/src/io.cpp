#include "geocross/io.hpp"

#include <fstream>
#include <sstream>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::int64_t as_int(const Json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return v.get<std::int64_t>();
}

std::size_t as_index(const Json& v, const char* what) {
  const auto value = as_int(v, what);
  if (value < 0) throw ParseError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(value);
}

const Json& as_array(const Json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
  return v;
}

Json index_list(const std::vector<std::size_t>& ids) {
  Json out = Json::array();
  for (auto i : ids) out.push_back(i);
  return out;
}

Json node_to_json(const PartitionNode& node) {
  Json j;
  j["vertices"] = index_list(node.vertices);
  j["edges"] = node.edges.size();
  if (node.split) {
    const auto& s = *node.split;
    Json split;
    split["halving_line"] = to_json(s.halving_line);
    split["cut_line"] = to_json(s.cut_line);
    split["dropped_vertex"] = s.dropped_vertex ? Json(*s.dropped_vertex) : Json(nullptr);
    split["quadrants"] = {{"V11", index_list(s.quadrants[0])},
                          {"V12", index_list(s.quadrants[1])},
                          {"V21", index_list(s.quadrants[2])},
                          {"V22", index_list(s.quadrants[3])}};
    Json discards = Json::object();
    for (std::size_t r = 0; r < kDiscardReasonCount; ++r) {
      discards[to_string(static_cast<DiscardReason>(r))] = s.discarded[r].size();
    }
    split["discarded"] = discards;
    j["split"] = split;
  }
  Json kids = Json::array();
  for (const auto& c : node.children) kids.push_back(node_to_json(c));
  j["children"] = kids;
  return j;
}

}  // namespace

IntersectionMatrix GraphDocument::intersection_matrix() const {
  if (matrix) return *matrix;
  if (graph) return build_intersection_matrix(*graph);
  return {};
}

const GeometricGraph& GraphDocument::geometry() const {
  if (!graph) throw ParseError("document has no points/edges");
  return *graph;
}

std::vector<Point> parse_points(const Json& array) {
  std::vector<Point> points;
  for (const auto& p : as_array(array, "points")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("a point must be [x, y]");
    points.push_back({as_int(p[0], "coordinate"), as_int(p[1], "coordinate")});
  }
  return points;
}

GraphDocument parse_graph(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ParseError("graph document must be a JSON object");

  GraphDocument out;
  if (doc.contains("points") || !doc.contains("matrix")) {
    auto points = parse_points(require(doc, "points"));
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
      for (const auto& e : as_array(doc.at("edges"), "edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("an edge must be [u, v]");
        edges.push_back({as_index(e[0], "vertex index"), as_index(e[1], "vertex index")});
      }
    }
    out.graph = GeometricGraph(std::move(points), std::move(edges));
  }
  if (doc.contains("matrix")) {
    const auto& m = doc.at("matrix");
    const std::size_t count = as_index(require(m, "edge_count"), "edge_count");
    std::vector<PairEntry> pairs;
    for (const auto& p : as_array(require(m, "pairs"), "pairs")) {
      if (!p.is_array() || p.size() != 3 || !p[2].is_string()) throw ParseError("a pair must be [i, j, TYPE]");
      const auto type = parse_intersection_type(p[2].get<std::string>());
      if (!type) throw ParseError("unknown intersection type '" + p[2].get<std::string>() + "'");
      pairs.push_back({as_index(p[0], "edge index"), as_index(p[1], "edge index"), *type});
    }
    if (out.graph && out.graph->edge_count() != count) {
      throw ValidationError("matrix edge_count does not match the edge list");
    }
    out.matrix = IntersectionMatrix::from_pairs(count, pairs);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphDocument load_graph(const std::string& path) { return parse_graph(read_file(path)); }

Json to_json(const Point& p) { return Json::array({p.x, p.y}); }

Json to_json(const GeometricGraph& g) {
  Json points = Json::array(), edges = Json::array();
  for (const auto& p : g.points()) points.push_back(to_json(p));
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.u, e.v}));
  return {{"points", points}, {"edges", edges}};
}

Json to_json(const Rational& r) { return Json::array({r.num, r.den}); }

Json to_json(const DirectedLine& line) {
  return {{"origin", Json::array({to_json(line.origin.x), to_json(line.origin.y)})},
          {"direction", Json::array({line.direction.x, line.direction.y})}};
}

Json to_json(const DetectResult& r) {
  Json j;
  j["found"] = r.found();
  j["kind"] = to_string(r.witness.kind);
  if (r.witness.pattern) j["pattern"] = label(*r.witness.pattern);
  j["e1"] = index_list(r.witness.e1);
  j["e2"] = index_list(r.witness.e2);
  j["nodes_explored"] = r.nodes_explored;
  j["status"] = to_string(r.status);
  return j;
}

Json to_json(const HalvingState& s) {
  return {{"line", to_json(s.line)}, {"pivot", s.pivot},     {"partner", s.partner},
          {"e_left", s.e_left},      {"e_right", s.e_right}, {"step", s.step}};
}

Json to_json(const RotationResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace) trace.push_back(to_json(s));
  return {{"balanced", to_json(r.balanced())},
          {"balanced_index", r.balanced_index},
          {"events", r.events},
          {"trace", trace}};
}

Json to_json(const HamSandwichCut& cut) {
  Json counts = Json::array();
  for (const auto& c : cut.counts) counts.push_back({{"left", c.left}, {"on", c.on}, {"right", c.right}});
  return {{"line", to_json(cut.line)}, {"counts", counts}};
}

Json to_json(const PartitionTree& tree) {
  Json totals = Json::object();
  const auto t = tree.discard_totals();
  for (std::size_t r = 0; r < kDiscardReasonCount; ++r) totals[to_string(static_cast<DiscardReason>(r))] = t[r];
  return {{"leaf_size", tree.leaf_size},
          {"depth", tree.depth()},
          {"discarded", totals},
          {"leaf_edges", tree.leaf_edge_count()},
          {"root", node_to_json(tree.root)}};
}

Json good_report(const DisjointMatching& m) {
  Json good = Json::array();
  const auto endpoints = good_endpoints(m);
  for (const auto& e : endpoints) good.push_back(Json::array({e.edge, e.end}));
  Json j{{"edges", m.size()}, {"good", good}, {"good_count", endpoints.size()}};
  j["lemma_holds"] = m.size() >= 4 ? Json(check_lama(m)) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace geocross
