#pragma once

// JSON documents: graphs (with an optional explicit intersection matrix),
// point-set pairs, and the machine payloads of every CLI command.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "geocross/good_vertex.hpp"
#include "geocross/graph_model.hpp"
#include "geocross/partition.hpp"
#include "geocross/pattern_detect.hpp"

namespace geocross {

using Json = nlohmann::ordered_json;

/// {"points":[[x,y],...],"edges":[[u,v],...]} with an optional
/// "matrix":{"edge_count":E,"pairs":[[i,j,"CROSS"|"DISJOINT"|"SHARE_ENDPOINT"],...]}.
/// A document with a matrix may omit points and edges (topological input).
struct GraphDocument {
  std::optional<GeometricGraph> graph;
  std::optional<IntersectionMatrix> matrix;

  /// The explicit matrix if present, otherwise the one computed from the graph.
  IntersectionMatrix intersection_matrix() const;
  /// Throws ParseError when the document has no geometry.
  const GeometricGraph& geometry() const;
};

/// Throws ParseError on malformed JSON or a wrong shape, and the graph
/// constructor's RangeError/ValidationError on invalid geometry.
GraphDocument parse_graph(std::string_view text);
/// Throws ParseError when the file cannot be read.
GraphDocument load_graph(const std::string& path);
std::string read_file(const std::string& path);

std::vector<Point> parse_points(const Json& array);

Json to_json(const Point& p);
Json to_json(const GeometricGraph& g);
Json to_json(const Rational& r);
Json to_json(const DirectedLine& line);
Json to_json(const DetectResult& r);
Json to_json(const HalvingState& s);
Json to_json(const RotationResult& r);
Json to_json(const HamSandwichCut& cut);
Json to_json(const PartitionTree& tree);
Json good_report(const DisjointMatching& m);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace geocross
