#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geocross/graph_model.hpp"
#include "geocross/pattern_detect.hpp"

namespace geocross {

struct RenderOptions {
  /// Witness edges get the classes "edge e1" / "edge e2".
  std::optional<FamilyWitness> witness;
  /// Points drawn as small "good" markers on top of the vertices.
  std::vector<Point> good_points;
};

/// Deterministic SVG scene: one `circle.vertex` per vertex, one `line.edge`
/// per edge, y axis pointing up. Throws ArgumentError when a witness index
/// is out of range.
std::string render_svg(const GeometricGraph& g, const RenderOptions& options = {});

}  // namespace geocross
