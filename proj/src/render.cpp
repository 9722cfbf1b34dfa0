#include "geocross/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const GeometricGraph& g, const RenderOptions& options) {
  std::vector<std::string> edge_class(g.edge_count(), "edge");
  if (options.witness) {
    for (const auto& [ids, cls] : {std::pair{&options.witness->e1, "edge e1"}, std::pair{&options.witness->e2, "edge e2"}}) {
      for (std::size_t e : *ids) {
        if (e >= g.edge_count()) throw ArgumentError("witness edge index out of range");
        edge_class[e] = cls;
      }
    }
  }

  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (g.vertex_count() > 0) {
    min_x = max_x = static_cast<double>(g.points()[0].x);
    min_y = max_y = static_cast<double>(g.points()[0].y);
    for (const auto& p : g.points()) {
      min_x = std::min(min_x, static_cast<double>(p.x));
      max_x = std::max(max_x, static_cast<double>(p.x));
      min_y = std::min(min_y, static_cast<double>(p.y));
      max_y = std::max(max_y, static_cast<double>(p.y));
    }
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double margin = 0.05 * span;
  const double width = (max_x - min_x) + 2 * margin;
  const double height = (max_y - min_y) + 2 * margin;
  const double radius = 0.008 * span;
  const double stroke = 0.003 * span;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(min_x - margin) << ' ' << num(-max_y - margin)
      << ' ' << num(width) << ' ' << num(height) << "\">\n";
  out << "<style>\n"
      << ".edge{stroke:#555;stroke-width:" << num(stroke) << "}\n"
      << ".e1{stroke:#d62728;stroke-width:" << num(2 * stroke) << "}\n"
      << ".e2{stroke:#1f77b4;stroke-width:" << num(2 * stroke) << "}\n"
      << ".vertex{fill:#000}\n"
      << ".good{fill:#2ca02c}\n"
      << "</style>\n";
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto s = g.segment(e);
    out << "<line class=\"" << edge_class[e] << "\" x1=\"" << num(s.a.x) << "\" y1=\"" << num(-s.a.y) << "\" x2=\""
        << num(s.b.x) << "\" y2=\"" << num(-s.b.y) << "\"/>\n";
  }
  for (const auto& p : g.points()) {
    out << "<circle class=\"vertex\" cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y) << "\" r=\"" << num(radius)
        << "\"/>\n";
  }
  for (const auto& p : options.good_points) {
    out << "<circle class=\"good\" cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y) << "\" r=\"" << num(radius / 2)
        << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace geocross
