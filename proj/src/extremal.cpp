#include "geocross/extremal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "geocross/errors.hpp"

namespace geocross {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Accepts p if it is distinct from and not collinear with any pair of `pts`.
bool keeps_general_position(const std::vector<Point>& pts, const Point& p) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == p) return false;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (orientation(pts[i], pts[j], p) == Orientation::COLLINEAR) return false;
    }
  }
  return true;
}

std::vector<Point> random_disk(const GeneratorSpec& spec, std::mt19937_64& rng) {
  std::uniform_int_distribution<Coord> coord(-spec.coordinate_scale, spec.coordinate_scale);
  const Wide r2 = Wide(spec.coordinate_scale) * spec.coordinate_scale;
  std::vector<Point> pts;
  while (pts.size() < spec.n) {
    bool placed = false;
    for (int attempt = 0; attempt < 10'000 && !placed; ++attempt) {
      const Point p{coord(rng), coord(rng)};
      if (Wide(p.x) * p.x + Wide(p.y) * p.y > r2) continue;
      if (!keeps_general_position(pts, p)) continue;
      pts.push_back(p);
      placed = true;
    }
    if (!placed) throw GenerationError("random disk sampling ran out of attempts");
  }
  return pts;
}

std::vector<Point> convex(const GeneratorSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = static_cast<double>(spec.coordinate_scale);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> angles(spec.n);
    for (auto& a : angles) a = 2.0 * std::numbers::pi * unit(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Point> pts;
    for (double a : angles) {
      pts.push_back({std::llround(radius * std::cos(a)), std::llround(radius * std::sin(a))});
    }
    if (in_convex_position(pts)) return pts;
  }
  throw GenerationError("convex sampling ran out of attempts");
}

std::vector<Point> perturbed_grid(const GeneratorSpec& spec, std::mt19937_64& rng) {
  const auto side = static_cast<Coord>(std::ceil(std::sqrt(static_cast<double>(spec.n))));
  const Coord spacing = std::max<Coord>(1, 2 * spec.coordinate_scale / std::max<Coord>(1, side));
  std::vector<Point> grid;
  for (Coord k = 0; k < static_cast<Coord>(spec.n); ++k) {
    grid.push_back({-spec.coordinate_scale + (k % side) * spacing, -spec.coordinate_scale + (k / side) * spacing});
  }
  const Coord magnitude = std::max<Coord>(1, spacing / 8);
  return perturb(grid, rng(), magnitude);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::RANDOM_DISK: return "random-disk";
    case GeneratorKind::CONVEX: return "convex";
    case GeneratorKind::PERTURBED_GRID: return "perturbed-grid";
  }
  return "?";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "random-disk" || text == "RANDOM_DISK") return GeneratorKind::RANDOM_DISK;
  if (text == "convex" || text == "CONVEX") return GeneratorKind::CONVEX;
  if (text == "perturbed-grid" || text == "PERTURBED_GRID") return GeneratorKind::PERTURBED_GRID;
  throw ArgumentError("unknown generator '" + std::string(text) + "'");
}

bool in_convex_position(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (!validate_general_position(points).ok()) return false;
  if (n <= 3) return true;
  // Monotone chain with strict turns; convex position iff every point is on the hull.
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], pts[i]) != Orientation::CCW) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orientation(hull[k - 2], hull[k - 1], pts[i]) != Orientation::CCW) --k;
    hull[k++] = pts[i];
  }
  return k - 1 == n;
}

std::vector<Point> generate_points(const GeneratorSpec& spec) {
  if (spec.n < 2) throw ArgumentError("point generation needs n >= 2");
  if (spec.coordinate_scale < 1 || spec.coordinate_scale > kCoordinateLimit / 2) {
    throw ArgumentError("coordinate scale out of range");
  }
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::RANDOM_DISK: return random_disk(spec, rng);
    case GeneratorKind::CONVEX: return convex(spec, rng);
    case GeneratorKind::PERTURBED_GRID: return perturbed_grid(spec, rng);
  }
  throw InternalError("unhandled generator kind");
}

MaximalResult maximal_pattern_free(std::span<const Point> points, const ForbiddenQuery& query, std::uint64_t seed,
                                   const SearchBudget& budget) {
  const auto start = std::chrono::steady_clock::now();
  // Validates the point set before any work.
  (void)GeometricGraph(std::vector<Point>(points.begin(), points.end()), {});

  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) pairs.push_back({i, j});
  }
  std::mt19937_64 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);

  IntersectionMatrix matrix;
  std::vector<Edge> kept;
  std::vector<Segment> segments;
  std::vector<IntersectionType> row;
  bool maximal = true;
  for (const auto& e : pairs) {
    const Segment s{points[e.u], points[e.v]};
    row.clear();
    for (const auto& other : segments) row.push_back(classify_pair(s, other));
    matrix.append_edge(row);
    const auto result = detect(matrix, query, budget, matrix.edge_count() - 1);
    if (result.status == SearchStatus::NONE) {
      kept.push_back(e);
      segments.push_back(s);
    } else {
      matrix.pop_edge();
      if (result.status == SearchStatus::BUDGET) maximal = false;
    }
  }

  MaximalResult out{GeometricGraph(std::vector<Point>(points.begin(), points.end()), kept), {}};
  auto& rec = out.record;
  rec.n = points.size();
  rec.seed = seed;
  rec.query = query.to_string();
  rec.edges = kept.size();
  rec.maximal = maximal;
  const auto recheck = detect(build_intersection_matrix(out.graph), query, budget);
  switch (recheck.status) {
    case SearchStatus::NONE: rec.status = maximal ? "OK" : "BUDGET"; break;
    case SearchStatus::FOUND: rec.status = "RECHECK_FAILED"; break;
    case SearchStatus::BUDGET: rec.status = "RECHECK_BUDGET"; break;
  }
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) {
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ trial);
}

std::vector<ExperimentOutcome> growth_experiment(const GeneratorSpec& base, const ForbiddenQuery& query,
                                                 std::span<const std::size_t> n_values, std::size_t trials,
                                                 std::uint64_t master_seed, const SearchBudget& budget) {
  if (n_values.empty()) throw ArgumentError("growth experiment needs at least one n");
  if (trials < 1) throw ArgumentError("growth experiment needs at least one trial");
  std::vector<std::size_t> sizes(n_values.begin(), n_values.end());
  std::sort(sizes.begin(), sizes.end());

  std::vector<ExperimentOutcome> outcomes;
  for (std::size_t n : sizes) {
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t seed = trial_seed(master_seed, n, t);
      ExperimentOutcome outcome;
      try {
        GeneratorSpec spec = base;
        spec.n = n;
        spec.seed = seed;
        const auto points = generate_points(spec);
        auto result = maximal_pattern_free(points, query, splitmix64(seed), budget);
        outcome.record = std::move(result.record);
        outcome.graph = std::move(result.graph);
      } catch (const Error& err) {
        outcome.record.status = std::string("ERROR: ") + err.what();
      }
      outcome.record.n = n;
      outcome.record.trial = t;
      outcome.record.seed = seed;
      outcome.record.query = query.to_string();
      outcomes.push_back(std::move(outcome));
    }
  }
  return outcomes;
}

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << csv_field(r.query) << ',' << r.edges << ','
        << (r.maximal ? "true" : "false") << ',' << csv_field(r.status) << ',' << format_ms(r.elapsed_ms) << '\n';
  }
}

}  // namespace geocross
