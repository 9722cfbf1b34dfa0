#pragma once

// Point generators and greedy construction of maximal pattern-free graphs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geocross/exact_geometry.hpp"
#include "geocross/graph_model.hpp"
#include "geocross/pattern_detect.hpp"

namespace geocross {

enum class GeneratorKind { RANDOM_DISK, CONVEX, PERTURBED_GRID };

const char* to_string(GeneratorKind k);
/// Accepts random-disk | convex | perturbed-grid (or the enum names).
GeneratorKind parse_generator_kind(std::string_view text);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::RANDOM_DISK;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  Coord coordinate_scale = 10'000;
};

/// n integer points in general position (CONVEX: in strictly convex
/// position). Deterministic in the spec. Throws ArgumentError for n < 2 or a
/// scale outside [1, kCoordinateLimit / 2], GenerationError when rejection
/// sampling gives up.
std::vector<Point> generate_points(const GeneratorSpec& spec);

/// True iff every point is a vertex of the convex hull with no three
/// collinear hull points.
bool in_convex_position(std::span<const Point> points);

struct ExperimentRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string query;
  std::size_t edges = 0;
  bool maximal = false;
  /// OK | BUDGET | RECHECK_FAILED | RECHECK_BUDGET | ERROR: message
  std::string status;
  double elapsed_ms = 0.0;
};

struct MaximalResult {
  GeometricGraph graph;
  ExperimentRecord record;
};

/// Greedy insertion of every vertex pair in seeded random order. A candidate
/// is kept iff the detector reports NONE with the candidate present; BUDGET
/// rejects it and clears `maximal`. The result is rechecked from scratch.
MaximalResult maximal_pattern_free(std::span<const Point> points, const ForbiddenQuery& query, std::uint64_t seed,
                                   const SearchBudget& budget = {});

struct ExperimentOutcome {
  ExperimentRecord record;
  GeometricGraph graph;  // empty on error
};

/// Seed of trial `trial` at size `n`, derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::size_t trial);

/// One record per (n, trial), sorted by (n, trial). Errors are reported in
/// the record's status; the run continues. `base.n` and `base.seed` are
/// ignored.
std::vector<ExperimentOutcome> growth_experiment(const GeneratorSpec& base, const ForbiddenQuery& query,
                                                 std::span<const std::size_t> n_values, std::size_t trials,
                                                 std::uint64_t master_seed, const SearchBudget& budget = {});

inline constexpr const char* kCsvHeader = "n,trial,seed,query,edges,maximal,status,elapsed_ms";

/// Header plus one row per record.
void write_csv(std::ostream& out, std::span<const ExperimentRecord> records);

}  // namespace geocross
