#pragma once

// Witness search for the forbidden substructures of geometric graphs:
// k pairwise crossing edges, k pairwise disjoint edges, (k,l)-crossing
// families, natural (k,l)-grids and three-edge matchings of a given
// intersection pattern.
//
// All searches are exact. NONE is only reported after the search tree was
// exhausted; hitting the node or time limit yields BUDGET instead.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geocross/graph_model.hpp"

namespace geocross {

enum class SearchStatus { FOUND, NONE, BUDGET };

const char* to_string(SearchStatus s);

struct SearchBudget {
  std::uint64_t node_limit = 1'000'000;
  std::optional<std::chrono::milliseconds> deadline;
};

enum class WitnessKind { PAIRWISE_CROSSING, DISJOINT_MATCHING, CROSSING_FAMILY, NATURAL_GRID, CIRCLE3 };

const char* to_string(WitnessKind k);

/// CROSSING_FAMILY: e1, e2 pairwise crossing, every e1-e2 pair disjoint.
/// NATURAL_GRID: e1, e2 pairwise disjoint, every e1-e2 pair crossing.
/// PAIRWISE_CROSSING / DISJOINT_MATCHING: e1 only.
/// CIRCLE3: three edges split as the pattern dictates (see find_matching_with_pattern).
struct FamilyWitness {
  WitnessKind kind = WitnessKind::CROSSING_FAMILY;
  std::vector<std::size_t> e1;
  std::vector<std::size_t> e2;
  std::optional<CircleGraphPattern3> pattern;

  friend bool operator==(const FamilyWitness&, const FamilyWitness&) = default;
};

struct DetectResult {
  SearchStatus status = SearchStatus::NONE;
  FamilyWitness witness;
  std::uint64_t nodes_explored = 0;

  bool found() const { return status == SearchStatus::FOUND; }
};

/// What to look for. Parsed from / printed as the CLI grammar
/// crossing-family:K,L | grid:K,L | pairwise-crossing:K | disjoint-matching:K |
/// circle3:{k3|empty|grid21|family21}.
struct ForbiddenQuery {
  WitnessKind kind = WitnessKind::CROSSING_FAMILY;
  std::size_t k = 1;
  std::size_t l = 1;
  CircleGraphPattern3 pattern = CircleGraphPattern3::TRIPLE_CROSSING;

  static ForbiddenQuery parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const ForbiddenQuery&, const ForbiddenQuery&) = default;
};

// `anchor`, when given, restricts the search to witnesses that contain that
// edge. The harness uses it to test a freshly inserted edge only.

DetectResult find_pairwise_crossing(const IntersectionMatrix& m, std::size_t k, const SearchBudget& budget = {},
                                    std::optional<std::size_t> anchor = std::nullopt);

DetectResult find_disjoint_matching(const IntersectionMatrix& m, std::size_t k, const SearchBudget& budget = {},
                                    std::optional<std::size_t> anchor = std::nullopt);

DetectResult find_crossing_family(const IntersectionMatrix& m, std::size_t k, std::size_t l,
                                  const SearchBudget& budget = {}, std::optional<std::size_t> anchor = std::nullopt);

DetectResult find_natural_grid(const IntersectionMatrix& m, std::size_t k, std::size_t l,
                               const SearchBudget& budget = {}, std::optional<std::size_t> anchor = std::nullopt);

/// For FAMILY_21, e1 holds the crossing pair and e2 the third edge; for
/// GRID_21, e1 holds the disjoint pair and e2 the edge crossing both; for the
/// symmetric patterns all three edges are in e1.
DetectResult find_matching_with_pattern(const IntersectionMatrix& m, CircleGraphPattern3 pattern,
                                        const SearchBudget& budget = {},
                                        std::optional<std::size_t> anchor = std::nullopt);

DetectResult detect(const IntersectionMatrix& m, const ForbiddenQuery& query, const SearchBudget& budget = {},
                    std::optional<std::size_t> anchor = std::nullopt);

bool verify_witness(const IntersectionMatrix& m, const FamilyWitness& w);

/// True iff `w` is a valid witness of exactly the shape `query` asks for.
bool witness_matches_query(const IntersectionMatrix& m, const FamilyWitness& w, const ForbiddenQuery& query);

inline constexpr std::uint64_t kOracleSubsetCap = 10'000'000;

/// Ground truth by enumerating every index subset in lexicographic order.
/// Throws SizeError when C(edge_count, subset size) exceeds kOracleSubsetCap.
DetectResult exhaustive_oracle(const IntersectionMatrix& m, const ForbiddenQuery& query);

}  // namespace geocross
