#pragma once

// Halving lines, the rotating halving line, discrete ham-sandwich cuts and the
// recursive four-quadrant decomposition built from them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "geocross/exact_geometry.hpp"
#include "geocross/graph_model.hpp"

namespace geocross {

/// A line through two input points (`pivot`, `partner`) with (n-2)/2 points
/// strictly on each side, plus the edge counts on either open side.
struct HalvingState {
  DirectedLine line;
  std::size_t pivot = 0;
  std::size_t partner = 0;
  std::size_t e_left = 0;
  std::size_t e_right = 0;
  /// Number of rotation events processed when this state was reached.
  std::size_t step = 0;

  friend bool operator==(const HalvingState&, const HalvingState&) = default;
};

/// First pair (0, v) with the smallest v whose line halves the points.
/// Throws ArgumentError when n is odd or below 2.
std::pair<std::size_t, std::size_t> find_halving_edge(std::span<const Point> points);
std::pair<std::size_t, std::size_t> find_halving_edge(const GeometricGraph& g);

struct RotationResult {
  /// Every halving line met during a half-turn, starting and ending on the
  /// initial halving pair (in opposite directions).
  std::vector<HalvingState> trace;
  /// First trace entry with |e_left - e_right| <= 2n.
  std::size_t balanced_index = 0;
  /// Total number of vertex events, halving or not.
  std::size_t events = 0;

  const HalvingState& balanced() const { return trace.at(balanced_index); }
};

RotationResult rotate_to_balance(std::span<const Point> points, std::span<const Edge> edges);
RotationResult rotate_to_balance(const GeometricGraph& g);

/// Splits point indices by a halving state: the first class is the open left
/// side plus the pivot, the second the open right side plus the partner.
std::array<std::vector<std::size_t>, 2> split_by_halving(std::span<const Point> points, const HalvingState& state);

struct SideCounts {
  std::size_t left = 0;
  std::size_t on = 0;
  std::size_t right = 0;

  friend bool operator==(const SideCounts&, const SideCounts&) = default;
};

SideCounts count_sides(const DirectedLine& line, std::span<const Point> points);

struct HamSandwichCut {
  DirectedLine line;
  std::array<SideCounts, 2> counts;
};

/// True iff neither open side of the cut holds more than half of either set.
bool is_bisecting(const HamSandwichCut& cut, std::size_t size1, std::size_t size2);

/// Exhaustive search over lines through two points of v2 ++ v1 (pairs in
/// lexicographic index order), keeping the first valid cut with the least
/// total imbalance. Throws InternalError if none is
/// valid (impossible for general-position input).
HamSandwichCut ham_sandwich(std::span<const Point> v1, std::span<const Point> v2);

/// Parallel translate of `cut` that minimizes max(edges fully left, edges
/// fully right) over `crossing_edges`; ties go to the translate furthest
/// toward the left side. The returned line avoids every point of `points`.
/// Returns `cut` itself when there are no crossing edges or when `cut` is
/// parallel to `halving`.
DirectedLine translate_balance(const DirectedLine& halving, const DirectedLine& cut,
                               std::span<const Edge> crossing_edges, std::span<const Point> points);

enum class DiscardReason { LEFT_OF_L, RIGHT_OF_L, SAME_SIDE_OF_CUT, BETWEEN_CHILDREN, ODD_VERTEX_DROP };

inline constexpr std::size_t kDiscardReasonCount = 5;

const char* to_string(DiscardReason r);

/// Quadrant order: V11 (first class, left of cut), V12 (first, right),
/// V21 (second, left), V22 (second, right).
struct PartitionSplit {
  DirectedLine halving_line;
  DirectedLine cut_line;
  std::optional<std::size_t> dropped_vertex;
  std::array<std::vector<std::size_t>, 4> quadrants;
  std::array<std::vector<std::size_t>, kDiscardReasonCount> discarded;
};

struct PartitionNode {
  std::vector<std::size_t> vertices;  // global vertex ids, ascending
  std::vector<std::size_t> edges;     // global edge ids with both ends in `vertices`
  std::optional<PartitionSplit> split;
  std::vector<PartitionNode> children;  // empty or {V11 ∪ V22, V12 ∪ V21}

  std::size_t depth() const;
};

struct PartitionTree {
  PartitionNode root;
  std::size_t leaf_size = 2;

  std::size_t depth() const { return root.depth(); }
  /// Discarded edge totals per reason over the whole tree.
  std::array<std::size_t, kDiscardReasonCount> discard_totals() const;
  /// Edges that end up inside leaves.
  std::size_t leaf_edge_count() const;
};

/// Throws ArgumentError when leaf_size < 2.
PartitionTree decompose(const GeometricGraph& g, std::size_t leaf_size);

/// log_{4/3}(n) * (4 * exl(2n) + 6n), unrounded. Throws ArgumentError for n < 2.
double recurrence_bound_value(std::uint64_t n, const std::function<std::uint64_t(std::uint64_t)>& exl);
/// The same value rounded up.
std::uint64_t recurrence_bound(std::uint64_t n, const std::function<std::uint64_t(std::uint64_t)>& exl);

}  // namespace geocross
