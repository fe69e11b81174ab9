#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "kdtree/build_presort.hpp"
#include "kdtree/core.hpp"

namespace kdtree {

/// Group size for the medians-of-medians pivot.
inline constexpr std::size_t kSelectionGroupSize = 5;
/// Ranges at or below this length are insertion sorted instead of selected.
inline constexpr std::size_t kSelectionCutoff = 15;

struct SelectionStats {
  std::uint64_t comparisons = 0;
};

/*
 * Builds a balanced k-d tree from a single index array: one merge sort and
 * duplicate pass, then at every level a worst-case linear selection of the
 * lower median under that level's super key. Produces the same tree as
 * buildPresort for the same input.
 */
KdTree buildMedian(const PointSet& points, std::size_t threads = 1, BuildStats* stats = nullptr);

/*
 * Rearranges range so the element of the given rank sits at that position,
 * everything before it compares Less and everything after compares Greater.
 * Uses medians of five-element groups as the pivot, so the number of
 * comparisons is linear in range.size() for every input order.
 */
std::size_t selectRank(const PointSet& points, std::span<TupleIndex> range, std::size_t rank,
                       SuperKeyOrder order, SelectionStats* stats = nullptr);

/// selectRank at the lower median (range.size() - 1) / 2; returns that position.
std::size_t selectMedian(const PointSet& points, std::span<TupleIndex> range, SuperKeyOrder order,
                         SelectionStats* stats = nullptr);

/// Stable insertion sort for short ranges.
void insertionSortSmall(const PointSet& points, std::span<TupleIndex> range, SuperKeyOrder order,
                        SelectionStats* stats = nullptr);

/*
 * Subtree for an unsorted range of one to three indices. The range is
 * sorted first, so a pair becomes a node holding the smaller tuple with the
 * larger one as its greaterThan child, matching the presort builder.
 */
std::size_t terminateSmallMedian(const PointSet& points, std::span<TupleIndex> range,
                                 std::size_t baseSlot, std::span<KdNode> nodes,
                                 SuperKeyOrder order);

}  // namespace kdtree
