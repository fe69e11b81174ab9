#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdtree/core.hpp"

namespace kdtree {

/// Tuple indices ordered (or to be ordered) by one super key.
struct IndexArray {
  std::vector<TupleIndex> indices;
  SuperKeyOrder order;

  std::size_t size() const noexcept { return indices.size(); }
};

/// Below this length merge sort hands runs to a stable insertion sort.
inline constexpr std::size_t kInsertionSortCutoff = 15;

/*
 * Stable merge sort of the identity permutation [0, n) under
 * SuperKeyOrder(leading). Identical tuples keep ascending index order.
 * A thread budget above one recurses on the two halves concurrently.
 */
IndexArray mergeSortIndices(const PointSet& points, std::size_t leading, std::size_t threads = 1);

/// Stable merge sort of an arbitrary index range in place.
void mergeSortRange(const PointSet& points, std::span<TupleIndex> range, SuperKeyOrder order,
                    std::size_t threads = 1);

/*
 * Drops every index that references a tuple identical to its predecessor,
 * so the smallest index of each run of identical tuples survives in every
 * array. Returns how many tuples were removed. Arrays must be of equal
 * length and sorted by their own order with ascending-index ties.
 */
std::size_t removeDuplicates(std::span<IndexArray> arrays, const PointSet& points);

}  // namespace kdtree
