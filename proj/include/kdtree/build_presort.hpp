#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kdtree/core.hpp"
#include "kdtree/presort.hpp"

namespace kdtree {

/// Phase timings and counters collected by either builder.
struct BuildStats {
  double sortSeconds = 0.0;
  double dedupSeconds = 0.0;
  double buildSeconds = 0.0;
  std::size_t removedDuplicates = 0;
  /// Index-array element copies made while partitioning (excludes sorting).
  std::uint64_t elementCopies = 0;
};

/*
 * Builds a balanced k-d tree from k presorted index arrays. The arrays are
 * partitioned about the lower median of the current level's super key at
 * every recursion, which keeps each half sorted and avoids re-sorting.
 */
KdTree buildPresort(const PointSet& points, std::size_t threads = 1, BuildStats* stats = nullptr);

struct PartitionCounts {
  std::size_t lower = 0;
  std::size_t upper = 0;
};

/*
 * Copies source into dest split about pivot: Less elements to dest[0, m),
 * Greater elements to dest[m + 1, len) in encounter order, where
 * m = (len - 1) / 2. The one element equal to the pivot is skipped and
 * dest[m] is left untouched. Throws ContractViolation if the pivot is not
 * present exactly once or is not the lower median of source.
 */
PartitionCounts partitionAboutMedian(const PointSet& points, std::span<const TupleIndex> source,
                                     std::span<TupleIndex> dest, TupleIndex pivot,
                                     SuperKeyOrder order);

/*
 * The k index arrays plus one temporary array. At recursion depth d the
 * array in slot i is sorted by SuperKeyOrder((d + i) mod k) over every range
 * the recursion visits at that depth, so slot 0 always holds the current
 * level's order.
 */
class PresortWorkspace {
public:
  /// arrays[i] must be sorted by SuperKeyOrder(i) and hold the same index set.
  explicit PresortWorkspace(std::vector<IndexArray> arrays);

  std::size_t dimensions() const noexcept { return slots_.size(); }
  std::size_t size() const noexcept { return slots_.empty() ? 0 : slots_.front().size(); }

  std::span<TupleIndex> slot(std::size_t i) { return slots_.at(i); }
  std::span<const TupleIndex> slot(std::size_t i) const { return slots_.at(i); }
  std::span<TupleIndex> temporary() { return temp_; }

  static SuperKeyOrder slotOrder(std::size_t depth, std::size_t slot, std::size_t k) noexcept {
    return {(depth + slot) % k};
  }

private:
  std::vector<std::vector<TupleIndex>> slots_;
  std::vector<TupleIndex> temp_;
};

/*
 * One level of the cyclic reuse scheme over [lo, hi]: slot 0 is copied to
 * the temporary array, slot i is partitioned into slot i - 1 for i >= 1, and
 * the temporary array is copied into slot k - 1. Returns the pivot (the
 * lower median of slot 0 on entry). Adds the copies made to *copies.
 */
TupleIndex cycleWorkspace(const PointSet& points, PresortWorkspace& workspace, std::size_t lo,
                          std::size_t hi, SuperKeyOrder order, std::uint64_t* copies = nullptr);

/*
 * Emits the subtree for a sorted range of one to three indices into nodes,
 * using slots baseSlot .. baseSlot + range.size() - 1. Returns the subtree's
 * root slot.
 */
std::size_t terminateSmall(std::span<const TupleIndex> sorted, std::size_t baseSlot,
                           std::span<KdNode> nodes);

}  // namespace kdtree
