#include "kdtree/build_median.hpp"

#include <algorithm>
#include <utility>

#include "kdtree/detail/fork_join.hpp"
#include "kdtree/detail/stopwatch.hpp"
#include "kdtree/presort.hpp"

namespace kdtree {
namespace {

struct CountingCompare {
  const PointSet& points;
  SuperKeyOrder order;
  std::uint64_t comparisons = 0;

  bool less(TupleIndex a, TupleIndex b) {
    ++comparisons;
    return compareTuples(points, a, b, order) < 0;
  }
};

void insertionSort(std::span<TupleIndex> a, CountingCompare& cmp) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    const TupleIndex v = a[i];
    std::size_t j = i;
    for (; j > 0 && cmp.less(v, a[j - 1]); --j) {
      a[j] = a[j - 1];
    }
    a[j] = v;
  }
}

// Lomuto partition about the element at pivotPos; returns its final position.
std::size_t partitionAbout(std::span<TupleIndex> a, std::size_t pivotPos, CountingCompare& cmp) {
  const std::size_t last = a.size() - 1;
  std::swap(a[pivotPos], a[last]);
  const TupleIndex pivot = a[last];
  std::size_t store = 0;
  for (std::size_t i = 0; i < last; ++i) {
    if (cmp.less(a[i], pivot)) {
      std::swap(a[i], a[store++]);
    }
  }
  std::swap(a[store], a[last]);
  return store;
}

std::size_t select(std::span<TupleIndex> range, std::size_t rank, CountingCompare& cmp) {
  std::size_t offset = 0;
  std::span<TupleIndex> a = range;
  for (;;) {
    const std::size_t n = a.size();
    if (n <= kSelectionCutoff) {
      insertionSort(a, cmp);
      return offset + rank;
    }
    // Sort each group of five and gather the group medians at the front.
    std::size_t groups = 0;
    for (std::size_t i = 0; i < n; i += kSelectionGroupSize) {
      const std::size_t len = std::min(kSelectionGroupSize, n - i);
      insertionSort(a.subspan(i, len), cmp);
      std::swap(a[groups++], a[i + (len - 1) / 2]);
    }
    const std::size_t pivotPos = select(a.first(groups), (groups - 1) / 2, cmp);
    const std::size_t split = partitionAbout(a, pivotPos, cmp);
    if (rank == split) {
      return offset + split;
    }
    if (rank < split) {
      a = a.first(split);
    } else {
      a = a.subspan(split + 1);
      rank -= split + 1;
      offset += split + 1;
    }
  }
}

struct MedianBuild {
  const PointSet& points;
  std::span<TupleIndex> index;
  std::span<KdNode> nodes;

  std::size_t buildRange(std::size_t lo, std::size_t hi, std::size_t depth, std::size_t threads) {
    const std::size_t len = hi - lo + 1;
    const SuperKeyOrder order = SuperKeyOrder::forDepth(depth, points.dimensions());
    auto range = index.subspan(lo, len);
    if (len <= 3) {
      return terminateSmallMedian(points, range, lo, nodes, order);
    }
    const std::size_t median = lo + selectMedian(points, range, order);
    KdNode& node = nodes[median];
    node.tuple = index[median];
    detail::forkJoin(
        threads,
        [&](std::size_t t) { node.lessThan = buildRange(lo, median - 1, depth + 1, t); },
        [&](std::size_t t) { node.greaterThan = buildRange(median + 1, hi, depth + 1, t); });
    return median;
  }
};

}  // namespace

void insertionSortSmall(const PointSet& points, std::span<TupleIndex> range, SuperKeyOrder order,
                        SelectionStats* stats) {
  CountingCompare cmp{points, order};
  insertionSort(range, cmp);
  if (stats) {
    stats->comparisons += cmp.comparisons;
  }
}

std::size_t selectRank(const PointSet& points, std::span<TupleIndex> range, std::size_t rank,
                       SuperKeyOrder order, SelectionStats* stats) {
  if (range.empty()) {
    throw ContractViolation("selectRank: empty range");
  }
  if (rank >= range.size()) {
    throw ContractViolation("selectRank: rank out of range");
  }
  if (order.leading >= points.dimensions()) {
    throw ContractViolation("selectRank: leading dimension out of range");
  }
  CountingCompare cmp{points, order};
  const std::size_t pos = select(range, rank, cmp);
  if (stats) {
    stats->comparisons += cmp.comparisons;
  }
  return pos;
}

std::size_t selectMedian(const PointSet& points, std::span<TupleIndex> range, SuperKeyOrder order,
                         SelectionStats* stats) {
  if (range.empty()) {
    throw ContractViolation("selectMedian: empty range");
  }
  return selectRank(points, range, (range.size() - 1) / 2, order, stats);
}

std::size_t terminateSmallMedian(const PointSet& points, std::span<TupleIndex> range,
                                 std::size_t baseSlot, std::span<KdNode> nodes,
                                 SuperKeyOrder order) {
  if (range.empty() || range.size() > 3) {
    throw ContractViolation("terminateSmallMedian: range must hold one to three elements");
  }
  insertionSortSmall(points, range, order);
  return terminateSmall(range, baseSlot, nodes);
}

KdTree buildMedian(const PointSet& points, std::size_t threads, BuildStats* stats) {
  if (points.empty()) {
    throw EmptyInputError("buildMedian: empty point set");
  }
  if (threads < 1) {
    throw ContractViolation("buildMedian: thread budget must be at least 1");
  }
  BuildStats local;

  detail::Stopwatch watch;
  IndexArray sorted = mergeSortIndices(points, 0, threads);
  local.sortSeconds = watch.seconds();

  watch.restart();
  local.removedDuplicates = removeDuplicates(std::span<IndexArray>(&sorted, 1), points);
  local.dedupSeconds = watch.seconds();

  watch.restart();
  const std::size_t n = sorted.size();
  KdTree tree;
  tree.dimensions = points.dimensions();
  tree.nodes.resize(n);
  MedianBuild build{points, sorted.indices, tree.nodes};
  tree.root = build.buildRange(0, n - 1, 0, threads);
  local.buildSeconds = watch.seconds();

  if (stats) {
    *stats = local;
  }
  return tree;
}

}  // namespace kdtree
