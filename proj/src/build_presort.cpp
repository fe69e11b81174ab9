#include "kdtree/build_presort.hpp"

#include <algorithm>
#include <atomic>
#include <utility>

#include "kdtree/detail/fork_join.hpp"
#include "kdtree/detail/stopwatch.hpp"

namespace kdtree {
namespace {

struct PresortBuild {
  const PointSet& points;
  PresortWorkspace& workspace;
  std::span<KdNode> nodes;
  std::atomic<std::uint64_t> copies{0};

  std::size_t buildRange(std::size_t lo, std::size_t hi, std::size_t depth, std::size_t threads) {
    const std::size_t len = hi - lo + 1;
    if (len <= 3) {
      return terminateSmall(workspace.slot(0).subspan(lo, len), lo, nodes);
    }
    const SuperKeyOrder order = SuperKeyOrder::forDepth(depth, points.dimensions());
    std::uint64_t local = 0;
    const TupleIndex pivot = cycleWorkspace(points, workspace, lo, hi, order, &local);
    copies.fetch_add(local, std::memory_order_relaxed);

    const std::size_t median = lo + (hi - lo) / 2;
    KdNode& node = nodes[median];
    node.tuple = pivot;
    detail::forkJoin(
        threads,
        [&](std::size_t t) { node.lessThan = buildRange(lo, median - 1, depth + 1, t); },
        [&](std::size_t t) { node.greaterThan = buildRange(median + 1, hi, depth + 1, t); });
    return median;
  }
};

}  // namespace

PartitionCounts partitionAboutMedian(const PointSet& points, std::span<const TupleIndex> source,
                                     std::span<TupleIndex> dest, TupleIndex pivot,
                                     SuperKeyOrder order) {
  if (dest.size() != source.size()) {
    throw ContractViolation("partitionAboutMedian: source and destination lengths differ");
  }
  if (source.empty()) {
    throw ContractViolation("partitionAboutMedian: empty source");
  }
  const std::size_t median = (source.size() - 1) / 2;
  const std::size_t upperCapacity = source.size() - 1 - median;
  const auto pivotTuple = points[pivot];
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool seenPivot = false;
  for (const TupleIndex idx : source) {
    const auto cmp = compareSuperKeyUnchecked(points[idx], pivotTuple, order.leading);
    if (cmp < 0) {
      if (lower == median) {
        throw ContractViolation("partitionAboutMedian: pivot is not the lower median of source");
      }
      dest[lower++] = idx;
    } else if (cmp > 0) {
      if (upper == upperCapacity) {
        throw ContractViolation("partitionAboutMedian: pivot is not the lower median of source");
      }
      dest[median + 1 + upper++] = idx;
    } else {
      if (seenPivot) {
        throw ContractViolation(
            "partitionAboutMedian: more than one element equals the pivot; duplicates were not removed");
      }
      seenPivot = true;
    }
  }
  if (!seenPivot) {
    throw ContractViolation("partitionAboutMedian: pivot not present in source");
  }
  return {lower, upper};
}

PresortWorkspace::PresortWorkspace(std::vector<IndexArray> arrays) {
  if (arrays.empty()) {
    throw ContractViolation("PresortWorkspace: need at least one index array");
  }
  const std::size_t n = arrays.front().size();
  slots_.reserve(arrays.size());
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    if (arrays[i].size() != n) {
      throw ContractViolation("PresortWorkspace: index arrays differ in length");
    }
    if (arrays[i].order.leading != i) {
      throw ContractViolation("PresortWorkspace: array i must be sorted by super key i");
    }
    slots_.push_back(std::move(arrays[i].indices));
  }
  temp_.resize(n);
}

TupleIndex cycleWorkspace(const PointSet& points, PresortWorkspace& workspace, std::size_t lo,
                          std::size_t hi, SuperKeyOrder order, std::uint64_t* copies) {
  if (hi < lo || hi >= workspace.size()) {
    throw ContractViolation("cycleWorkspace: range out of bounds");
  }
  const std::size_t k = workspace.dimensions();
  const std::size_t len = hi - lo + 1;
  auto primary = workspace.slot(0).subspan(lo, len);
  const TupleIndex pivot = primary[(len - 1) / 2];
  auto temp = workspace.temporary().subspan(lo, len);

  std::copy(primary.begin(), primary.end(), temp.begin());
  for (std::size_t i = 1; i < k; ++i) {
    partitionAboutMedian(points, workspace.slot(i).subspan(lo, len),
                         workspace.slot(i - 1).subspan(lo, len), pivot, order);
  }
  auto last = workspace.slot(k - 1).subspan(lo, len);
  std::copy(temp.begin(), temp.end(), last.begin());

  if (copies) {
    // One copy into the temporary array, one back out, and len - 1 elements
    // for each of the k - 1 partitioned arrays.
    *copies += 2 * len + (k - 1) * (len - 1);
  }
  return pivot;
}

std::size_t terminateSmall(std::span<const TupleIndex> sorted, std::size_t baseSlot,
                           std::span<KdNode> nodes) {
  switch (sorted.size()) {
    case 1:
      nodes[baseSlot] = KdNode{sorted[0]};
      return baseSlot;
    case 2:
      nodes[baseSlot + 1] = KdNode{sorted[1]};
      nodes[baseSlot] = KdNode{sorted[0], kNoNode, baseSlot + 1};
      return baseSlot;
    case 3:
      nodes[baseSlot] = KdNode{sorted[0]};
      nodes[baseSlot + 2] = KdNode{sorted[2]};
      nodes[baseSlot + 1] = KdNode{sorted[1], baseSlot, baseSlot + 2};
      return baseSlot + 1;
    default:
      throw ContractViolation("terminateSmall: range must hold one to three elements");
  }
}

KdTree buildPresort(const PointSet& points, std::size_t threads, BuildStats* stats) {
  if (points.empty()) {
    throw EmptyInputError("buildPresort: empty point set");
  }
  if (threads < 1) {
    throw ContractViolation("buildPresort: thread budget must be at least 1");
  }
  const std::size_t k = points.dimensions();
  BuildStats local;

  detail::Stopwatch watch;
  std::vector<IndexArray> arrays;
  arrays.reserve(k);
  for (std::size_t p = 0; p < k; ++p) {
    arrays.push_back(mergeSortIndices(points, p, threads));
  }
  local.sortSeconds = watch.seconds();

  watch.restart();
  local.removedDuplicates = removeDuplicates(arrays, points);
  local.dedupSeconds = watch.seconds();

  watch.restart();
  const std::size_t n = arrays.front().size();
  PresortWorkspace workspace(std::move(arrays));
  KdTree tree;
  tree.dimensions = k;
  tree.nodes.resize(n);
  PresortBuild build{points, workspace, tree.nodes};
  tree.root = build.buildRange(0, n - 1, 0, threads);
  local.buildSeconds = watch.seconds();
  local.elementCopies = build.copies.load();

  if (stats) {
    *stats = local;
  }
  return tree;
}

}  // namespace kdtree
