#include "kdtree/presort.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kdtree/detail/fork_join.hpp"

namespace kdtree {
namespace {

void insertionSort(const PointSet& points, std::span<TupleIndex> a, SuperKeyOrder order) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    const TupleIndex v = a[i];
    std::size_t j = i;
    for (; j > 0 && compareTuples(points, v, a[j - 1], order) < 0; --j) {
      a[j] = a[j - 1];
    }
    a[j] = v;
  }
}

// src and dst hold the same elements on entry; the sorted result lands in dst.
void sortInto(const PointSet& points, std::span<TupleIndex> src, std::span<TupleIndex> dst,
              SuperKeyOrder order, std::size_t threads) {
  const std::size_t n = dst.size();
  if (n <= kInsertionSortCutoff) {
    insertionSort(points, dst, order);
    return;
  }
  const std::size_t mid = n / 2;
  detail::forkJoin(
      threads,
      [&](std::size_t t) { sortInto(points, dst.first(mid), src.first(mid), order, t); },
      [&](std::size_t t) { sortInto(points, dst.subspan(mid), src.subspan(mid), order, t); });

  std::size_t i = 0, j = mid, out = 0;
  while (i < mid && j < n) {
    // Take from the left run on ties to stay stable.
    if (compareTuples(points, src[j], src[i], order) < 0) {
      dst[out++] = src[j++];
    } else {
      dst[out++] = src[i++];
    }
  }
  while (i < mid) dst[out++] = src[i++];
  while (j < n) dst[out++] = src[j++];
}

}  // namespace

void mergeSortRange(const PointSet& points, std::span<TupleIndex> range, SuperKeyOrder order,
                    std::size_t threads) {
  if (threads < 1) {
    throw ContractViolation("mergeSortRange: thread budget must be at least 1");
  }
  if (order.leading >= points.dimensions()) {
    throw ContractViolation("mergeSortRange: leading dimension out of range");
  }
  std::vector<TupleIndex> scratch(range.begin(), range.end());
  sortInto(points, scratch, range, order, threads);
}

IndexArray mergeSortIndices(const PointSet& points, std::size_t leading, std::size_t threads) {
  if (points.empty()) {
    throw EmptyInputError("mergeSortIndices: empty point set");
  }
  IndexArray result{std::vector<TupleIndex>(points.size()), SuperKeyOrder{leading}};
  std::iota(result.indices.begin(), result.indices.end(), TupleIndex{0});
  mergeSortRange(points, result.indices, result.order, threads);
  return result;
}

std::size_t removeDuplicates(std::span<IndexArray> arrays, const PointSet& points) {
  if (arrays.empty()) {
    return 0;
  }
  const std::size_t n = arrays.front().size();
  for (const IndexArray& a : arrays) {
    if (a.size() != n) {
      throw ContractViolation("removeDuplicates: index arrays differ in length");
    }
  }
  std::size_t surviving = n;
  for (IndexArray& a : arrays) {
    auto& idx = a.indices;
    if (idx.empty()) {
      continue;
    }
    std::size_t end = 1;
    for (std::size_t j = 1; j < idx.size(); ++j) {
      // idx[j - 1] still holds its original value because end <= j.
      const auto cmp = compareTuples(points, idx[j - 1], idx[j], a.order);
      if (cmp > 0) {
        throw ContractViolation("removeDuplicates: index array is not sorted at position " +
                                std::to_string(j));
      }
      if (cmp == 0) {
        // The retained representative is the smallest index of the run.
        if (idx[j] < idx[j - 1]) {
          throw ContractViolation("removeDuplicates: identical tuples not in ascending index order");
        }
        continue;
      }
      idx[end++] = idx[j];
    }
    idx.resize(end);
    surviving = end;
  }
  for (const IndexArray& a : arrays) {
    if (a.size() != surviving) {
      throw ContractViolation("removeDuplicates: arrays disagree after removal");
    }
  }
  return n - surviving;
}

}  // namespace kdtree
