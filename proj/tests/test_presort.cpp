#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "kdtree/presort.hpp"
#include "kdtree/worked_example.hpp"

using namespace kdtree;

namespace {

// O(n^2) selection sort on (super key, index); independent of merge sort.
std::vector<TupleIndex> bruteForceSort(const PointSet& points, std::size_t leading) {
  std::vector<TupleIndex> remaining(points.size());
  for (TupleIndex i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::vector<TupleIndex> out;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < remaining.size(); ++j) {
      const auto c = compareSuperKey(points[remaining[j]], points[remaining[best]], {leading});
      if (c < 0 || (c == 0 && remaining[j] < remaining[best])) best = j;
    }
    out.push_back(remaining[best]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

std::vector<IndexArray> sortAll(const PointSet& points) {
  std::vector<IndexArray> arrays;
  for (std::size_t p = 0; p < points.dimensions(); ++p) {
    arrays.push_back(mergeSortIndices(points, p));
  }
  return arrays;
}

}  // namespace

TEST_CASE("merge sort orders indices by super key") {
  SUBCASE("two tuples sorted in y:z:x") {
    const auto points = PointSet::fromTuples({{2, 1, 3}, {8, 1, 5}});
    CHECK(mergeSortIndices(points, 1).indices == std::vector<TupleIndex>{0, 1});
  }
  SUBCASE("single tuple") {
    const auto points = PointSet::fromTuples({{5, 5, 5}});
    for (std::size_t p = 0; p < 3; ++p) {
      CHECK(mergeSortIndices(points, p).indices == std::vector<TupleIndex>{0});
    }
  }
  SUBCASE("matches a brute-force sort on random data") {
    const auto points = testing::randomPoints(64, 3, 11, -3, 3);
    CHECK(mergeSortIndices(points, 2).indices == bruteForceSort(points, 2));
    CHECK(mergeSortIndices(points, 0, 4).indices == bruteForceSort(points, 0));
  }
  SUBCASE("larger inputs and thread budgets agree with the brute-force sort") {
    const auto points = testing::randomPoints(700, 4, 5, -5, 5);
    for (std::size_t p = 0; p < 4; ++p) {
      const auto expected = bruteForceSort(points, p);
      for (std::size_t threads : {1u, 2u, 3u, 8u}) {
        CHECK(mergeSortIndices(points, p, threads).indices == expected);
      }
    }
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(mergeSortIndices(PointSet(), 0), EmptyInputError);
  }
}

TEST_CASE("fifteen-tuple example index arrays start and end as described") {
  const auto points = example::fifteenTuples();
  const auto xyz = mergeSortIndices(points, 0).indices;
  const auto yzx = mergeSortIndices(points, 1).indices;
  const auto zxy = mergeSortIndices(points, 2).indices;
  CHECK(xyz[0] == 11);
  CHECK(xyz[1] == 13);
  CHECK(xyz[13] == 2);
  CHECK(xyz[14] == 8);
  CHECK(xyz[7] == 5);
  CHECK(yzx[0] == 13);
  CHECK(yzx[1] == 4);
  CHECK(yzx[13] == 8);
  CHECK(yzx[14] == 3);
  CHECK(zxy[0] == 9);
  CHECK(zxy[1] == 6);
  CHECK(zxy[13] == 8);
  CHECK(zxy[14] == 3);
}

TEST_CASE("duplicate removal") {
  SUBCASE("distinct tuples are untouched") {
    const auto points = PointSet::fromTuples({{1, 1}, {2, 1}, {1, 2}, {0, 0}, {5, -1}});
    auto arrays = sortAll(points);
    const auto before = arrays;
    CHECK(removeDuplicates(arrays, points) == 0);
    for (std::size_t p = 0; p < arrays.size(); ++p) {
      CHECK(arrays[p].indices == before[p].indices);
    }
  }
  SUBCASE("identical tuples keep the smallest index") {
    const auto points = PointSet::fromTuples({{1, 2}, {1, 2}, {3, 4}});
    auto arrays = sortAll(points);
    CHECK(removeDuplicates(arrays, points) == 1);
    for (const auto& a : arrays) {
      CHECK(std::set<TupleIndex>(a.indices.begin(), a.indices.end()) == std::set<TupleIndex>{0, 2});
    }
  }
  SUBCASE("tuples sharing one coordinate are distinct") {
    const auto points = PointSet::fromTuples({{1, 2}, {1, 5}});
    auto arrays = sortAll(points);
    CHECK(removeDuplicates(arrays, points) == 0);
    CHECK(arrays[0].size() == 2);
  }
  SUBCASE("contract violations") {
    const auto points = PointSet::fromTuples({{1, 2}, {3, 4}, {0, 9}});
    auto arrays = sortAll(points);
    arrays[1].indices.pop_back();
    CHECK_THROWS_AS(removeDuplicates(arrays, points), ContractViolation);

    auto unsorted = sortAll(points);
    std::swap(unsorted[0].indices[0], unsorted[0].indices[2]);
    CHECK_THROWS_AS(removeDuplicates(unsorted, points), ContractViolation);

    const auto dup = PointSet::fromTuples({{1, 2}, {1, 2}});
    std::vector<IndexArray> reversedTies{{{1, 0}, {0}}};
    CHECK_THROWS_AS(removeDuplicates(reversedTies, dup), ContractViolation);
  }
}

TEST_CASE("duplicate removal on random data with many ties") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t k = 1 + seed % 4;
    const auto points = testing::randomPoints(300, k, seed, 0, 3);
    auto arrays = sortAll(points);
    const std::size_t removed = removeDuplicates(arrays, points);
    const std::size_t distinct = testing::distinctTupleCount(points);
    CHECK(removed == points.size() - distinct);

    const std::set<TupleIndex> survivors(arrays[0].indices.begin(), arrays[0].indices.end());
    for (const auto& a : arrays) {
      CHECK(a.size() == distinct);
      CHECK(std::set<TupleIndex>(a.indices.begin(), a.indices.end()) == survivors);
      for (std::size_t j = 1; j < a.size(); ++j) {
        CHECK(compareTuples(points, a.indices[j - 1], a.indices[j], a.order) < 0);
      }
    }
    // Every tuple's first occurrence is the survivor.
    for (TupleIndex i = 0; i < points.size(); ++i) {
      TupleIndex first = i;
      for (TupleIndex j = 0; j < i; ++j) {
        if (testing::tupleOf(points, j) == testing::tupleOf(points, i)) {
          first = j;
          break;
        }
      }
      CHECK(survivors.contains(first));
    }
  }
}
