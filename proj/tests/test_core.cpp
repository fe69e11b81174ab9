#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "kdtree/build_presort.hpp"
#include "kdtree/core.hpp"
#include "kdtree/worked_example.hpp"

using namespace kdtree;

namespace {

std::strong_ordering cmp(std::vector<Coordinate> a, std::vector<Coordinate> b, std::size_t p) {
  return compareSuperKey(a, b, SuperKeyOrder{p});
}

}  // namespace

TEST_CASE("super key comparison follows the cyclic coordinate order") {
  CHECK(cmp({2, 1, 3}, {7, 2, 6}, 0) == std::strong_ordering::less);
  CHECK(cmp({7, 2, 6}, {7, 2, 6}, 1) == std::strong_ordering::equal);
  // y:z:x keys 4:2:5 vs 5:3:9
  CHECK(cmp({5, 4, 2}, {9, 5, 3}, 1) == std::strong_ordering::less);
  // Leading coordinate ties fall through to the next one cyclically.
  CHECK(cmp({1, 2, 9}, {1, 5, 0}, 0) == std::strong_ordering::less);
  CHECK(cmp({9, 2, 1}, {0, 2, 5}, 2) == std::strong_ordering::less);
  CHECK(cmp({9, 2, 1}, {0, 5, 1}, 2) == std::strong_ordering::greater);
}

TEST_CASE("super key comparison rejects mismatched inputs") {
  CHECK_THROWS_AS(cmp({1, 2}, {1, 2, 3}, 0), ContractViolation);
  CHECK_THROWS_AS(cmp({1, 2}, {1, 2}, 2), ContractViolation);
}

TEST_CASE("k = 1 degenerates to a single-coordinate key") {
  CHECK(cmp({3}, {4}, 0) == std::strong_ordering::less);
  CHECK(cmp({4}, {4}, 0) == std::strong_ordering::equal);
}

TEST_CASE("super key order is a total order on random tuples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Coordinate> coord(-2, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 1 + trial % 5;
    std::vector<Coordinate> a(k), b(k), c(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = coord(rng);
      b[i] = coord(rng);
      c[i] = coord(rng);
    }
    bool equalSomewhere = false;
    bool equalEverywhere = true;
    for (std::size_t p = 0; p < k; ++p) {
      const auto ab = cmp(a, b, p);
      const auto ba = cmp(b, a, p);
      CHECK((ab < 0) == (ba > 0));
      CHECK((ab == 0) == (a == b));
      equalSomewhere |= ab == 0;
      equalEverywhere &= ab == 0;

      const auto bc = cmp(b, c, p);
      if (ab < 0 && bc < 0) {
        CHECK(cmp(a, c, p) < 0);
      }
      if (ab == 0 && bc == 0) {
        CHECK(cmp(a, c, p) == 0);
      }
    }
    CHECK(equalSomewhere == equalEverywhere);
  }
}

TEST_CASE("PointSet validates its shape") {
  CHECK_THROWS_AS(PointSet(0, {}), ContractViolation);
  CHECK_THROWS_AS(PointSet(3, {1, 2, 3, 4}), ContractViolation);
  CHECK_THROWS_AS(PointSet::fromTuples({{1, 2}, {1, 2, 3}}), ContractViolation);
  CHECK_THROWS_AS(PointSet::fromTuples({}), EmptyInputError);

  const PointSet p = PointSet::fromTuples({{1, 2}, {3, 4}, {5, 6}});
  CHECK(p.size() == 3);
  CHECK(p.dimensions() == 2);
  CHECK(p[1][0] == 3);
  CHECK_THROWS_AS(p.at(3), std::out_of_range);
}

TEST_CASE("tree statistics") {
  SUBCASE("empty tree has no depth") {
    const TreeStats s = treeStats(KdTree{});
    CHECK(s.size == 0);
    CHECK_FALSE(s.depth.has_value());
  }
  SUBCASE("single node") {
    const auto points = PointSet::fromTuples({{4, 2}});
    const TreeStats s = treeStats(buildPresort(points));
    CHECK(s.size == 1);
    CHECK(s.depth == 0u);
  }
  SUBCASE("fifteen-tuple example") {
    const TreeStats s = treeStats(buildPresort(example::fifteenTuples()));
    CHECK(s.size == 15);
    CHECK(s.depth == 3u);
  }
  SUBCASE("seven distinct tuples give a perfect tree") {
    const TreeStats s = treeStats(buildPresort(testing::randomPoints(7, 3, 99)));
    CHECK(s.size == 7);
    CHECK(s.depth == 2u);
  }
}
