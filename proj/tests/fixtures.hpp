#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "kdtree/core.hpp"

namespace kdtree::testing {

/// Random tuples with coordinates in [lo, hi]; a narrow range forces ties.
inline PointSet randomPoints(std::size_t n, std::size_t k, std::uint64_t seed, Coordinate lo = -1000000,
                             Coordinate hi = 1000000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Coordinate> dist(lo, hi);
  std::vector<Coordinate> coords(n * k);
  for (auto& c : coords) c = dist(rng);
  return PointSet(k, std::move(coords));
}

/// Replaces a fraction of tuples with copies of other tuples in the set.
inline PointSet withDuplicates(const PointSet& base, double fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = base.size();
  const std::size_t k = base.dimensions();
  std::vector<Coordinate> coords(base.coordinates().begin(), base.coordinates().end());
  const auto copies = static_cast<std::size_t>(fraction * static_cast<double>(n));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t c = 0; c < copies; ++c) {
    const std::size_t dst = pick(rng);
    const std::size_t src = pick(rng);
    std::copy_n(coords.begin() + static_cast<std::ptrdiff_t>(src * k), k,
                coords.begin() + static_cast<std::ptrdiff_t>(dst * k));
  }
  return PointSet(k, std::move(coords));
}

/// Number of distinct tuples by brute-force pairwise comparison.
inline std::size_t distinctTupleCount(const PointSet& points) {
  std::vector<std::vector<Coordinate>> tuples;
  for (std::size_t i = 0; i < points.size(); ++i) {
    tuples.emplace_back(points[i].begin(), points[i].end());
  }
  std::sort(tuples.begin(), tuples.end());
  return static_cast<std::size_t>(std::unique(tuples.begin(), tuples.end()) - tuples.begin());
}

inline std::vector<Coordinate> tupleOf(const PointSet& points, TupleIndex i) {
  return {points[i].begin(), points[i].end()};
}

inline std::vector<Coordinate> nodeTuple(const KdTree& tree, const PointSet& points, std::size_t slot) {
  return tupleOf(points, tree.node(slot).tuple);
}

}  // namespace kdtree::testing
