#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kdtree/core.hpp"

namespace kdtree {

struct Violation {
  TupleIndex tuple = 0;
  std::size_t depth = 0;
  std::string reason;
};

struct ValidityReport {
  bool valid = true;
  std::vector<Violation> violations;
  std::size_t nodeCount = 0;
  std::optional<std::size_t> depth;
  std::size_t maxImbalance = 0;
};

/*
 * Exhaustive structural check: every node is compared against every
 * ancestor under the ancestor's super key (O(n * depth)), tuple indices
 * must be valid and unique, and the node graph must be a tree. Problems are
 * collected as violations instead of thrown.
 */
ValidityReport checkValidity(const KdTree& tree, const PointSet& points);

/// Same shape and same tuple index at every corresponding node.
bool treesEqual(const KdTree& a, const KdTree& b);

/*
 * Reference builder that fully re-sorts each index range under the level's
 * super key and splits at the lower median. Used as ground truth for the
 * fast builders; shares no code with them beyond the super-key comparison.
 */
KdTree buildNaiveOracle(const PointSet& points);

}  // namespace kdtree
