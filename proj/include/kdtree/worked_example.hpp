#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kdtree/core.hpp"

namespace kdtree::example {

/*
 * The fifteen (x,y,z) tuples of the classic walkthrough, at their original
 * indices. Tuples 10 and 14 are the two never named individually; the values
 * used here are the ones consistent with every index-array order the
 * walkthrough states.
 */
PointSet fifteenTuples();

/// The thirteen individually named tuples (indices 10 and 14 omitted).
/// labels[i] is the original index of tuple i.
struct LabeledPoints {
  PointSet points;
  std::vector<TupleIndex> labels;
};
LabeledPoints thirteenNamedTuples();

/// One line per step: the presorted arrays, the first partition of the
/// y:z:x array about the root median element by element, and the final tree.
std::string partitionTrace();

}  // namespace kdtree::example
