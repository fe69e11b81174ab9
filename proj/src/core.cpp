#include "kdtree/core.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace kdtree {

PointSet::PointSet(std::size_t k, std::vector<Coordinate> coordinates)
    : k_(k), coords_(std::move(coordinates)) {
  if (k_ == 0) {
    throw ContractViolation("PointSet: dimension count must be at least 1");
  }
  if (coords_.size() % k_ != 0) {
    throw ContractViolation("PointSet: coordinate count is not a multiple of k");
  }
}

PointSet PointSet::fromTuples(const std::vector<std::vector<Coordinate>>& tuples) {
  if (tuples.empty()) {
    throw EmptyInputError("PointSet: no tuples");
  }
  const std::size_t k = tuples.front().size();
  std::vector<Coordinate> flat;
  flat.reserve(tuples.size() * k);
  for (const auto& t : tuples) {
    if (t.size() != k) {
      throw ContractViolation("PointSet: tuples have differing dimension counts");
    }
    flat.insert(flat.end(), t.begin(), t.end());
  }
  return PointSet(k, std::move(flat));
}

std::span<const Coordinate> PointSet::at(TupleIndex i) const {
  if (i >= size()) {
    throw std::out_of_range("PointSet: tuple index " + std::to_string(i) + " out of range");
  }
  return (*this)[i];
}

std::strong_ordering compareSuperKey(std::span<const Coordinate> a, std::span<const Coordinate> b,
                                     SuperKeyOrder order) {
  if (a.size() != b.size()) {
    throw ContractViolation("compareSuperKey: tuples have different dimension counts");
  }
  if (order.leading >= a.size()) {
    throw ContractViolation("compareSuperKey: leading dimension out of range");
  }
  return compareSuperKeyUnchecked(a, b, order.leading);
}

TreeStats treeStats(const KdTree& tree) {
  TreeStats stats;
  if (tree.empty()) {
    return stats;
  }
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{tree.root, 0}};
  while (!stack.empty()) {
    auto [slot, depth] = stack.back();
    stack.pop_back();
    if (++stats.size > tree.nodes.size()) {
      throw ContractViolation("treeStats: node graph is not a tree");
    }
    deepest = std::max(deepest, depth);
    const KdNode& n = tree.node(slot);
    if (n.hasLessThan()) stack.emplace_back(n.lessThan, depth + 1);
    if (n.hasGreaterThan()) stack.emplace_back(n.greaterThan, depth + 1);
  }
  stats.depth = deepest;
  return stats;
}

std::string toString(std::span<const Coordinate> tuple) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    out << (i ? "," : "") << tuple[i];
  }
  out << ')';
  return out.str();
}

}  // namespace kdtree
