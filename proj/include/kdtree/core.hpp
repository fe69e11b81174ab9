#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdtree {

using Coordinate = std::int64_t;
using TupleIndex = std::size_t;

/// Raised when a precondition of a library call does not hold.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Raised when a builder or generator receives no tuples to work on.
class EmptyInputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/*
 * Immutable array of n k-dimensional tuples stored row-major. Builders only
 * ever read from it; every ordering is expressed through index arrays.
 */
class PointSet {
public:
  PointSet() = default;

  /// Takes ownership of a row-major coordinate buffer of n*k values.
  PointSet(std::size_t k, std::vector<Coordinate> coordinates);

  /// Builds from nested tuples; every tuple must have the same length.
  static PointSet fromTuples(const std::vector<std::vector<Coordinate>>& tuples);

  std::size_t dimensions() const noexcept { return k_; }
  std::size_t size() const noexcept { return k_ == 0 ? 0 : coords_.size() / k_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<const Coordinate> operator[](TupleIndex i) const noexcept {
    return {coords_.data() + i * k_, k_};
  }
  std::span<const Coordinate> at(TupleIndex i) const;

  std::span<const Coordinate> coordinates() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  std::size_t k_ = 0;
  std::vector<Coordinate> coords_;
};

/// Cyclic super key x_p : x_(p+1) : ... : x_(p+k-1), all indices mod k.
struct SuperKeyOrder {
  std::size_t leading = 0;

  static SuperKeyOrder forDepth(std::size_t depth, std::size_t k) noexcept {
    return {depth % k};
  }
  SuperKeyOrder next(std::size_t k) const noexcept { return {(leading + 1) % k}; }
};

/// Unchecked super-key comparison; both spans must have size k > leading.
inline std::strong_ordering compareSuperKeyUnchecked(std::span<const Coordinate> a,
                                                     std::span<const Coordinate> b,
                                                     std::size_t leading) noexcept {
  const std::size_t k = a.size();
  std::size_t p = leading;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[p] != b[p]) {
      return a[p] < b[p] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (++p == k) {
      p = 0;
    }
  }
  return std::strong_ordering::equal;
}

/// Lexicographic comparison of the cyclic coordinate sequences starting at
/// order.leading. Throws ContractViolation on a dimension mismatch.
std::strong_ordering compareSuperKey(std::span<const Coordinate> a, std::span<const Coordinate> b,
                                     SuperKeyOrder order);

/// Comparison of two tuples of one PointSet by index.
inline std::strong_ordering compareTuples(const PointSet& points, TupleIndex a, TupleIndex b,
                                          SuperKeyOrder order) noexcept {
  return compareSuperKeyUnchecked(points[a], points[b], order.leading);
}

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct KdNode {
  TupleIndex tuple = 0;
  std::size_t lessThan = kNoNode;
  std::size_t greaterThan = kNoNode;

  bool hasLessThan() const noexcept { return lessThan != kNoNode; }
  bool hasGreaterThan() const noexcept { return greaterThan != kNoNode; }
  bool isLeaf() const noexcept { return !hasLessThan() && !hasGreaterThan(); }
};

/*
 * Node storage is a flat arena; children are arena slots. The builders place
 * the node chosen for an index-array range [lo, hi] at the slot of its median
 * address, so concurrent recursions write disjoint slots.
 */
struct KdTree {
  std::size_t dimensions = 0;
  std::size_t root = kNoNode;
  std::vector<KdNode> nodes;

  bool empty() const noexcept { return root == kNoNode; }
  const KdNode& node(std::size_t slot) const { return nodes.at(slot); }
};

struct TreeStats {
  std::size_t size = 0;
  /// Longest root-to-leaf edge count; nullopt for an empty tree.
  std::optional<std::size_t> depth;
};

TreeStats treeStats(const KdTree& tree);

std::string toString(std::span<const Coordinate> tuple);

}  // namespace kdtree
