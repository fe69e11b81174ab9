#include "kdtree/verify.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace kdtree {
namespace {

constexpr std::size_t kNoVisit = kNoNode;

struct Visit {
  std::size_t slot;
  std::size_t parent;
  bool lessSide;
  std::size_t depth;
  std::size_t lessSize = 0;
  std::size_t greaterSize = 0;
  bool tupleValid = false;
  bool counted = false;
};

std::size_t naiveBuild(const PointSet& points, std::vector<TupleIndex>& indices, std::size_t lo,
                       std::size_t hi, std::size_t depth, std::vector<KdNode>& nodes) {
  if (lo >= hi) {
    return kNoNode;
  }
  const SuperKeyOrder order = SuperKeyOrder::forDepth(depth, points.dimensions());
  std::sort(indices.begin() + lo, indices.begin() + hi, [&](TupleIndex a, TupleIndex b) {
    return compareSuperKey(points[a], points[b], order) < 0;
  });
  const std::size_t median = lo + (hi - lo - 1) / 2;
  const std::size_t slot = nodes.size();
  nodes.push_back(KdNode{indices[median]});
  const std::size_t less = naiveBuild(points, indices, lo, median, depth + 1, nodes);
  const std::size_t greater = naiveBuild(points, indices, median + 1, hi, depth + 1, nodes);
  nodes[slot].lessThan = less;
  nodes[slot].greaterThan = greater;
  return slot;
}

}  // namespace

ValidityReport checkValidity(const KdTree& tree, const PointSet& points) {
  ValidityReport report;
  if (tree.empty()) {
    return report;
  }
  const std::size_t k = points.dimensions();
  if (tree.dimensions != k) {
    report.violations.push_back({0, 0, "tree and point set dimension counts differ"});
    report.valid = false;
    return report;
  }

  std::vector<Visit> visits;
  std::vector<bool> slotSeen(tree.nodes.size(), false);
  std::vector<bool> tupleSeen(points.size(), false);
  std::vector<std::size_t> stack;

  visits.push_back({tree.root, kNoVisit, false, 0});
  stack.push_back(0);
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    const std::size_t slot = visits[v].slot;
    const std::size_t depth = visits[v].depth;

    if (slot >= tree.nodes.size()) {
      report.violations.push_back({0, depth, "child slot " + std::to_string(slot) + " is dangling"});
      continue;
    }
    if (slotSeen[slot]) {
      report.violations.push_back({tree.nodes[slot].tuple, depth, "node reached twice; not a tree"});
      continue;
    }
    slotSeen[slot] = true;
    visits[v].counted = true;
    ++report.nodeCount;
    report.depth = std::max(report.depth.value_or(0), depth);

    const KdNode& node = tree.nodes[slot];
    if (node.tuple >= points.size()) {
      report.violations.push_back({node.tuple, depth, "tuple index out of range"});
    } else if (tupleSeen[node.tuple]) {
      report.violations.push_back({node.tuple, depth, "tuple appears more than once"});
    } else {
      tupleSeen[node.tuple] = true;
      visits[v].tupleValid = true;
      // Check against every ancestor's super key on the side we descended.
      for (std::size_t cur = v; visits[cur].parent != kNoVisit; cur = visits[cur].parent) {
        const Visit& anc = visits[visits[cur].parent];
        if (!anc.tupleValid) {
          continue;
        }
        const TupleIndex ancTuple = tree.nodes[anc.slot].tuple;
        const auto cmp = compareSuperKeyUnchecked(points[node.tuple], points[ancTuple], anc.depth % k);
        const bool ok = visits[cur].lessSide ? cmp < 0 : cmp > 0;
        if (!ok) {
          report.violations.push_back(
              {node.tuple, depth,
               std::string("not strictly ") + (visits[cur].lessSide ? "less" : "greater") +
                   " than ancestor tuple " + std::to_string(ancTuple) + " at depth " +
                   std::to_string(anc.depth)});
        }
      }
    }

    if (node.hasLessThan()) {
      visits.push_back({node.lessThan, v, true, depth + 1});
      stack.push_back(visits.size() - 1);
    }
    if (node.hasGreaterThan()) {
      visits.push_back({node.greaterThan, v, false, depth + 1});
      stack.push_back(visits.size() - 1);
    }
  }

  // Children are always recorded after their parents.
  for (std::size_t v = visits.size(); v-- > 1;) {
    const Visit& child = visits[v];
    const std::size_t size = child.counted ? 1 + child.lessSize + child.greaterSize : 0;
    Visit& parent = visits[child.parent];
    (child.lessSide ? parent.lessSize : parent.greaterSize) += size;
  }
  for (const Visit& v : visits) {
    const std::size_t imbalance =
        v.lessSize > v.greaterSize ? v.lessSize - v.greaterSize : v.greaterSize - v.lessSize;
    report.maxImbalance = std::max(report.maxImbalance, imbalance);
  }

  report.valid = report.violations.empty();
  return report;
}

bool treesEqual(const KdTree& a, const KdTree& b) {
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty();
  }
  if (a.dimensions != b.dimensions) {
    return false;
  }
  std::vector<std::pair<std::size_t, std::size_t>> stack{{a.root, b.root}};
  std::size_t visited = 0;
  while (!stack.empty()) {
    auto [sa, sb] = stack.back();
    stack.pop_back();
    if (sa >= a.nodes.size() || sb >= b.nodes.size() || ++visited > a.nodes.size()) {
      return false;
    }
    const KdNode& na = a.nodes[sa];
    const KdNode& nb = b.nodes[sb];
    if (na.tuple != nb.tuple || na.hasLessThan() != nb.hasLessThan() ||
        na.hasGreaterThan() != nb.hasGreaterThan()) {
      return false;
    }
    if (na.hasLessThan()) stack.emplace_back(na.lessThan, nb.lessThan);
    if (na.hasGreaterThan()) stack.emplace_back(na.greaterThan, nb.greaterThan);
  }
  return true;
}

KdTree buildNaiveOracle(const PointSet& points) {
  if (points.empty()) {
    throw EmptyInputError("buildNaiveOracle: empty point set");
  }
  const std::size_t k = points.dimensions();

  // Deduplicate by full-tuple lexicographic order, keeping the smallest index.
  std::vector<TupleIndex> all(points.size());
  std::iota(all.begin(), all.end(), TupleIndex{0});
  std::sort(all.begin(), all.end(), [&](TupleIndex a, TupleIndex b) {
    const auto pa = points[a];
    const auto pb = points[b];
    if (std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end())) return true;
    if (std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end())) return false;
    return a < b;
  });
  std::vector<TupleIndex> distinct;
  for (const TupleIndex i : all) {
    if (distinct.empty() || !std::ranges::equal(points[distinct.back()], points[i])) {
      distinct.push_back(i);
    }
  }

  KdTree tree;
  tree.dimensions = k;
  tree.nodes.reserve(distinct.size());
  tree.root = naiveBuild(points, distinct, 0, distinct.size(), 0, tree.nodes);
  return tree;
}

}  // namespace kdtree
