#include "kdtree/worked_example.hpp"

#include <sstream>
#include <utility>

#include "kdtree/build_presort.hpp"
#include "kdtree/presort.hpp"

namespace kdtree::example {
namespace {

const std::vector<std::vector<Coordinate>> kTuples = {
    {2, 3, 3}, {5, 4, 2}, {9, 6, 7}, {4, 7, 9}, {8, 1, 5}, {7, 2, 6}, {9, 4, 1}, {8, 4, 2},
    {9, 7, 8}, {6, 3, 1}, {3, 4, 5}, {1, 6, 8}, {9, 5, 3}, {2, 1, 3}, {8, 7, 6},
};

constexpr const char* kKeyNames[] = {"x:y:z", "y:z:x", "z:x:y"};

std::string superKey(std::span<const Coordinate> t, std::size_t leading) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << (i ? ":" : "") << t[(leading + i) % t.size()];
  }
  return out.str();
}

void printArray(std::ostream& out, std::string_view label, std::span<const TupleIndex> a,
                std::size_t skip = kNoNode) {
  out << label;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << ' ';
    if (i == skip) {
      out << '-';
    } else {
      out << a[i];
    }
  }
  out << '\n';
}

void printTree(std::ostream& out, const KdTree& tree, const PointSet& points, std::size_t slot,
               std::size_t depth, std::string_view side) {
  if (slot == kNoNode) {
    return;
  }
  const KdNode& n = tree.nodes[slot];
  out << std::string(2 * depth + 2, ' ') << side << ' ' << toString(points[n.tuple]) << '\n';
  printTree(out, tree, points, n.lessThan, depth + 1, "<");
  printTree(out, tree, points, n.greaterThan, depth + 1, ">");
}

}  // namespace

PointSet fifteenTuples() { return PointSet::fromTuples(kTuples); }

LabeledPoints thirteenNamedTuples() {
  std::vector<std::vector<Coordinate>> named;
  std::vector<TupleIndex> labels;
  for (TupleIndex i = 0; i < kTuples.size(); ++i) {
    if (i == 10 || i == 14) {
      continue;
    }
    named.push_back(kTuples[i]);
    labels.push_back(i);
  }
  return {PointSet::fromTuples(named), std::move(labels)};
}

std::string partitionTrace() {
  const PointSet points = fifteenTuples();
  std::ostringstream out;
  out << "tuples:\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << "  " << i << ' ' << toString(points[i]) << '\n';
  }

  std::vector<IndexArray> arrays;
  for (std::size_t p = 0; p < 3; ++p) {
    arrays.push_back(mergeSortIndices(points, p));
  }
  removeDuplicates(arrays, points);
  out << "initial indices:\n";
  for (std::size_t p = 0; p < 3; ++p) {
    printArray(out, std::string("  ") + kKeyNames[p] + ':', arrays[p].indices);
  }

  const auto& xyz = arrays[0].indices;
  const std::size_t median = (xyz.size() - 1) / 2;
  const TupleIndex pivot = xyz[median];
  const std::string pivotKey = superKey(points[pivot], 0);
  out << "root median: address " << median << " element " << pivot << " tuple "
      << toString(points[pivot]) << " key " << pivotKey << '\n';

  out << "partition of the y:z:x array in x:y:z about " << pivotKey << ":\n";
  std::size_t lower = 0;
  std::size_t upper = median + 1;
  for (std::size_t a = 0; a < arrays[1].size(); ++a) {
    const TupleIndex e = arrays[1].indices[a];
    const auto cmp = compareSuperKey(points[e], points[pivot], SuperKeyOrder{0});
    out << "  address " << a << ": element " << e << ' ' << toString(points[e]) << " key "
        << superKey(points[e], 0);
    if (cmp < 0) {
      out << " < " << pivotKey << " -> lower address " << lower++ << '\n';
    } else if (cmp > 0) {
      out << " > " << pivotKey << " -> upper address " << upper++ << '\n';
    } else {
      out << " = " << pivotKey << " -> skipped\n";
    }
  }

  PresortWorkspace workspace(arrays);
  cycleWorkspace(points, workspace, 0, workspace.size() - 1, SuperKeyOrder{0});
  out << "after first split (slots cycled so the next key leads):\n";
  for (std::size_t s = 0; s < 3; ++s) {
    const auto order = PresortWorkspace::slotOrder(1, s, 3);
    printArray(out, std::string("  ") + kKeyNames[order.leading] + ':', workspace.slot(s),
               median);
  }

  const KdTree tree = buildPresort(points);
  out << "tree:\n";
  printTree(out, tree, points, tree.root, 0, "root");
  return out.str();
}

}  // namespace kdtree::example
