#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdtree/bench.hpp"
#include "kdtree/build_median.hpp"
#include "kdtree/build_presort.hpp"
#include "kdtree/fit.hpp"
#include "kdtree/verify.hpp"

namespace py = pybind11;
using namespace kdtree;

namespace {

std::vector<Coordinate> tupleAt(const PointSet& points, TupleIndex i) {
  const auto t = points.at(i);
  return {t.begin(), t.end()};
}

py::object slotOrNone(std::size_t slot) {
  return slot == kNoNode ? py::none() : py::cast(slot);
}

// Builders release the GIL; the tree and stats are returned together.
template <typename Builder>
py::tuple buildWithStats(Builder builder, const PointSet& points, std::size_t threads) {
  BuildStats stats;
  KdTree tree;
  {
    py::gil_scoped_release release;
    tree = builder(points, threads, &stats);
  }
  return py::make_tuple(std::move(tree), stats);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Balanced k-d tree construction";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<DegenerateFitError>(m, "DegenerateFitError", PyExc_ArithmeticError);

  py::class_<PointSet>(m, "PointSet")
      .def(py::init(&PointSet::fromTuples), py::arg("tuples"))
      .def_property_readonly("dimensions", &PointSet::dimensions)
      .def("__len__", &PointSet::size)
      .def("__getitem__", &tupleAt)
      .def("tuples", [](const PointSet& p) {
        std::vector<std::vector<Coordinate>> out;
        for (TupleIndex i = 0; i < p.size(); ++i) out.push_back(tupleAt(p, i));
        return out;
      });

  py::class_<KdTree>(m, "KdTree")
      .def_readonly("dimensions", &KdTree::dimensions)
      .def_property_readonly("root", [](const KdTree& t) { return slotOrNone(t.root); })
      .def("__len__", [](const KdTree& t) { return treeStats(t).size; })
      .def_property_readonly("depth", [](const KdTree& t) { return treeStats(t).depth; })
      .def("node", [](const KdTree& t, std::size_t slot) {
        const KdNode& n = t.node(slot);
        return py::make_tuple(n.tuple, slotOrNone(n.lessThan), slotOrNone(n.greaterThan));
      }, py::arg("slot"), "(tuple index, less-than slot, greater-than slot) of a node");

  py::class_<BuildStats>(m, "BuildStats")
      .def_readonly("sort_seconds", &BuildStats::sortSeconds)
      .def_readonly("dedup_seconds", &BuildStats::dedupSeconds)
      .def_readonly("build_seconds", &BuildStats::buildSeconds)
      .def_readonly("removed_duplicates", &BuildStats::removedDuplicates)
      .def_readonly("element_copies", &BuildStats::elementCopies);

  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("valid", &ValidityReport::valid)
      .def_readonly("node_count", &ValidityReport::nodeCount)
      .def_readonly("depth", &ValidityReport::depth)
      .def_readonly("max_imbalance", &ValidityReport::maxImbalance)
      .def_property_readonly("violations", [](const ValidityReport& r) {
        std::vector<std::string> out;
        for (const auto& v : r.violations) out.push_back(v.reason);
        return out;
      });

  m.def("compare_super_key", [](const std::vector<Coordinate>& a, const std::vector<Coordinate>& b,
                                std::size_t leading) {
    const auto c = compareSuperKey(a, b, SuperKeyOrder{leading});
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }, py::arg("a"), py::arg("b"), py::arg("leading"));

  m.def("build_presort", [](const PointSet& p, std::size_t threads) {
    return buildWithStats([](auto&&... a) { return buildPresort(a...); }, p, threads);
  }, py::arg("points"), py::arg("threads") = 1, "Returns (tree, stats).");
  m.def("build_median", [](const PointSet& p, std::size_t threads) {
    return buildWithStats([](auto&&... a) { return buildMedian(a...); }, p, threads);
  }, py::arg("points"), py::arg("threads") = 1, "Returns (tree, stats).");
  m.def("build_naive_oracle", &buildNaiveOracle, py::arg("points"),
        py::call_guard<py::gil_scoped_release>());
  m.def("check_validity", &checkValidity, py::arg("tree"), py::arg("points"));
  m.def("trees_equal", &treesEqual, py::arg("a"), py::arg("b"));

  m.def("select_median", [](const PointSet& p, std::vector<TupleIndex> indices, std::size_t leading) {
    SelectionStats stats;
    const std::size_t pos = selectMedian(p, indices, SuperKeyOrder{leading}, &stats);
    return py::make_tuple(pos, indices, stats.comparisons);
  }, py::arg("points"), py::arg("indices"), py::arg("leading") = 0,
     "Returns (median position, reordered indices, comparison count).");

  m.def("generate_points", &generatePoints, py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def("time_pipeline", [](const std::string& algorithm, const PointSet& p, std::size_t threads) {
    const TimingSample s = timePipeline(parseAlgorithm(algorithm), p, threads);
    py::dict d;
    d["algorithm"] = std::string(toString(s.algorithm));
    d["n"] = s.n;
    d["k"] = s.k;
    d["q"] = s.q;
    d["sort_s"] = s.sortSeconds;
    d["dedup_s"] = s.dedupSeconds;
    d["build_s"] = s.buildSeconds;
    d["total_s"] = s.totalSeconds;
    return d;
  }, py::arg("algorithm"), py::arg("points"), py::arg("threads") = 1);

  py::class_<FitResult>(m, "FitResult")
      .def_property_readonly("model", [](const FitResult& f) { return std::string(toString(f.model)); })
      .def_property_readonly("params", [](const FitResult& f) {
        py::dict d;
        const auto names = parameterNames(f.model);
        for (std::size_t i = 0; i < names.size(); ++i) d[py::str(std::string(names[i]))] = f.parameters.at(i);
        return d;
      })
      .def_readonly("r", &FitResult::r)
      .def_readonly("q_star", &FitResult::qStar)
      .def("predict", &FitResult::predict, py::arg("x"));

  py::class_<LinearFit>(m, "LinearFit")
      .def_readonly("slope", &LinearFit::slope)
      .def_readonly("intercept", &LinearFit::intercept)
      .def_readonly("r", &LinearFit::r);

  m.def("fit_nlogn", [](std::vector<double> n, std::vector<double> t) { return fitNLogN(n, t); },
        py::arg("n"), py::arg("t"));
  m.def("fit_amdahl", [](std::vector<double> q, std::vector<double> t) { return fitAmdahl(q, t); },
        py::arg("q"), py::arg("t"));
  m.def("fit_contention", [](std::vector<double> q, std::vector<double> t) { return fitContention(q, t); },
        py::arg("q"), py::arg("t"));
  m.def("fit_linear", [](std::vector<double> x, std::vector<double> t) { return fitLinear(x, t); },
        py::arg("x"), py::arg("t"));
  m.def("optimal_threads", &optimalThreads, py::arg("t1"), py::arg("mc"));
}
