#include "kdtree/bench.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "kdtree/build_median.hpp"
#include "kdtree/detail/stopwatch.hpp"

namespace kdtree {

PointSet generatePoints(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0 || k == 0) {
    throw ContractViolation("generatePoints: n and k must be at least 1");
  }
  SplitMix64 rng(seed);
  std::vector<Coordinate> coords(n * k);
  for (auto& c : coords) {
    c = static_cast<std::int32_t>(static_cast<std::uint32_t>(rng.next() >> 32));
  }
  return PointSet(k, std::move(coords));
}

std::string_view toString(Algorithm algorithm) {
  return algorithm == Algorithm::Presort ? "presort" : "median";
}

Algorithm parseAlgorithm(std::string_view name) {
  if (name == "presort") return Algorithm::Presort;
  if (name == "median") return Algorithm::Median;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

KdTree build(Algorithm algorithm, const PointSet& points, std::size_t threads, BuildStats* stats) {
  return algorithm == Algorithm::Presort ? buildPresort(points, threads, stats)
                                         : buildMedian(points, threads, stats);
}

TimingSample timePipeline(Algorithm algorithm, const PointSet& points, std::size_t threads) {
  BuildStats stats;
  detail::Stopwatch watch;
  const KdTree tree = build(algorithm, points, threads, &stats);
  const double total = watch.seconds();
  return {algorithm,          points.size(),       points.dimensions(), threads,
          stats.sortSeconds, stats.dedupSeconds, stats.buildSeconds,  total};
}

namespace {

TimingSample medianOfRepeats(Algorithm algorithm, const PointSet& points, std::size_t threads,
                             std::size_t repeats) {
  std::vector<TimingSample> runs;
  runs.reserve(repeats);
  for (std::size_t r = 0; r < repeats; ++r) {
    try {
      runs.push_back(timePipeline(algorithm, points, threads));
    } catch (const std::exception& e) {
      throw BenchmarkError("benchmark cell algorithm=" + std::string(toString(algorithm)) +
                           " n=" + std::to_string(points.size()) +
                           " k=" + std::to_string(points.dimensions()) +
                           " q=" + std::to_string(threads) + " failed: " + e.what());
    }
  }
  std::sort(runs.begin(), runs.end(), [](const TimingSample& a, const TimingSample& b) {
    return a.totalSeconds < b.totalSeconds;
  });
  return runs[(runs.size() - 1) / 2];
}

}  // namespace

std::vector<TimingSample> runBenchmark(const BenchConfig& config,
                                       const std::function<void(const TimingSample&)>& onSample) {
  if (config.repeats < 1) {
    throw std::invalid_argument("runBenchmark: repeats must be at least 1");
  }
  if (config.nValues.empty() || config.threadCounts.empty() || config.algorithms.empty()) {
    throw std::invalid_argument("runBenchmark: empty algorithm, n or thread list");
  }
  std::map<std::size_t, PointSet> pointsByN;
  for (const std::size_t n : config.nValues) {
    if (!pointsByN.contains(n)) {
      pointsByN.emplace(n, generatePoints(n, config.k, config.seed));
    }
  }
  std::vector<TimingSample> samples;
  for (const Algorithm algorithm : config.algorithms) {
    for (const std::size_t n : config.nValues) {
      for (const std::size_t q : config.threadCounts) {
        samples.push_back(medianOfRepeats(algorithm, pointsByN.at(n), q, config.repeats));
        if (onSample) {
          onSample(samples.back());
        }
      }
    }
  }
  return samples;
}

DimensionSweep sweepDimensions(std::size_t n, std::span<const std::size_t> kValues,
                               std::uint64_t seed, std::size_t repeats,
                               const std::function<void(const TimingSample&)>& onSample) {
  if (kValues.empty()) {
    throw std::invalid_argument("sweepDimensions: empty k list");
  }
  DimensionSweep sweep;
  for (const Algorithm algorithm : {Algorithm::Presort, Algorithm::Median}) {
    std::vector<double> ks, totals;
    for (const std::size_t k : kValues) {
      const PointSet points = generatePoints(n, k, seed);
      sweep.samples.push_back(medianOfRepeats(algorithm, points, 1, repeats));
      if (onSample) {
        onSample(sweep.samples.back());
      }
      ks.push_back(static_cast<double>(k));
      totals.push_back(sweep.samples.back().totalSeconds);
    }
    std::optional<LinearFit> fit;
    if (std::set<double>(ks.begin(), ks.end()).size() >= 2) {
      fit = fitLinear(ks, totals);
    }
    (algorithm == Algorithm::Presort ? sweep.presortFit : sweep.medianFit) = fit;
  }
  return sweep;
}

FitResult fitSamples(FitModel model, std::span<const TimingSample> samples) {
  std::vector<double> x, t;
  for (const TimingSample& s : samples) {
    x.push_back(static_cast<double>(model == FitModel::NLogN ? s.n : s.q));
    t.push_back(s.totalSeconds);
  }
  switch (model) {
    case FitModel::NLogN: return fitNLogN(x, t);
    case FitModel::Amdahl: return fitAmdahl(x, t);
    case FitModel::Contention: return fitContention(x, t);
  }
  throw std::invalid_argument("fitSamples: unknown model");
}

}  // namespace kdtree
