// Command-line front end: benchmark sweeps, model fitting, cross-checked
// builds and the worked-example trace.

#include <algorithm>
#include <bit>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kdtree/bench.hpp"
#include "kdtree/build_median.hpp"
#include "kdtree/build_presort.hpp"
#include "kdtree/fit.hpp"
#include "kdtree/report_io.hpp"
#include "kdtree/verify.hpp"
#include "kdtree/worked_example.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitDegenerateFit = 3;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parseCommaList(const std::string& text, const char* flag) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a non-negative integer");
    }
  }
  if (values.empty()) {
    throw UsageError(std::string(flag) + ": empty list");
  }
  return values;
}

void requirePowerOfTwo(std::size_t v, const char* flag) {
  if (!std::has_single_bit(v)) {
    throw UsageError(std::string(flag) + ": " + std::to_string(v) + " is not a power of two");
  }
}

bool endsWith(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<kdtree::TimingSample> filter(const std::vector<kdtree::TimingSample>& samples,
                                         kdtree::Algorithm algorithm) {
  std::vector<kdtree::TimingSample> out;
  std::copy_if(samples.begin(), samples.end(), std::back_inserter(out),
               [&](const kdtree::TimingSample& s) { return s.algorithm == algorithm; });
  return out;
}

// Samples along the axis the model varies: n at the smallest q for nlogn,
// q at the largest n for the thread models.
std::vector<kdtree::TimingSample> modelSlice(const std::vector<kdtree::TimingSample>& samples,
                                             kdtree::FitModel model) {
  if (samples.empty()) return {};
  std::vector<kdtree::TimingSample> out;
  if (model == kdtree::FitModel::NLogN) {
    std::size_t q = samples.front().q;
    for (const auto& s : samples) q = std::min(q, s.q);
    std::copy_if(samples.begin(), samples.end(), std::back_inserter(out),
                 [&](const kdtree::TimingSample& s) { return s.q == q; });
  } else {
    std::size_t n = 0;
    for (const auto& s : samples) n = std::max(n, s.n);
    std::copy_if(samples.begin(), samples.end(), std::back_inserter(out),
                 [&](const kdtree::TimingSample& s) { return s.n == n; });
  }
  return out;
}

std::size_t distinctAxis(const std::vector<kdtree::TimingSample>& slice, kdtree::FitModel model) {
  std::set<std::size_t> values;
  for (const auto& s : slice) values.insert(model == kdtree::FitModel::NLogN ? s.n : s.q);
  return values.size();
}

void printSample(const kdtree::TimingSample& s) {
  std::cerr << kdtree::toString(s.algorithm) << " n=" << s.n << " k=" << s.k << " q=" << s.q
            << " total=" << s.totalSeconds << "s\n";
}

int runBench(const std::string& algorithm, std::size_t nMin, std::size_t nMax, std::size_t k,
             const std::string& threads, std::size_t repeats, std::uint64_t seed,
             const std::string& outPath) {
  requirePowerOfTwo(nMin, "--n-min");
  requirePowerOfTwo(nMax, "--n-max");
  if (nMin > nMax) throw UsageError("--n-min exceeds --n-max");
  if (k < 1) throw UsageError("--k must be at least 1");
  if (repeats < 1) throw UsageError("--repeats must be at least 1");

  kdtree::BenchConfig config;
  config.algorithms.clear();
  if (algorithm == "both") {
    config.algorithms = {kdtree::Algorithm::Presort, kdtree::Algorithm::Median};
  } else {
    config.algorithms = {kdtree::parseAlgorithm(algorithm)};
  }
  for (std::size_t n = nMin; n <= nMax; n *= 2) config.nValues.push_back(n);
  config.threadCounts = parseCommaList(threads, "--threads");
  for (const std::size_t q : config.threadCounts) requirePowerOfTwo(q, "--threads");
  config.k = k;
  config.repeats = repeats;
  config.seed = seed;

  const auto samples = kdtree::runBenchmark(config, printSample);

  std::ofstream file;
  if (!outPath.empty()) {
    file.open(outPath);
    if (!file) throw UsageError("cannot open --out path " + outPath);
  }
  std::ostream& out = outPath.empty() ? std::cout : file;
  if (endsWith(outPath, ".json")) {
    std::map<std::string, nlohmann::json> fits;
    for (const auto alg : config.algorithms) {
      const auto mine = filter(samples, alg);
      const std::string name(kdtree::toString(alg));
      for (const auto model : {kdtree::FitModel::NLogN, kdtree::FitModel::Contention}) {
        const auto slice = modelSlice(mine, model);
        const std::size_t needed = model == kdtree::FitModel::NLogN ? 3 : 4;
        if (slice.size() >= needed && distinctAxis(slice, model) >= 3) {
          try {
            fits[name + "/" + std::string(kdtree::toString(model))] =
                kdtree::toJson(kdtree::fitSamples(model, slice));
          } catch (const kdtree::DegenerateFitError& e) {
            std::cerr << "warning: " << e.what() << '\n';
          }
        }
      }
    }
    out << kdtree::makeReport(samples, fits).dump(2) << '\n';
  } else {
    kdtree::writeSamplesCsv(out, samples);
  }
  return kExitOk;
}

int runSweep(std::size_t n, const std::string& kList, std::uint64_t seed, std::size_t repeats,
             const std::string& outPath) {
  if (n < 1) throw UsageError("--n must be at least 1");
  const auto ks = parseCommaList(kList, "--k-list");
  for (const std::size_t k : ks) {
    if (k < 1) throw UsageError("--k-list: dimensions must be at least 1");
  }
  const auto sweep = kdtree::sweepDimensions(n, ks, seed, repeats, printSample);
  std::map<std::string, nlohmann::json> fits;
  fits["presort"] = sweep.presortFit ? kdtree::toJson(*sweep.presortFit) : nlohmann::json(nullptr);
  fits["median"] = sweep.medianFit ? kdtree::toJson(*sweep.medianFit) : nlohmann::json(nullptr);
  std::cout << kdtree::makeReport(sweep.samples, fits).dump(2) << '\n';
  if (!outPath.empty()) {
    std::ofstream file(outPath);
    if (!file) throw UsageError("cannot open --out path " + outPath);
    kdtree::writeSamplesCsv(file, sweep.samples);
  }
  return kExitOk;
}

int runAnalyze(const std::string& modelName, const std::string& inPath) {
  const auto model = kdtree::parseFitModel(modelName);
  std::ifstream in(inPath);
  if (!in) throw UsageError("cannot open --in path " + inPath);
  const auto samples = kdtree::readSamplesCsv(in);

  std::map<std::string, nlohmann::json> fits;
  for (const auto alg : {kdtree::Algorithm::Presort, kdtree::Algorithm::Median}) {
    const auto mine = filter(samples, alg);
    if (mine.empty()) continue;
    fits[std::string(kdtree::toString(alg))] = kdtree::toJson(kdtree::fitSamples(model, modelSlice(mine, model)));
  }
  if (fits.empty()) {
    throw kdtree::InsufficientDataError("no samples in " + inPath);
  }
  std::cout << kdtree::makeReport(samples, fits).dump(2) << '\n';
  return kExitOk;
}

int runVerify(std::size_t n, std::size_t k, std::uint64_t seed, std::size_t threads,
              const std::string& pointsPath) {
  kdtree::PointSet points;
  if (!pointsPath.empty()) {
    std::ifstream in(pointsPath);
    if (!in) throw UsageError("cannot open --points path " + pointsPath);
    points = kdtree::readPointFile(in);
  } else {
    if (n < 1 || k < 1) throw UsageError("--n and --k must be at least 1");
    points = kdtree::generatePoints(n, k, seed);
  }
  if (threads < 1) throw UsageError("--threads must be at least 1");

  kdtree::BuildStats stats;
  const auto presort = kdtree::buildPresort(points, threads, &stats);
  const auto median = kdtree::buildMedian(points, threads);
  const auto oracle = kdtree::buildNaiveOracle(points);

  bool ok = true;
  std::cout << "points: n=" << points.size() << " k=" << points.dimensions()
            << " duplicates_removed=" << stats.removedDuplicates << '\n';
  const std::pair<const char*, const kdtree::KdTree*> trees[] = {
      {"presort", &presort}, {"median", &median}, {"oracle", &oracle}};
  for (const auto& [name, tree] : trees) {
    const auto report = kdtree::checkValidity(*tree, points);
    std::cout << name << ": valid=" << (report.valid ? "yes" : "no")
              << " nodes=" << report.nodeCount
              << " depth=" << (report.depth ? std::to_string(*report.depth) : "empty")
              << " max_imbalance=" << report.maxImbalance << '\n';
    for (std::size_t i = 0; i < report.violations.size() && i < 10; ++i) {
      const auto& v = report.violations[i];
      std::cout << "  violation: tuple " << v.tuple << " depth " << v.depth << ": " << v.reason
                << '\n';
    }
    ok = ok && report.valid && report.maxImbalance <= 1;
  }
  const bool presortMatches = kdtree::treesEqual(presort, oracle);
  const bool medianMatches = kdtree::treesEqual(median, oracle);
  std::cout << "presort == oracle: " << (presortMatches ? "yes" : "no") << '\n'
            << "median == oracle: " << (medianMatches ? "yes" : "no") << '\n';
  ok = ok && presortMatches && medianMatches;
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced k-d tree builders: benchmarks, model fits and verification"};
  app.require_subcommand(1);

  std::string algorithm = "presort";
  std::size_t nMin = std::size_t{1} << 14;
  std::size_t nMax = std::size_t{1} << 18;
  std::size_t k = 4;
  std::string threads = "1";
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
  std::string outPath;
  auto* bench = app.add_subcommand("bench", "Time builds over n = n-min .. n-max (powers of two)");
  bench->add_option("--algorithm", algorithm, "presort, median or both")
      ->check(CLI::IsMember({"presort", "median", "both"}));
  bench->add_option("--n-min", nMin, "Smallest tuple count (power of two)");
  bench->add_option("--n-max", nMax, "Largest tuple count (power of two)");
  bench->add_option("--k", k, "Dimensions");
  bench->add_option("--threads", threads, "Comma-separated thread counts (powers of two)");
  bench->add_option("--repeats", repeats, "Runs per cell; the median total is reported");
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_option("--out", outPath, "Output path; .json writes a report with fits, else CSV");

  std::size_t sweepN = std::size_t{1} << 18;
  std::string kList = "2,3,4,5,6";
  auto* sweep = app.add_subcommand("sweep-k", "Time both algorithms across dimension counts");
  sweep->add_option("--n", sweepN, "Tuple count");
  sweep->add_option("--k-list", kList, "Comma-separated dimension counts");
  sweep->add_option("--seed", seed, "Generator seed");
  sweep->add_option("--repeats", repeats, "Runs per cell; the median total is reported");
  sweep->add_option("--out", outPath, "Also write the samples as CSV to this path");

  std::string model;
  std::string inPath;
  auto* analyze = app.add_subcommand("analyze", "Fit a timing model to a sample CSV");
  analyze->add_option("--model", model, "nlogn, amdahl or contention")
      ->required()
      ->check(CLI::IsMember({"nlogn", "amdahl", "contention"}));
  analyze->add_option("--in", inPath, "Sample CSV")->required();

  std::size_t verifyN = 1000;
  std::size_t verifyK = 3;
  std::size_t verifyThreads = 1;
  std::string pointsPath;
  auto* verify = app.add_subcommand("verify", "Build with all three builders and cross-check");
  verify->add_option("--n", verifyN, "Tuple count for generated data");
  verify->add_option("--k", verifyK, "Dimensions for generated data");
  verify->add_option("--seed", seed, "Generator seed");
  verify->add_option("--threads", verifyThreads, "Thread budget for the fast builders");
  verify->add_option("--points", pointsPath, "Read tuples from a point file instead");

  auto* demo = app.add_subcommand("demo", "Print the fifteen-tuple partition walkthrough");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (bench->parsed()) {
      return runBench(algorithm, nMin, nMax, k, threads, repeats, seed, outPath);
    }
    if (sweep->parsed()) {
      return runSweep(sweepN, kList, seed, repeats, outPath);
    }
    if (analyze->parsed()) {
      return runAnalyze(model, inPath);
    }
    if (verify->parsed()) {
      return runVerify(verifyN, verifyK, seed, verifyThreads, pointsPath);
    }
    if (demo->parsed()) {
      std::cout << kdtree::example::partitionTrace();
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const kdtree::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const kdtree::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerateFit;
  } catch (const kdtree::DegenerateFitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerateFit;
  } catch (const kdtree::EmptyInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitBadArgs;
}
