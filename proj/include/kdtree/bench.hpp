#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kdtree/build_presort.hpp"
#include "kdtree/core.hpp"
#include "kdtree/fit.hpp"

namespace kdtree {

/*
 * SplitMix64: the state advances by 0x9E3779B97F4A7C15 per draw and is
 * mixed with the multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB
 * (shifts 30, 27, 31). Output is identical on every platform.
 */
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

/// n tuples of k coordinates uniform over the signed 32-bit range, drawn
/// row-major; each coordinate is the high 32 bits of one SplitMix64 draw.
PointSet generatePoints(std::size_t n, std::size_t k, std::uint64_t seed);

enum class Algorithm { Presort, Median };

std::string_view toString(Algorithm algorithm);
Algorithm parseAlgorithm(std::string_view name);

KdTree build(Algorithm algorithm, const PointSet& points, std::size_t threads,
             BuildStats* stats = nullptr);

struct TimingSample {
  Algorithm algorithm = Algorithm::Presort;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t q = 1;
  double sortSeconds = 0.0;
  double dedupSeconds = 0.0;
  double buildSeconds = 0.0;
  double totalSeconds = 0.0;

  friend bool operator==(const TimingSample&, const TimingSample&) = default;
};

/// A benchmark cell failed; the message names the cell.
class BenchmarkError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::Presort};
  std::vector<std::size_t> nValues;
  std::size_t k = 4;
  std::vector<std::size_t> threadCounts{1};
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
};

/// Times one full pipeline (sorts, duplicate removal, build) on points.
TimingSample timePipeline(Algorithm algorithm, const PointSet& points, std::size_t threads);

/*
 * Runs every (algorithm, n, q) cell in that nesting order, one build at a
 * time. Each cell reports the repeat with the median total time. Points for
 * a given n are generated once from the seed and shared by all its cells.
 */
std::vector<TimingSample> runBenchmark(
    const BenchConfig& config, const std::function<void(const TimingSample&)>& onSample = {});

struct DimensionSweep {
  std::vector<TimingSample> samples;
  /// Total seconds vs k per algorithm; nullopt with fewer than two k values.
  std::optional<LinearFit> presortFit;
  std::optional<LinearFit> medianFit;
};

/// Both algorithms, single threaded, fixed n, one cell per k.
DimensionSweep sweepDimensions(std::size_t n, std::span<const std::size_t> kValues,
                               std::uint64_t seed, std::size_t repeats = 3,
                               const std::function<void(const TimingSample&)>& onSample = {});

/// Fits over the totals of samples: x is n for NLogN and q for the thread models.
FitResult fitSamples(FitModel model, std::span<const TimingSample> samples);

}  // namespace kdtree
