#include "doctest.h"

#include <limits>

#include "fixtures.hpp"
#include "kdtree/bench.hpp"

using namespace kdtree;

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("point generation") {
  SUBCASE("deterministic per seed") {
    const auto a = generatePoints(1000, 3, 7);
    const auto b = generatePoints(1000, 3, 7);
    const auto c = generatePoints(1000, 3, 8);
    CHECK(std::ranges::equal(a.coordinates(), b.coordinates()));
    CHECK_FALSE(std::ranges::equal(a.coordinates(), c.coordinates()));
  }
  SUBCASE("coordinates fill the signed 32-bit range") {
    const auto points = generatePoints(20000, 2, 3);
    Coordinate lo = std::numeric_limits<Coordinate>::max();
    Coordinate hi = std::numeric_limits<Coordinate>::min();
    for (const Coordinate c : points.coordinates()) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    CHECK(lo >= std::numeric_limits<std::int32_t>::min());
    CHECK(hi <= std::numeric_limits<std::int32_t>::max());
    CHECK(lo < -2000000000);
    CHECK(hi > 2000000000);
  }
  SUBCASE("high bits of each draw, row major") {
    SplitMix64 rng(99);
    const auto points = generatePoints(2, 2, 99);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t d = 0; d < 2; ++d) {
        CHECK(points[i][d] == static_cast<std::int32_t>(static_cast<std::uint32_t>(rng.next() >> 32)));
      }
    }
  }
  SUBCASE("no duplicates in a typical draw") {
    const auto points = generatePoints(10000, 3, 1);
    CHECK(testing::distinctTupleCount(points) == 10000);
  }
  SUBCASE("empty requests are rejected") {
    CHECK_THROWS_AS(generatePoints(0, 3, 1), ContractViolation);
    CHECK_THROWS_AS(generatePoints(3, 0, 1), ContractViolation);
  }
}

TEST_CASE("algorithm names") {
  CHECK((parseAlgorithm("presort") == Algorithm::Presort));
  CHECK((parseAlgorithm("median") == Algorithm::Median));
  CHECK(std::string(toString(Algorithm::Median)) == "median");
  CHECK_THROWS_AS(parseAlgorithm("both"), std::invalid_argument);
}

TEST_CASE("pipeline timing") {
  const auto points = generatePoints(5000, 3, 2);
  for (const auto algorithm : {Algorithm::Presort, Algorithm::Median}) {
    const TimingSample s = timePipeline(algorithm, points, 2);
    CHECK((s.algorithm == algorithm));
    CHECK(s.n == 5000);
    CHECK(s.k == 3);
    CHECK(s.q == 2);
    CHECK(s.sortSeconds >= 0.0);
    CHECK(s.dedupSeconds >= 0.0);
    CHECK(s.buildSeconds > 0.0);
    CHECK(s.totalSeconds >= s.sortSeconds + s.dedupSeconds + s.buildSeconds);
  }
}

TEST_CASE("benchmark grid") {
  SUBCASE("totals grow with n") {
    BenchConfig config;
    config.algorithms = {Algorithm::Presort};
    for (std::size_t e = 14; e <= 18; ++e) config.nValues.push_back(std::size_t{1} << e);
    config.k = 3;
    std::size_t callbacks = 0;
    const auto samples = runBenchmark(config, [&](const TimingSample&) { ++callbacks; });
    REQUIRE(samples.size() == 5);
    CHECK(callbacks == 5);
    for (std::size_t i = 1; i < samples.size(); ++i) {
      CHECK(samples[i].n == 2 * samples[i - 1].n);
      CHECK(samples[i].totalSeconds > samples[i - 1].totalSeconds);
    }
  }
  SUBCASE("cell order and count do not depend on repeats") {
    BenchConfig config;
    config.algorithms = {Algorithm::Presort, Algorithm::Median};
    config.nValues = {256, 512};
    config.threadCounts = {1, 2};
    config.repeats = 1;
    const auto once = runBenchmark(config);
    config.repeats = 5;
    const auto five = runBenchmark(config);
    REQUIRE(once.size() == 8);
    REQUIRE(five.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK((once[i].algorithm == five[i].algorithm));
      CHECK(once[i].n == five[i].n);
      CHECK(once[i].q == five[i].q);
    }
    CHECK((once[0].algorithm == Algorithm::Presort));
    CHECK((once[4].algorithm == Algorithm::Median));
    CHECK(once[1].q == 2);
    CHECK(once[2].n == 512);
  }
  SUBCASE("bad configurations") {
    BenchConfig config;
    CHECK_THROWS_AS(runBenchmark(config), std::invalid_argument);
    config.nValues = {16};
    config.repeats = 0;
    CHECK_THROWS_AS(runBenchmark(config), std::invalid_argument);
    config.repeats = 1;
    config.threadCounts = {0};
    CHECK_THROWS_AS(runBenchmark(config), BenchmarkError);
  }
}

TEST_CASE("dimension sweep") {
  SUBCASE("one k gives no fit") {
    const std::vector<std::size_t> ks{3};
    const auto sweep = sweepDimensions(1000, ks, 1, 1);
    CHECK(sweep.samples.size() == 2);
    CHECK_FALSE(sweep.presortFit.has_value());
    CHECK_FALSE(sweep.medianFit.has_value());
  }
  SUBCASE("several k give a fit per algorithm") {
    const std::vector<std::size_t> ks{2, 3, 4};
    const auto sweep = sweepDimensions(2000, ks, 1, 1);
    REQUIRE(sweep.samples.size() == 6);
    CHECK((sweep.samples[0].algorithm == Algorithm::Presort));
    CHECK((sweep.samples[5].algorithm == Algorithm::Median));
    CHECK(sweep.samples[5].k == 4);
    CHECK(sweep.presortFit.has_value());
    CHECK(sweep.medianFit.has_value());
  }
}

TEST_CASE("fits over samples") {
  std::vector<TimingSample> samples;
  for (std::size_t q = 1; q <= 8; ++q) {
    TimingSample s;
    s.n = 1024;
    s.q = q;
    s.totalSeconds = 2.0 + 12.0 / static_cast<double>(q) + 0.5 * static_cast<double>(q - 1);
    samples.push_back(s);
  }
  const FitResult fit = fitSamples(FitModel::Contention, samples);
  CHECK(fit.parameter("t_1") == doctest::Approx(12.0));
  CHECK(fit.parameter("m_c") == doctest::Approx(0.5));
  CHECK_THROWS_AS(fitSamples(FitModel::NLogN, samples), InsufficientDataError);
}
