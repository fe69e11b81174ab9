#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "kdtree/bench.hpp"
#include "kdtree/core.hpp"
#include "kdtree/fit.hpp"

namespace kdtree {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader = "algorithm,n,k,q,sort_s,dedup_s,build_s,total_s";

/// Header line plus one row per sample. Doubles use the shortest text that
/// parses back to the same value, with '.' as the decimal separator.
void writeSamplesCsv(std::ostream& out, const std::vector<TimingSample>& samples);
std::vector<TimingSample> readSamplesCsv(std::istream& in);

nlohmann::json toJson(const TimingSample& sample);
/// {model, params: {name: value}, r, q_star}; q_star is null when undefined.
nlohmann::json toJson(const FitResult& fit);
nlohmann::json toJson(const LinearFit& fit);

/// {"samples": [...], "fits": {label: fit}}.
nlohmann::json makeReport(const std::vector<TimingSample>& samples,
                          const std::map<std::string, nlohmann::json>& fits);

/// One tuple per line, k signed decimal integers separated by single spaces.
void writePointFile(std::ostream& out, const PointSet& points);
PointSet readPointFile(std::istream& in);

}  // namespace kdtree
