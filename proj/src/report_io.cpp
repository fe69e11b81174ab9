#include "kdtree/report_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace kdtree {
namespace {

std::string formatDouble(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) {
    throw FormatError("cannot format floating-point value");
  }
  return {buf.data(), end};
}

template <typename T>
T parseNumber(std::string_view field, std::size_t line, std::string_view what) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw FormatError("line " + std::to_string(line) + ": bad " + std::string(what) + " '" +
                      std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> splitFields(std::string_view row, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = row.find(sep, start);
    fields.push_back(row.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      return fields;
    }
    start = pos + 1;
  }
}

std::string_view stripCarriageReturn(std::string_view s) {
  return (!s.empty() && s.back() == '\r') ? s.substr(0, s.size() - 1) : s;
}

}  // namespace

void writeSamplesCsv(std::ostream& out, const std::vector<TimingSample>& samples) {
  out << kCsvHeader << '\n';
  for (const TimingSample& s : samples) {
    out << toString(s.algorithm) << ',' << s.n << ',' << s.k << ',' << s.q << ','
        << formatDouble(s.sortSeconds) << ',' << formatDouble(s.dedupSeconds) << ','
        << formatDouble(s.buildSeconds) << ',' << formatDouble(s.totalSeconds) << '\n';
  }
}

std::vector<TimingSample> readSamplesCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || stripCarriageReturn(line) != kCsvHeader) {
    throw FormatError(std::string("missing CSV header '") + kCsvHeader + "'");
  }
  std::vector<TimingSample> samples;
  std::size_t lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string_view row = stripCarriageReturn(line);
    if (row.empty()) {
      continue;
    }
    const auto f = splitFields(row, ',');
    if (f.size() != 8) {
      throw FormatError("line " + std::to_string(lineNo) + ": expected 8 fields");
    }
    TimingSample s;
    try {
      s.algorithm = parseAlgorithm(f[0]);
    } catch (const std::invalid_argument& e) {
      throw FormatError("line " + std::to_string(lineNo) + ": " + e.what());
    }
    s.n = parseNumber<std::size_t>(f[1], lineNo, "n");
    s.k = parseNumber<std::size_t>(f[2], lineNo, "k");
    s.q = parseNumber<std::size_t>(f[3], lineNo, "q");
    s.sortSeconds = parseNumber<double>(f[4], lineNo, "sort_s");
    s.dedupSeconds = parseNumber<double>(f[5], lineNo, "dedup_s");
    s.buildSeconds = parseNumber<double>(f[6], lineNo, "build_s");
    s.totalSeconds = parseNumber<double>(f[7], lineNo, "total_s");
    samples.push_back(s);
  }
  return samples;
}

nlohmann::json toJson(const TimingSample& s) {
  return {{"algorithm", toString(s.algorithm)},
          {"n", s.n},
          {"k", s.k},
          {"q", s.q},
          {"sort_s", s.sortSeconds},
          {"dedup_s", s.dedupSeconds},
          {"build_s", s.buildSeconds},
          {"total_s", s.totalSeconds}};
}

nlohmann::json toJson(const FitResult& fit) {
  nlohmann::json params = nlohmann::json::object();
  const auto names = parameterNames(fit.model);
  for (std::size_t i = 0; i < names.size() && i < fit.parameters.size(); ++i) {
    params[std::string(names[i])] = fit.parameters[i];
  }
  return {{"model", toString(fit.model)},
          {"params", params},
          {"r", fit.r},
          {"q_star", fit.qStar ? nlohmann::json(*fit.qStar) : nlohmann::json(nullptr)}};
}

nlohmann::json toJson(const LinearFit& fit) {
  return {{"model", "linear"},
          {"params", {{"slope", fit.slope}, {"intercept", fit.intercept}}},
          {"r", fit.r},
          {"q_star", nullptr}};
}

nlohmann::json makeReport(const std::vector<TimingSample>& samples,
                          const std::map<std::string, nlohmann::json>& fits) {
  nlohmann::json report;
  report["samples"] = nlohmann::json::array();
  for (const TimingSample& s : samples) {
    report["samples"].push_back(toJson(s));
  }
  report["fits"] = nlohmann::json::object();
  for (const auto& [label, fit] : fits) {
    report["fits"][label] = fit;
  }
  return report;
}

void writePointFile(std::ostream& out, const PointSet& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto t = points[i];
    for (std::size_t d = 0; d < t.size(); ++d) {
      if (d) out << ' ';
      out << t[d];
    }
    out << '\n';
  }
}

PointSet readPointFile(std::istream& in) {
  std::vector<Coordinate> coords;
  std::size_t k = 0;
  std::size_t lineNo = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string_view row = stripCarriageReturn(line);
    if (row.empty()) {
      continue;
    }
    const auto fields = splitFields(row, ' ');
    if (k == 0) {
      k = fields.size();
    } else if (fields.size() != k) {
      throw FormatError("line " + std::to_string(lineNo) + ": expected " + std::to_string(k) +
                        " coordinates, found " + std::to_string(fields.size()));
    }
    for (const auto f : fields) {
      coords.push_back(parseNumber<Coordinate>(f, lineNo, "coordinate"));
    }
  }
  if (k == 0) {
    throw FormatError("point file holds no tuples");
  }
  return PointSet(k, std::move(coords));
}

}  // namespace kdtree
