#include "kdtree/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace kdtree {
namespace {

constexpr std::array<std::string_view, 1> kNLogNNames{"m"};
constexpr std::array<std::string_view, 2> kAmdahlNames{"t_s", "t_1"};
constexpr std::array<std::string_view, 3> kContentionNames{"t_s", "t_1", "m_c"};

void requireSameLength(std::span<const double> x, std::span<const double> t) {
  if (x.size() != t.size()) {
    throw std::invalid_argument("fit: x and t have different lengths");
  }
}

std::size_t distinctCount(std::span<const double> x) {
  return std::set<double>(x.begin(), x.end()).size();
}

// Observed-vs-fitted correlation; an exact fit of constant data counts as r = 1.
double fitCorrelation(std::span<const double> observed, std::span<const double> fitted) {
  double residual = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    residual += (observed[i] - fitted[i]) * (observed[i] - fitted[i]);
    scale += observed[i] * observed[i];
  }
  if (residual <= 1e-24 * std::max(scale, 1.0)) {
    return 1.0;
  }
  return pearson(observed, fitted);
}

FitResult fitThreadModel(FitModel model, std::span<const double> q, std::span<const double> t) {
  const std::size_t columns = model == FitModel::Amdahl ? 2 : 3;
  std::vector<double> design;
  design.reserve(q.size() * columns);
  for (const double qi : q) {
    if (qi <= 0.0) {
      throw std::invalid_argument("fit: thread counts must be positive");
    }
    design.push_back(1.0);
    design.push_back(1.0 / qi);
    if (columns == 3) {
      design.push_back(qi - 1.0);
    }
  }
  FitResult fit;
  fit.model = model;
  fit.parameters = solveLeastSquares(design, columns, t);
  std::vector<double> fitted(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    fitted[i] = fit.predict(q[i]);
  }
  fit.r = fitCorrelation(t, fitted);
  if (model == FitModel::Contention) {
    fit.qStar = optimalThreads(fit.parameters[1], fit.parameters[2]);
  }
  return fit;
}

}  // namespace

std::string_view toString(FitModel model) {
  switch (model) {
    case FitModel::NLogN: return "nlogn";
    case FitModel::Amdahl: return "amdahl";
    case FitModel::Contention: return "contention";
  }
  return "unknown";
}

FitModel parseFitModel(std::string_view name) {
  if (name == "nlogn") return FitModel::NLogN;
  if (name == "amdahl") return FitModel::Amdahl;
  if (name == "contention") return FitModel::Contention;
  throw std::invalid_argument("unknown fit model '" + std::string(name) + "'");
}

std::span<const std::string_view> parameterNames(FitModel model) {
  switch (model) {
    case FitModel::NLogN: return kNLogNNames;
    case FitModel::Amdahl: return kAmdahlNames;
    case FitModel::Contention: return kContentionNames;
  }
  return {};
}

double FitResult::parameter(std::string_view name) const {
  const auto names = parameterNames(model);
  for (std::size_t i = 0; i < names.size() && i < parameters.size(); ++i) {
    if (names[i] == name) {
      return parameters[i];
    }
  }
  throw std::out_of_range("FitResult: no parameter '" + std::string(name) + "'");
}

double FitResult::predict(double x) const {
  switch (model) {
    case FitModel::NLogN: return parameters[0] * x * std::log2(x);
    case FitModel::Amdahl: return parameters[0] + parameters[1] / x;
    case FitModel::Contention: return parameters[0] + parameters[1] / x + parameters[2] * (x - 1.0);
  }
  return 0.0;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  requireSameLength(a, b);
  const double n = static_cast<double>(a.size());
  if (a.empty()) {
    return 0.0;
  }
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) {
    return 0.0;
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> solveLeastSquares(std::span<const double> design, std::size_t columns,
                                      std::span<const double> t) {
  if (columns == 0 || design.size() != t.size() * columns) {
    throw std::invalid_argument("solveLeastSquares: design matrix shape does not match t");
  }
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> a(design.data(), static_cast<Eigen::Index>(t.size()),
                                     static_cast<Eigen::Index>(columns));
  const Eigen::Map<const Eigen::VectorXd> rhs(t.data(), static_cast<Eigen::Index>(t.size()));

  const Eigen::MatrixXd normal = a.transpose() * a;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  lu.setThreshold(1e-12);
  if (lu.rank() < static_cast<Eigen::Index>(columns)) {
    throw DegenerateFitError("least squares: normal equations are singular");
  }
  const Eigen::VectorXd x = lu.solve(a.transpose() * rhs);
  return {x.data(), x.data() + x.size()};
}

FitResult fitNLogN(std::span<const double> n, std::span<const double> t) {
  requireSameLength(n, t);
  if (n.size() < 3 || distinctCount(n) < 3) {
    throw InsufficientDataError("nlogn fit needs at least 3 samples with distinct n");
  }
  std::vector<double> x(n.size());
  double sxt = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 1.0) {
      throw std::invalid_argument("nlogn fit: n must be at least 1");
    }
    x[i] = n[i] * std::log2(n[i]);
    sxt += x[i] * t[i];
    sxx += x[i] * x[i];
  }
  if (sxx == 0.0) {
    throw DegenerateFitError("nlogn fit: all n log2 n values are zero");
  }
  FitResult fit;
  fit.model = FitModel::NLogN;
  fit.parameters = {sxt / sxx};
  fit.r = pearson(x, t);
  return fit;
}

FitResult fitAmdahl(std::span<const double> q, std::span<const double> t) {
  requireSameLength(q, t);
  if (q.size() < 3) {
    throw InsufficientDataError("amdahl fit needs at least 3 samples");
  }
  return fitThreadModel(FitModel::Amdahl, q, t);
}

FitResult fitContention(std::span<const double> q, std::span<const double> t) {
  requireSameLength(q, t);
  if (q.size() < 4) {
    throw InsufficientDataError("contention fit needs at least 4 samples");
  }
  return fitThreadModel(FitModel::Contention, q, t);
}

LinearFit fitLinear(std::span<const double> x, std::span<const double> t) {
  requireSameLength(x, t);
  if (distinctCount(x) < 2) {
    throw InsufficientDataError("linear fit needs at least 2 distinct x values");
  }
  std::vector<double> design;
  design.reserve(x.size() * 2);
  for (const double xi : x) {
    design.push_back(xi);
    design.push_back(1.0);
  }
  const auto p = solveLeastSquares(design, 2, t);
  return {p[0], p[1], pearson(x, t)};
}

std::optional<double> optimalThreads(double t1, double mc) {
  if (!(mc > 0.0) || t1 < 0.0) {
    return std::nullopt;
  }
  return std::sqrt(t1 / mc);
}

}  // namespace kdtree
