#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kdtree {

class InsufficientDataError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Normal equations are singular or numerically rank deficient.
class DegenerateFitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class FitModel {
  NLogN,       // t = m * n * log2(n)
  Amdahl,      // t = t_s + t_1 / q
  Contention,  // t = t_s + t_1 / q + m_c * (q - 1)
};

std::string_view toString(FitModel model);
FitModel parseFitModel(std::string_view name);

/// Parameter names in the order FitResult::parameters stores them.
std::span<const std::string_view> parameterNames(FitModel model);

struct FitResult {
  FitModel model = FitModel::NLogN;
  std::vector<double> parameters;
  double r = 0.0;
  /// Thread count minimizing the contention model; contention fits only.
  std::optional<double> qStar;

  double parameter(std::string_view name) const;
  /// Model prediction at x (n for NLogN, q otherwise).
  double predict(double x) const;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
};

/// Least squares through the origin in x = n log2 n; r is Pearson(x, t).
FitResult fitNLogN(std::span<const double> n, std::span<const double> t);

/// Least squares on the basis {1, 1/q}; r is Pearson(observed, fitted).
FitResult fitAmdahl(std::span<const double> q, std::span<const double> t);

/// Least squares on the basis {1, 1/q, q - 1}; qStar = sqrt(t_1 / m_c) when m_c > 0.
FitResult fitContention(std::span<const double> q, std::span<const double> t);

/// Ordinary least squares t = slope * x + intercept. Needs two distinct x.
LinearFit fitLinear(std::span<const double> x, std::span<const double> t);

/// Zero of dt/dq = m_c - t_1 / q^2, i.e. sqrt(t_1 / m_c); nullopt unless m_c > 0 and t_1 >= 0.
std::optional<double> optimalThreads(double t1, double mc);

/// Pearson correlation; 0 when either series has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

/*
 * Solves min ||A x - t|| through the normal equations. design is row-major
 * with `columns` entries per observation. Throws DegenerateFitError when
 * A^T A is rank deficient.
 */
std::vector<double> solveLeastSquares(std::span<const double> design, std::size_t columns,
                                      std::span<const double> t);

}  // namespace kdtree
