#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "phonon/errors.hpp"

namespace phonon {

/// Least-squares slope of log|y| against log x.
inline double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs at least two matching points");
  Eigen::MatrixX2d design(static_cast<Eigen::Index>(x.size()), 2);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(std::abs(y[i]) > 0.0)) throw InputError("slope fit needs positive x and nonzero y");
    design(static_cast<Eigen::Index>(i), 0) = std::log(x[i]);
    design(static_cast<Eigen::Index>(i), 1) = 1.0;
    rhs(static_cast<Eigen::Index>(i)) = std::log(std::abs(y[i]));
  }
  const Eigen::Vector2d coeffs = design.colPivHouseholderQr().solve(rhs);
  return coeffs(0);
}

/// n points log-spaced from lo to hi inclusive.
inline std::vector<double> log_space(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw InputError("log range needs 0 < lo <= hi and n >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) return {lo};
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo * std::exp(step * i));
  return out;
}

}  // namespace phonon
