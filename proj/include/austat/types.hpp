#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace austat {

using Eigen::Index;
using VecXd = Eigen::VectorXd;
using ArrXd = Eigen::ArrayXd;
using ConstArrRef = Eigen::Ref<const Eigen::ArrayXd>;

/// Thrown when an operation would exceed its stated combinatorial budget.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown for (kernel, marginal) combinations with no shipped closed form.
class UnsupportedOperationError : public std::runtime_error {
public:
  explicit UnsupportedOperationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a diagnostic needs a long-run variance that has to be
/// estimated first (see montecarlo::long_run_two_sigma_u).
class RequiresOracleError : public std::runtime_error {
public:
  explicit RequiresOracleError(const std::string& what) : std::runtime_error(what) {}
};

/// Neumaier-compensated accumulator. Addition order still matters for the
/// last few ulps, so callers that need reproducibility must feed terms in a
/// fixed order.
class CompensatedSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace austat
