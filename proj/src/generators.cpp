#include "austat/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "austat/rng.hpp"

namespace austat {

std::string family_name(Family family) {
  return family == Family::ExpMin ? "ExpMin" : "NormalSum";
}

GeneratorScheme scheme_from_label(const std::string& label) {
  if (label == "S1") return {Family::ExpMin, 2, "S1"};
  if (label == "S2") return {Family::ExpMin, 3, "S2"};
  if (label == "S3") return {Family::ExpMin, 10, "S3"};
  if (label == "S4") return {Family::NormalSum, 2, "S4"};
  if (label == "S5") return {Family::NormalSum, 3, "S5"};
  if (label == "S6") return {Family::NormalSum, 10, "S6"};
  throw std::invalid_argument("unknown scheme label: " + label);
}

Sample generate(const GeneratorScheme& scheme, Index n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate: n must be >= 2");
  if (scheme.m < 1) throw std::invalid_argument("generate: window m must be >= 1");

  const Index m = scheme.m;
  SplitMix64 rng(seed);

  ArrXd y(n + m - 1);
  if (scheme.family == Family::ExpMin) {
    const double mean = static_cast<double>(m);
    for (Index i = 0; i < y.size(); ++i) y[i] = rng.next_exponential(mean);
  } else {
    const double stddev = 1.0 / std::sqrt(static_cast<double>(m));
    for (Index i = 0; i < y.size(); ++i) y[i] = rng.next_normal(stddev);
  }

  ArrXd x(n);
  if (scheme.family == Family::ExpMin) {
    for (Index j = 0; j < n; ++j) x[j] = y.segment(j, m).minCoeff();
  } else {
    for (Index j = 0; j < n; ++j) x[j] = y.segment(j, m).sum();
  }
  return Sample{std::move(x), scheme, seed};
}

double marginal_theta(const GeneratorScheme& scheme) {
  if (scheme.family == Family::ExpMin) return 1.0;
  return 2.0 * std::numbers::inv_sqrtpi;  // E|X - Y| for X, Y iid N(0,1)
}

std::optional<double> analytic_lag_cov(const GeneratorScheme& scheme, Index lag) {
  if (lag < 0) throw std::invalid_argument("analytic_lag_cov: lag must be >= 0");
  if (lag == 0) return 1.0;  // Var of the standard marginal, both families
  const Index m = scheme.m;
  if (scheme.family == Family::NormalSum) {
    return lag >= m ? 0.0 : static_cast<double>(m - lag) / static_cast<double>(m);
  }
  if (lag >= m) return 0.0;  // disjoint windows are independent
  return std::nullopt;
}

}  // namespace austat
