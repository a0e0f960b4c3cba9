#include "austat/variance_est.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace austat {
namespace {

constexpr double kSqrtHalfPi = 1.2533141373155003;  // sqrt(pi/2)

std::vector<double> prefix_sums(ConstArrRef series) {
  std::vector<double> prefix(static_cast<size_t>(series.size()) + 1, 0.0);
  CompensatedSum acc;
  for (Index i = 0; i < series.size(); ++i) {
    acc.add(series[i]);
    prefix[static_cast<size_t>(i) + 1] = acc.value();
  }
  return prefix;
}

}  // namespace

Index block_length(Index n, double exponent) {
  if (n < 2) throw std::invalid_argument("block_length: need n >= 2");
  if (!(exponent > 0.0 && exponent < 1.0))
    throw std::invalid_argument("block_length: exponent must be in (0, 1)");
  const double raw = std::pow(static_cast<double>(n), exponent);
  auto ell = static_cast<Index>(std::floor(raw + 1e-9));
  return std::clamp<Index>(ell, 1, n - 1);
}

BlockEstimate b_n(ConstArrRef series, Index ell, BlockRange range) {
  const Index n = series.size();
  if (n < 2) throw std::invalid_argument("b_n: need series length >= 2");
  if (ell < 1 || ell > n) throw std::invalid_argument("b_n: need 1 <= ell <= n");

  const std::vector<double> prefix = prefix_sums(series);
  const double mean = prefix[static_cast<size_t>(n)] / static_cast<double>(n);
  const double centered_target = static_cast<double>(ell) * mean;
  const double inv_sqrt_ell = 1.0 / std::sqrt(static_cast<double>(ell));

  const Index j_first = range == BlockRange::Lemma ? 0 : 1;
  CompensatedSum acc;
  for (Index j = j_first; j <= n - ell; ++j) {
    const double block_sum =
        prefix[static_cast<size_t>(j + ell)] - prefix[static_cast<size_t>(j)];
    acc.add(std::abs(block_sum - centered_target) * inv_sqrt_ell);
  }
  const double value = acc.value() / static_cast<double>(n - ell + 1);
  return {ell, value, kSqrtHalfPi * value, n, BlockVariant::Oracle};
}

ArrXd rho1_hat_all(ConstArrRef values) {
  const Index n = values.size();
  if (n < 1) throw std::invalid_argument("rho1_hat_all: empty sample");
  std::vector<double> sorted(values.data(), values.data() + n);
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
  CompensatedSum acc;
  for (Index i = 0; i < n; ++i) {
    acc.add(sorted[static_cast<size_t>(i)]);
    prefix[static_cast<size_t>(i) + 1] = acc.value();
  }
  const double total = prefix[static_cast<size_t>(n)];

  ArrXd out(n);
  for (Index i = 0; i < n; ++i) {
    const double x = values[i];
    const auto r = static_cast<Index>(
        std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    const double abs_sum =
        x * static_cast<double>(2 * r - n) - 2.0 * prefix[static_cast<size_t>(r)] + total;
    out[i] = abs_sum / static_cast<double>(n);
  }
  return out;
}

BlockEstimate b_n_hat(ConstArrRef values, Index ell, BlockRange range) {
  BlockEstimate est = b_n(rho1_hat_all(values), ell, range);
  est.variant = BlockVariant::PlugIn;
  return est;
}

BlockEstimate sigma_u_hat(const Sample& sample, double exponent, BlockRange range) {
  if (sample.n() < 4) throw std::invalid_argument("sigma_u_hat: need n >= 4");
  return b_n_hat(sample.values, block_length(sample.n(), exponent), range);
}

}  // namespace austat
