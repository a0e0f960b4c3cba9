#include "austat/ustat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace austat {
namespace {

double binomial_guarded(Index n, int k, double budget) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) {
    c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (c > budget) return c;
  }
  return c;
}

}  // namespace

UStatResult u_stat_degree2(const Kernel2& kernel, ConstArrRef values) {
  const Index n = values.size();
  if (n < 2) throw std::invalid_argument("u_stat_degree2: need n >= 2");
  CompensatedSum acc;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) acc.add(kernel.eval(values[i], values[j]));
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return {acc.value() / pairs, n, 2, kernel.descriptor};
}

UStatResult gini_fast(ConstArrRef values) {
  const Index n = values.size();
  if (n < 2) throw std::invalid_argument("gini_fast: need n >= 2");
  std::vector<double> sorted(values.data(), values.data() + n);
  std::sort(sorted.begin(), sorted.end());
  CompensatedSum acc;
  for (Index i = 0; i < n; ++i) {
    acc.add(static_cast<double>(2 * (i + 1) - n - 1) * sorted[static_cast<size_t>(i)]);
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return {acc.value() / (2.0 * pairs), n, 2, "gini"};
}

UStatResult u_stat_general(const KernelK& kernel, const std::string& descriptor,
                           ConstArrRef values, int k) {
  const Index n = values.size();
  if (k < 2) throw std::invalid_argument("u_stat_general: need k >= 2");
  if (k > n) throw std::invalid_argument("u_stat_general: need k <= n");
  constexpr double kBudget = 1e7;
  const double subsets = binomial_guarded(n, k, kBudget);
  if (subsets > kBudget) {
    throw ResourceLimitError("u_stat_general: C(n,k) exceeds the 1e7 subset budget");
  }

  std::vector<Index> idx(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
  std::vector<double> tuple(static_cast<size_t>(k));

  CompensatedSum acc;
  while (true) {
    for (int i = 0; i < k; ++i) tuple[static_cast<size_t>(i)] = values[idx[static_cast<size_t>(i)]];
    acc.add(kernel(std::span<const double>(tuple)));

    // next lexicographic combination
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
  }
  return {acc.value() / subsets, n, k, descriptor};
}

HProjectionTerms h_projection_terms(const HDecomposition& decomp, ConstArrRef values) {
  const Index n = values.size();
  if (n < 2) throw std::invalid_argument("h_projection_terms: need n >= 2");
  CompensatedSum h1_acc;
  for (Index i = 0; i < n; ++i) h1_acc.add(decomp.h1(values[i]));
  CompensatedSum h2_acc;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) h2_acc.add(decomp.h2(values[i], values[j]));
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return {h1_acc.value() / static_cast<double>(n), h2_acc.value() / pairs};
}

}  // namespace austat
