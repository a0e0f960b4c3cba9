#pragma once

#include <functional>
#include <span>
#include <string>

#include "austat/kernels.hpp"
#include "austat/types.hpp"

namespace austat {

struct UStatResult {
  double value = 0.0;
  Index n = 0;
  int degree = 2;
  std::string kernel;
};

/// Exact degree-2 U-statistic: 2/(n(n-1)) sum_{i<j} rho(X_i, X_j).
/// Pairwise terms are accumulated in index order with compensated summation.
UStatResult u_stat_degree2(const Kernel2& kernel, ConstArrRef values);
inline UStatResult u_stat_degree2(const Kernel2& kernel, const Sample& sample) {
  return u_stat_degree2(kernel, sample.values);
}

/// Gini mean difference in O(n log n): with the sample sorted ascending,
/// U_n = 2/(n(n-1)) sum_i (2i - n - 1) x_(i), i 1-based.
UStatResult gini_fast(ConstArrRef values);
inline UStatResult gini_fast(const Sample& sample) { return gini_fast(sample.values); }

using KernelK = std::function<double(std::span<const double>)>;

/// Degree-k U-statistic by lexicographic enumeration of all C(n,k) index
/// subsets. Guarded: C(n,k) > 10^7 throws ResourceLimitError.
UStatResult u_stat_general(const KernelK& kernel, const std::string& descriptor,
                           ConstArrRef values, int k);
inline UStatResult u_stat_general(const KernelK& kernel, const std::string& descriptor,
                                  const Sample& sample, int k) {
  return u_stat_general(kernel, descriptor, sample.values, k);
}

/// Sample H-decomposition terms: H1 = mean of h1(X_j), H2 = the degree-2
/// U-statistic of h2. theta + 2 H1 + H2 reconstructs U_n algebraically for
/// any (rho1, theta) the decomposition was wired with.
struct HProjectionTerms {
  double h1 = 0.0;
  double h2 = 0.0;
};

HProjectionTerms h_projection_terms(const HDecomposition& decomp, ConstArrRef values);
inline HProjectionTerms h_projection_terms(const HDecomposition& decomp,
                                           const Sample& sample) {
  return h_projection_terms(decomp, sample.values);
}

}  // namespace austat
