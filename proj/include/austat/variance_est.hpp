#pragma once

#include "austat/generators.hpp"
#include "austat/types.hpp"

namespace austat {

enum class BlockVariant { Oracle, PlugIn };

/// Which block index range the estimator averages over. Lemma keeps all
/// n - ell + 1 blocks (j = 0..n-ell); Simulation reproduces the j = 1..n-ell
/// sum (same 1/(n-ell+1) prefactor) for exact replication studies.
enum class BlockRange { Lemma, Simulation };

struct BlockEstimate {
  Index ell = 1;
  double b_n = 0.0;
  double sigma_hat = 0.0;  // sqrt(pi/2) * b_n
  Index n = 0;
  BlockVariant variant = BlockVariant::Oracle;
};

/// floor(n^exponent) clamped to [1, n-1]; the default exponent 3/5 gives the
/// block lengths used throughout the replication tables.
Index block_length(Index n, double exponent = 0.6);

/// Mean of normalized absolute centered block sums:
/// B_n = 1/(n-ell+1) * sum_j |S_j(ell) - ell*mean| / sqrt(ell).
BlockEstimate b_n(ConstArrRef series, Index ell, BlockRange range = BlockRange::Lemma);

/// rho1_hat(X_i) = (1/n) sum_j |X_j - X_i| at every sample point, in sample
/// order, computed in O(n log n) from the sorted prefix sums:
/// sum_j |X_j - x| = x*(2r - n) - 2*prefix(r) + total with r the rank of x.
ArrXd rho1_hat_all(ConstArrRef values);

/// Plug-in block estimate: b_n applied to the series rho1_hat(X_i).
BlockEstimate b_n_hat(ConstArrRef values, Index ell, BlockRange range = BlockRange::Lemma);
inline BlockEstimate b_n_hat(const Sample& sample, Index ell,
                             BlockRange range = BlockRange::Lemma) {
  return b_n_hat(sample.values, ell, range);
}

/// b_n_hat with the default block length; sigma_hat estimates sigma_U.
BlockEstimate sigma_u_hat(const Sample& sample, double exponent = 0.6,
                          BlockRange range = BlockRange::Lemma);

}  // namespace austat
