#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "austat/generators.hpp"
#include "austat/types.hpp"
#include "austat/variance_est.hpp"

namespace austat {

/// z_{0.025} as used in the replication tables.
inline constexpr double kZQuantile975 = 1.959964;

struct SummaryStats {
  double mean = 0.0;
  double emse = 0.0;  // centered sum with r-1 denominator
  double median = 0.0;
  double skewness = 0.0;  // m3 / m2^{3/2}; 0 when m2 = 0
  double kurtosis = 0.0;  // m4 / m2^2 (non-excess); 0 when m2 = 0
};

SummaryStats summary_stats(ConstArrRef values);

/// Fraction of g_i inside the open interval g_bar +- h with half-width
/// h = 2 sqrt(pi/2) b_bar z_{0.025} / sqrt(n). The sqrt(pi/2) factor makes
/// the width consistent for sigma_U.
double coverage_probability(ConstArrRef g_values, double b_bar, Index n);

/// Kolmogorov-Smirnov distance between the empirical df of `values` and a
/// reference cdf.
double ks_distance(ConstArrRef values, const std::function<double(double)>& cdf);

/// One row of the replication tables.
struct ReplicationSummary {
  GeneratorScheme scheme;
  Index n = 0;
  Index r = 0;
  double g_bar = 0.0;
  double emse_g = 0.0;
  double cp_g = 0.0;
  double median_g = 0.0;
  double skewness_g = 0.0;
  double kurtosis_g = 0.0;
  double b_bar = 0.0;          // mean of the plug-in block estimates
  double emse_b = 0.0;         // E.M.S.E of the raw b_hat values
  double two_sigma_hat = 0.0;  // 2 sqrt(pi/2) b_bar
  std::optional<double> bias;  // |two_sigma_hat - 2 sigma_U| when 2 sigma_U is known
};

/// Runs r replications (Gini value and plug-in block estimate per sample)
/// and aggregates them. Replication i draws its own stream seeded from
/// (master_seed, i), and aggregation folds results in index order, so the
/// summary is bit-identical for any worker count. workers <= 0 means use
/// hardware concurrency.
ReplicationSummary run_table(const GeneratorScheme& scheme, Index n, Index r,
                             std::uint64_t master_seed, int workers = 0,
                             BlockRange range = BlockRange::Lemma,
                             double block_exponent = 0.6);

/// 2 sigma_U where the tables state it: ExpMin m = 2, 3, 10.
std::optional<double> two_sigma_u_reference(const GeneratorScheme& scheme);

inline constexpr std::uint64_t kLongRunOracleSeed = 1000003;

/// Long-run 2 sigma_U oracle: lag-window sum of empirical autocovariances of
/// rho1(X_i) with the exact rho1, over `lags` 0..max_lag. Deterministic in
/// seed and cached per argument tuple.
double long_run_two_sigma_u(const GeneratorScheme& scheme, Index n = 1000000,
                            Index max_lag = 50,
                            std::uint64_t seed = kLongRunOracleSeed);

struct CltDiagnostic {
  ArrXd z;  // sqrt(n) (g_i - theta) / (2 sigma_U)
  double skewness = 0.0;
  double kurtosis = 0.0;
  double ks_distance = 0.0;
  double two_sigma_u = 0.0;
};

/// Standardizes the replicated Gini values by the exact theta and the known
/// (or cached long-run, for NormalSum) 2 sigma_U; throws RequiresOracleError
/// when neither source applies.
CltDiagnostic clt_diagnostic(const GeneratorScheme& scheme, Index n, Index r,
                             std::uint64_t master_seed, int workers = 0);

struct SupDeviationPoint {
  Index n = 0;
  double statistic = 0.0;
  double u = 0.0;
  double p = 0.0;
};

/// sup over an x-grid spanning the sample range of
/// |sum_j (|X_j - x| - rho1(x))| / n^{1 + u/2 - p}, per n. The defaults give
/// the n^{7/10} normalizer. One seed drives all n (samples are nested
/// prefixes of the same stream).
std::vector<SupDeviationPoint> sup_deviation_series(const GeneratorScheme& scheme,
                                                    const std::vector<Index>& n_list,
                                                    double u, double p, Index grid_size,
                                                    std::uint64_t master_seed);

namespace detail {
/// Deterministic indexed parallel map: fn(i) for i in [0, count), any worker
/// count; results must be written to per-index slots by the caller.
void parallel_for_indexed(Index count, int workers, const std::function<void(Index)>& fn);
}  // namespace detail

}  // namespace austat
