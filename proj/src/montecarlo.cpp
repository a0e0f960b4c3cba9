#include "austat/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "austat/kernels.hpp"
#include "austat/rng.hpp"
#include "austat/ustat.hpp"

namespace austat {
namespace {

constexpr double kSqrtHalfPi = 1.2533141373155003;  // sqrt(pi/2)

MarginalKind marginal_of(const GeneratorScheme& scheme) {
  return scheme.family == Family::ExpMin ? MarginalKind::Exp1 : MarginalKind::StdNormal;
}

struct SortedAbsDev {
  std::vector<double> sorted;
  std::vector<double> prefix;

  explicit SortedAbsDev(ConstArrRef values)
      : sorted(values.data(), values.data() + values.size()),
        prefix(static_cast<size_t>(values.size()) + 1, 0.0) {
    std::sort(sorted.begin(), sorted.end());
    CompensatedSum acc;
    for (size_t i = 0; i < sorted.size(); ++i) {
      acc.add(sorted[i]);
      prefix[i + 1] = acc.value();
    }
  }

  /// sum_j |X_j - x| via ranks in the sorted order.
  double operator()(double x) const {
    const auto n = static_cast<Index>(sorted.size());
    const auto r = static_cast<Index>(
        std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
    return x * static_cast<double>(2 * r - n) - 2.0 * prefix[static_cast<size_t>(r)] +
           prefix[static_cast<size_t>(n)];
  }
};

}  // namespace

namespace detail {

void parallel_for_indexed(Index count, int workers, const std::function<void(Index)>& fn) {
  int w = workers;
  if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
  w = std::max(1, std::min<int>(w, static_cast<int>(count)));
  if (w == 1) {
    for (Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const Index i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

SummaryStats summary_stats(ConstArrRef values) {
  const Index r = values.size();
  if (r < 2) throw std::invalid_argument("summary_stats: need r >= 2");

  CompensatedSum sum;
  for (Index i = 0; i < r; ++i) sum.add(values[i]);
  const double mean = sum.value() / static_cast<double>(r);

  CompensatedSum m2_acc, m3_acc, m4_acc;
  for (Index i = 0; i < r; ++i) {
    const double d = values[i] - mean;
    const double d2 = d * d;
    m2_acc.add(d2);
    m3_acc.add(d2 * d);
    m4_acc.add(d2 * d2);
  }
  const double m2 = m2_acc.value() / static_cast<double>(r);
  const double m3 = m3_acc.value() / static_cast<double>(r);
  const double m4 = m4_acc.value() / static_cast<double>(r);

  std::vector<double> sorted(values.data(), values.data() + r);
  std::sort(sorted.begin(), sorted.end());
  const size_t half = sorted.size() / 2;
  const double median = (r % 2 == 1) ? sorted[half] : 0.5 * (sorted[half - 1] + sorted[half]);

  SummaryStats s;
  s.mean = mean;
  s.emse = m2_acc.value() / static_cast<double>(r - 1);
  s.median = median;
  s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  s.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
  return s;
}

double coverage_probability(ConstArrRef g_values, double b_bar, Index n) {
  const Index r = g_values.size();
  if (r < 1) throw std::invalid_argument("coverage_probability: need r >= 1");
  CompensatedSum sum;
  for (Index i = 0; i < r; ++i) sum.add(g_values[i]);
  const double g_bar = sum.value() / static_cast<double>(r);
  const double h = 2.0 * kSqrtHalfPi * b_bar * kZQuantile975 / std::sqrt(static_cast<double>(n));
  Index hits = 0;
  for (Index i = 0; i < r; ++i) {
    if (g_values[i] > g_bar - h && g_values[i] < g_bar + h) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(r);
}

double ks_distance(ConstArrRef values, const std::function<double(double)>& cdf) {
  const Index n = values.size();
  if (n < 1) throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> sorted(values.data(), values.data() + n);
  std::sort(sorted.begin(), sorted.end());
  double d = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double c = cdf(sorted[static_cast<size_t>(i)]);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max({d, std::abs(c - lo), std::abs(hi - c)});
  }
  return d;
}

ReplicationSummary run_table(const GeneratorScheme& scheme, Index n, Index r,
                             std::uint64_t master_seed, int workers, BlockRange range,
                             double block_exponent) {
  if (r < 2) throw std::invalid_argument("run_table: need r >= 2");
  const Index ell = block_length(n, block_exponent);

  ArrXd g(r);
  ArrXd b_hat(r);
  detail::parallel_for_indexed(r, workers, [&](Index i) {
    const Sample sample =
        generate(scheme, n, derive_stream_seed(master_seed, static_cast<std::uint64_t>(i)));
    g[i] = gini_fast(sample.values).value;
    b_hat[i] = b_n_hat(sample.values, ell, range).b_n;
  });

  const SummaryStats sg = summary_stats(g);
  const SummaryStats sb = summary_stats(b_hat);

  ReplicationSummary row;
  row.scheme = scheme;
  row.n = n;
  row.r = r;
  row.g_bar = sg.mean;
  row.emse_g = sg.emse;
  row.cp_g = coverage_probability(g, sb.mean, n);
  row.median_g = sg.median;
  row.skewness_g = sg.skewness;
  row.kurtosis_g = sg.kurtosis;
  row.b_bar = sb.mean;
  row.emse_b = sb.emse;
  row.two_sigma_hat = 2.0 * kSqrtHalfPi * sb.mean;
  if (auto ref = two_sigma_u_reference(scheme)) row.bias = std::abs(row.two_sigma_hat - *ref);
  return row;
}

std::optional<double> two_sigma_u_reference(const GeneratorScheme& scheme) {
  if (scheme.family != Family::ExpMin) return std::nullopt;
  switch (scheme.m) {
    case 2: return 1.393864;
    case 3: return 1.639871;
    case 10: return 2.897561;
    default: return std::nullopt;
  }
}

double long_run_two_sigma_u(const GeneratorScheme& scheme, Index n, Index max_lag,
                            std::uint64_t seed) {
  using Key = std::tuple<int, int, Index, Index, std::uint64_t>;
  static std::map<Key, double> cache;
  static std::mutex cache_mutex;
  const Key key{static_cast<int>(scheme.family), scheme.m, n, max_lag, seed};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  if (n < max_lag + 2) throw std::invalid_argument("long_run_two_sigma_u: n too small");
  const Sample sample = generate(scheme, n, seed);
  const MarginalKind marginal = marginal_of(scheme);
  ArrXd y(n);
  for (Index i = 0; i < n; ++i) y[i] = rho1_exact(marginal, sample.values[i]);
  const double mean = y.mean();
  const ArrXd centered = y - mean;

  CompensatedSum lrv;
  for (Index lag = 0; lag <= max_lag; ++lag) {
    const Index pairs = n - lag;
    const double cov =
        (centered.head(pairs) * centered.tail(pairs)).sum() / static_cast<double>(pairs);
    lrv.add(lag == 0 ? cov : 2.0 * cov);
  }
  const double two_sigma = 2.0 * std::sqrt(std::max(0.0, lrv.value()));
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key] = two_sigma;
  }
  return two_sigma;
}

CltDiagnostic clt_diagnostic(const GeneratorScheme& scheme, Index n, Index r,
                             std::uint64_t master_seed, int workers) {
  if (r < 2) throw std::invalid_argument("clt_diagnostic: need r >= 2");
  double two_sigma = 0.0;
  if (auto ref = two_sigma_u_reference(scheme)) {
    two_sigma = *ref;
  } else if (scheme.family == Family::NormalSum) {
    two_sigma = long_run_two_sigma_u(scheme);
  } else {
    throw RequiresOracleError(
        "clt_diagnostic: no tabulated 2 sigma_U for this scheme; estimate it with "
        "long_run_two_sigma_u and standardize directly");
  }

  const double theta = marginal_theta(scheme);
  const double scale = std::sqrt(static_cast<double>(n)) / two_sigma;
  ArrXd z(r);
  detail::parallel_for_indexed(r, workers, [&](Index i) {
    const Sample sample =
        generate(scheme, n, derive_stream_seed(master_seed, static_cast<std::uint64_t>(i)));
    z[i] = scale * (gini_fast(sample.values).value - theta);
  });

  const SummaryStats s = summary_stats(z);
  CltDiagnostic diag;
  diag.z = std::move(z);
  diag.skewness = s.skewness;
  diag.kurtosis = s.kurtosis;
  diag.ks_distance = ks_distance(diag.z, [](double x) { return norm_cdf(x); });
  diag.two_sigma_u = two_sigma;
  return diag;
}

std::vector<SupDeviationPoint> sup_deviation_series(const GeneratorScheme& scheme,
                                                    const std::vector<Index>& n_list,
                                                    double u, double p, Index grid_size,
                                                    std::uint64_t master_seed) {
  if (!(u > 1.0)) throw std::invalid_argument("sup_deviation_series: need u > 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sup_deviation_series: need 0 < p < 1");
  if (grid_size < 2) throw std::invalid_argument("sup_deviation_series: need grid_size >= 2");

  const MarginalKind marginal = marginal_of(scheme);
  const double exponent = 1.0 + 0.5 * u - p;

  std::vector<SupDeviationPoint> out;
  out.reserve(n_list.size());
  for (const Index n : n_list) {
    const Sample sample = generate(scheme, n, master_seed);
    const SortedAbsDev abs_dev(sample.values);
    const double lo = sample.values.minCoeff();
    const double hi = sample.values.maxCoeff();
    const ArrXd grid = ArrXd::LinSpaced(grid_size, lo, hi);

    double sup = 0.0;
    for (Index i = 0; i < grid_size; ++i) {
      const double x = grid[i];
      const double centered = abs_dev(x) - static_cast<double>(n) * rho1_exact(marginal, x);
      sup = std::max(sup, std::abs(centered));
    }
    out.push_back({n, sup / std::pow(static_cast<double>(n), exponent), u, p});
  }
  return out;
}

}  // namespace austat
