#include "austat/jointdf.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace austat {
namespace {

void check_lag(Index n, Index k) {
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("jointdf: need 1 <= lag <= n - 1");
}

void check_grid(const ArrXd& grid, const char* name) {
  if (grid.size() < 1) throw std::invalid_argument(std::string("jointdf: empty ") + name);
  for (Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument(std::string("jointdf: ") + name +
                                  " must be strictly increasing");
}

class Fenwick {
public:
  explicit Fenwick(Index size) : tree_(static_cast<size_t>(size) + 1, 0) {}

  void add(Index pos) {  // 0-based
    for (Index i = pos + 1; i < static_cast<Index>(tree_.size()); i += i & -i)
      ++tree_[static_cast<size_t>(i)];
  }
  Index count_leq(Index pos) const {  // # inserted with index <= pos, 0-based
    Index total = 0;
    for (Index i = pos + 1; i > 0; i -= i & -i) total += tree_[static_cast<size_t>(i)];
    return total;
  }

private:
  std::vector<Index> tree_;
};

}  // namespace

double joint_df_point(ConstArrRef values, Index k, double s, double t) {
  const Index n = values.size();
  check_lag(n, k);
  Index hits = 0;
  for (Index i = 0; i + k < n; ++i) {
    if (values[i] <= s && values[i + k] <= t) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n - k);
}

JointDFEstimate joint_df_grid(ConstArrRef values, Index k, ArrXd grid_s, ArrXd grid_t) {
  const Index n = values.size();
  check_lag(n, k);
  check_grid(grid_s, "grid_s");
  check_grid(grid_t, "grid_t");

  const Index pairs = n - k;
  std::vector<std::pair<double, double>> lagged(static_cast<size_t>(pairs));
  for (Index i = 0; i < pairs; ++i) lagged[static_cast<size_t>(i)] = {values[i], values[i + k]};
  std::sort(lagged.begin(), lagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // Second coordinates ranked among themselves; a query at t needs the count
  // of inserted pairs whose second coordinate is <= t.
  std::vector<double> seconds(static_cast<size_t>(pairs));
  for (size_t i = 0; i < lagged.size(); ++i) seconds[i] = lagged[i].second;
  std::sort(seconds.begin(), seconds.end());

  Eigen::MatrixXd out(grid_s.size(), grid_t.size());
  Fenwick tree(pairs);
  size_t inserted = 0;
  for (Index a = 0; a < grid_s.size(); ++a) {
    while (inserted < lagged.size() && lagged[inserted].first <= grid_s[a]) {
      const auto rank = static_cast<Index>(
          std::lower_bound(seconds.begin(), seconds.end(), lagged[inserted].second) -
          seconds.begin());
      tree.add(rank);
      ++inserted;
    }
    for (Index b = 0; b < grid_t.size(); ++b) {
      const auto below = static_cast<Index>(
          std::upper_bound(seconds.begin(), seconds.end(), grid_t[b]) - seconds.begin());
      const Index hits = below == 0 ? 0 : tree.count_leq(below - 1);
      out(a, b) = static_cast<double>(hits) / static_cast<double>(pairs);
    }
  }
  return {k, std::move(grid_s), std::move(grid_t), std::move(out), n};
}

}  // namespace austat
