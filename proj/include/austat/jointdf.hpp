#pragma once

#include "austat/generators.hpp"
#include "austat/types.hpp"

namespace austat {

/// Histogram estimate of P(X_1 <= s, X_{1+k} <= t) on a product grid.
struct JointDFEstimate {
  Index k = 1;
  ArrXd grid_s;
  ArrXd grid_t;
  Eigen::MatrixXd values;  // values(a, b) at (grid_s[a], grid_t[b])
  Index n = 0;
};

/// (1/(n-k)) sum_i 1{X_i <= s, X_{i+k} <= t}; indicators are closed (<=).
double joint_df_point(ConstArrRef values, Index k, double s, double t);
inline double joint_df_point(const Sample& sample, Index k, double s, double t) {
  return joint_df_point(sample.values, k, s, t);
}

/// Evaluates joint_df_point over the whole grid in O((n + |grid|^2) log n)
/// by sweeping the lag pairs sorted on the first coordinate into a Fenwick
/// tree over the second. Grids must be strictly increasing.
JointDFEstimate joint_df_grid(ConstArrRef values, Index k, ArrXd grid_s, ArrXd grid_t);
inline JointDFEstimate joint_df_grid(const Sample& sample, Index k, ArrXd grid_s,
                                     ArrXd grid_t) {
  return joint_df_grid(sample.values, k, std::move(grid_s), std::move(grid_t));
}

}  // namespace austat
