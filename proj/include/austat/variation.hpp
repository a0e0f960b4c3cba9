#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "austat/types.hpp"

namespace austat {

/// A real function tabulated on a k-dimensional rectangular grid. Storage is
/// flat with the last axis contiguous; axes are strictly increasing with at
/// least two points each.
class GridFunction {
public:
  GridFunction(std::vector<ArrXd> axes, ArrXd values);

  /// Tabulates f on the product grid of the given axes.
  static GridFunction tabulate(std::vector<ArrXd> axes,
                               const std::function<double(const VecXd&)>& f);

  Index dim() const { return static_cast<Index>(axes_.size()); }
  const std::vector<ArrXd>& axes() const { return axes_; }
  const ArrXd& flat() const { return values_; }
  Index axis_size(Index d) const { return axes_[static_cast<size_t>(d)].size(); }
  Index stride(Index d) const { return strides_[static_cast<size_t>(d)]; }

  Index flat_index(std::span<const Index> idx) const;
  double value_at(std::span<const Index> idx) const { return values_[flat_index(idx)]; }

private:
  std::vector<ArrXd> axes_;
  ArrXd values_;
  std::vector<Index> strides_;
};

ArrXd uniform_axis(double lo, double hi, Index count);

/// Alternating-sign corner sum of f over the rectangle with on-grid corners
/// c <= d: sum over subsets I of (-1)^|I| f(x_I), x_I taking c on I and d
/// elsewhere (the I = empty term is f(d)).
double rect_increment(const GridFunction& f, const VecXd& c, const VecXd& d);
double rect_increment_at(const GridFunction& f, std::span<const Index> c,
                         std::span<const Index> d);

/// Sum of |rect increment| over all minimal grid cells. For tabulated data
/// this attains the supremum over grid-aligned partitions: merging cells can
/// only lose mass by the triangle inequality.
double vitali_variation(const GridFunction& f);

/// The |I|-dimensional restriction pinning every axis outside I (1-based) to
/// its upper endpoint.
GridFunction face_restriction(const GridFunction& f, const std::vector<int>& keep);

struct VariationReport {
  double vitali = 0.0;
  std::optional<double> hk;
  std::map<std::vector<int>, double> per_face;
};

/// Vitali variation of every nonempty face restriction, summed into the
/// Hardy-Krause variation. Guarded at k <= 12 (2^k - 1 faces).
VariationReport hk_variation(const GridFunction& f);

struct LadderLevel {
  int level = 0;       // axes have 2^level + 1 uniform points
  double vitali = 0.0;
};

/// Vitali cell sums of f tabulated on uniform grids of 2^j + 1 points per
/// axis, j = j_min..j_max; stops early once successive sums differ by less
/// than rel_tol relatively. The sums are nondecreasing in j, giving monotone
/// lower bounds for continuous f.
std::vector<LadderLevel> vitali_refinement_ladder(
    const std::function<double(const VecXd&)>& f, const VecXd& lo, const VecXd& hi,
    int j_min = 4, int j_max = 9, double rel_tol = 1e-3);

}  // namespace austat
