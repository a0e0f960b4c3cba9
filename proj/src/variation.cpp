#include "austat/variation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace austat {
namespace {

Index locate_on_axis(const ArrXd& axis, double coord, const char* what) {
  const double* begin = axis.data();
  const double* end = begin + axis.size();
  const double* it = std::lower_bound(begin, end, coord);
  if (it == end || *it != coord)
    throw std::invalid_argument(std::string("rect_increment: ") + what +
                                " corner is not a grid point");
  return static_cast<Index>(it - begin);
}

}  // namespace

GridFunction::GridFunction(std::vector<ArrXd> axes, ArrXd values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw std::invalid_argument("GridFunction: need k >= 1");
  Index total = 1;
  for (const ArrXd& axis : axes_) {
    if (axis.size() < 2) throw std::invalid_argument("GridFunction: each axis needs >= 2 points");
    for (Index i = 1; i < axis.size(); ++i)
      if (!(axis[i] > axis[i - 1]))
        throw std::invalid_argument("GridFunction: axes must be strictly increasing");
    total *= axis.size();
  }
  if (values_.size() != total)
    throw std::invalid_argument("GridFunction: values shape does not match axes");
  strides_.assign(axes_.size(), 1);
  for (auto d = static_cast<Index>(axes_.size()) - 2; d >= 0; --d)
    strides_[static_cast<size_t>(d)] =
        strides_[static_cast<size_t>(d) + 1] * axes_[static_cast<size_t>(d) + 1].size();
}

GridFunction GridFunction::tabulate(std::vector<ArrXd> axes,
                                    const std::function<double(const VecXd&)>& f) {
  const auto k = static_cast<Index>(axes.size());
  Index total = 1;
  for (const ArrXd& axis : axes) total *= axis.size();
  ArrXd values(total);
  VecXd point(k);
  std::vector<Index> idx(static_cast<size_t>(k), 0);
  for (Index flat = 0; flat < total; ++flat) {
    for (Index d = 0; d < k; ++d) point[d] = axes[static_cast<size_t>(d)][idx[static_cast<size_t>(d)]];
    values[flat] = f(point);
    for (auto d = static_cast<Index>(k) - 1; d >= 0; --d) {
      if (++idx[static_cast<size_t>(d)] < axes[static_cast<size_t>(d)].size()) break;
      idx[static_cast<size_t>(d)] = 0;
    }
  }
  return GridFunction(std::move(axes), std::move(values));
}

Index GridFunction::flat_index(std::span<const Index> idx) const {
  if (static_cast<Index>(idx.size()) != dim())
    throw std::invalid_argument("GridFunction: index arity mismatch");
  Index flat = 0;
  for (Index d = 0; d < dim(); ++d) {
    const Index i = idx[static_cast<size_t>(d)];
    if (i < 0 || i >= axis_size(d)) throw std::invalid_argument("GridFunction: index out of range");
    flat += i * strides_[static_cast<size_t>(d)];
  }
  return flat;
}

ArrXd uniform_axis(double lo, double hi, Index count) {
  if (count < 2 || !(hi > lo)) throw std::invalid_argument("uniform_axis: bad endpoints/count");
  return ArrXd::LinSpaced(count, lo, hi);
}

double rect_increment_at(const GridFunction& f, std::span<const Index> c,
                         std::span<const Index> d) {
  const Index k = f.dim();
  if (static_cast<Index>(c.size()) != k || static_cast<Index>(d.size()) != k)
    throw std::invalid_argument("rect_increment: corner arity mismatch");
  for (Index t = 0; t < k; ++t)
    if (c[static_cast<size_t>(t)] > d[static_cast<size_t>(t)])
      throw std::invalid_argument("rect_increment: need c <= d componentwise");

  const Index base = f.flat_index(d);
  CompensatedSum acc;
  // mask bit t set: coordinate t taken at the lower corner c.
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Index offset = 0;
    for (Index t = 0; t < k; ++t) {
      if (mask & (1u << t))
        offset -= (d[static_cast<size_t>(t)] - c[static_cast<size_t>(t)]) * f.stride(t);
    }
    const double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    acc.add(sign * f.flat()[base + offset]);
  }
  return acc.value();
}

double rect_increment(const GridFunction& f, const VecXd& c, const VecXd& d) {
  const Index k = f.dim();
  if (c.size() != k || d.size() != k)
    throw std::invalid_argument("rect_increment: corner arity mismatch");
  std::vector<Index> ci(static_cast<size_t>(k)), di(static_cast<size_t>(k));
  for (Index t = 0; t < k; ++t) {
    ci[static_cast<size_t>(t)] = locate_on_axis(f.axes()[static_cast<size_t>(t)], c[t], "lower");
    di[static_cast<size_t>(t)] = locate_on_axis(f.axes()[static_cast<size_t>(t)], d[t], "upper");
  }
  return rect_increment_at(f, ci, di);
}

double vitali_variation(const GridFunction& f) {
  const Index k = f.dim();
  const unsigned corners = 1u << k;

  // Corner offsets of a unit cell relative to its upper corner.
  std::vector<Index> offset(corners, 0);
  std::vector<double> sign(corners, 1.0);
  for (unsigned mask = 0; mask < corners; ++mask) {
    for (Index t = 0; t < k; ++t)
      if (mask & (1u << t)) offset[mask] -= f.stride(t);
    sign[mask] = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
  }

  std::vector<Index> cell(static_cast<size_t>(k), 0);  // lower corner of the cell
  CompensatedSum total;
  while (true) {
    Index upper = 0;
    for (Index t = 0; t < k; ++t)
      upper += (cell[static_cast<size_t>(t)] + 1) * f.stride(t);
    double delta = 0.0;
    for (unsigned mask = 0; mask < corners; ++mask)
      delta += sign[mask] * f.flat()[upper + offset[mask]];
    total.add(std::abs(delta));

    auto d = static_cast<Index>(k) - 1;
    for (; d >= 0; --d) {
      if (++cell[static_cast<size_t>(d)] < f.axis_size(d) - 1) break;
      cell[static_cast<size_t>(d)] = 0;
    }
    if (d < 0) break;
  }
  return total.value();
}

GridFunction face_restriction(const GridFunction& f, const std::vector<int>& keep) {
  const Index k = f.dim();
  if (keep.empty()) throw std::invalid_argument("face_restriction: index set must be nonempty");
  std::vector<int> dims = keep;
  std::sort(dims.begin(), dims.end());
  if (std::adjacent_find(dims.begin(), dims.end()) != dims.end())
    throw std::invalid_argument("face_restriction: duplicate dimension");
  for (int d : dims)
    if (d < 1 || d > k) throw std::invalid_argument("face_restriction: dimension out of range");

  std::vector<ArrXd> axes;
  axes.reserve(dims.size());
  for (int d : dims) axes.push_back(f.axes()[static_cast<size_t>(d - 1)]);

  // Pin every dropped axis to its upper endpoint.
  Index pinned_offset = 0;
  std::vector<bool> kept(static_cast<size_t>(k), false);
  for (int d : dims) kept[static_cast<size_t>(d - 1)] = true;
  for (Index t = 0; t < k; ++t)
    if (!kept[static_cast<size_t>(t)]) pinned_offset += (f.axis_size(t) - 1) * f.stride(t);

  Index total = 1;
  for (const ArrXd& axis : axes) total *= axis.size();
  ArrXd values(total);
  std::vector<Index> idx(dims.size(), 0);
  for (Index flat = 0; flat < total; ++flat) {
    Index src = pinned_offset;
    for (size_t j = 0; j < dims.size(); ++j)
      src += idx[j] * f.stride(static_cast<Index>(dims[j] - 1));
    values[flat] = f.flat()[src];
    for (auto j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
      if (++idx[static_cast<size_t>(j)] < axes[static_cast<size_t>(j)].size()) break;
      idx[static_cast<size_t>(j)] = 0;
    }
  }
  return GridFunction(std::move(axes), std::move(values));
}

VariationReport hk_variation(const GridFunction& f) {
  const Index k = f.dim();
  if (k > 12) throw ResourceLimitError("hk_variation: k > 12 (2^k - 1 faces)");

  VariationReport report;
  report.vitali = vitali_variation(f);
  CompensatedSum sum;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> dims;
    for (Index t = 0; t < k; ++t)
      if (mask & (1u << t)) dims.push_back(static_cast<int>(t) + 1);
    const bool full_set = mask == (1u << k) - 1;
    const double v = full_set ? report.vitali : vitali_variation(face_restriction(f, dims));
    report.per_face[dims] = v;
    sum.add(v);
  }
  report.hk = sum.value();
  return report;
}

std::vector<LadderLevel> vitali_refinement_ladder(
    const std::function<double(const VecXd&)>& f, const VecXd& lo, const VecXd& hi,
    int j_min, int j_max, double rel_tol) {
  if (lo.size() != hi.size() || lo.size() < 1)
    throw std::invalid_argument("vitali_refinement_ladder: bad domain");
  if (j_min < 1 || j_max < j_min)
    throw std::invalid_argument("vitali_refinement_ladder: bad level range");

  std::vector<LadderLevel> ladder;
  for (int j = j_min; j <= j_max; ++j) {
    std::vector<ArrXd> axes;
    for (Index d = 0; d < lo.size(); ++d)
      axes.push_back(uniform_axis(lo[d], hi[d], (Index{1} << j) + 1));
    ladder.push_back({j, vitali_variation(GridFunction::tabulate(std::move(axes), f))});
    if (ladder.size() >= 2) {
      const double prev = ladder[ladder.size() - 2].vitali;
      const double curr = ladder.back().vitali;
      if (std::abs(curr - prev) < rel_tol * std::max(1.0, std::abs(curr))) break;
    }
  }
  return ladder;
}

}  // namespace austat
