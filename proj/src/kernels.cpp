#include "austat/kernels.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace austat {

Kernel2 gini_kernel() {
  return {[](double x, double y) { return std::abs(x - y); }, "gini"};
}

double norm_pdf(double x) {
  static const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

double rho1_exact(MarginalKind marginal, double x) {
  switch (marginal) {
    case MarginalKind::Exp1:
      if (x < 0.0) throw std::invalid_argument("rho1_exact: Exp1 needs x >= 0");
      return x - 1.0 + 2.0 * std::exp(-x);
    case MarginalKind::StdNormal:
      return 2.0 * norm_pdf(x) + x * (2.0 * norm_cdf(x) - 1.0);
    case MarginalKind::Empirical:
      break;
  }
  throw std::invalid_argument("rho1_exact: marginal must be Exp1 or StdNormal");
}

double rho1_empirical(ConstArrRef values, double x) {
  if (values.size() < 1) throw std::invalid_argument("rho1_empirical: empty sample");
  return (values - x).abs().mean();
}

namespace {

double theta_exact_gini(MarginalKind kind) {
  // E|X - Y| for iid: 1 for Exp(1); X - Y ~ N(0,2) gives 2/sqrt(pi).
  return kind == MarginalKind::Exp1 ? 1.0 : 2.0 * std::numbers::inv_sqrtpi;
}

/// V-statistic theta: full n^2 double sum including i = j pairs.
double theta_empirical(const Kernel2& kernel, const ArrXd& x) {
  const Index n = x.size();
  if (n < 1) throw std::invalid_argument("h_decompose: empty empirical sample");
  CompensatedSum acc;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) acc.add(kernel.eval(x[i], x[j]));
  return acc.value() / (static_cast<double>(n) * static_cast<double>(n));
}

HDecomposition wire(const Kernel2& kernel, Marginal marginal,
                    std::function<double(double)> rho1, double theta) {
  HDecomposition d;
  d.theta = theta;
  d.rho1 = rho1;
  d.h1 = [rho1, theta](double x) { return rho1(x) - theta; };
  auto eval = kernel.eval;
  d.h2 = [eval, rho1, theta](double x, double y) {
    return eval(x, y) - rho1(x) - rho1(y) + theta;
  };
  d.marginal = std::move(marginal);
  d.kernel_descriptor = kernel.descriptor;
  return d;
}

}  // namespace

HDecomposition h_decompose(const Kernel2& kernel, const Marginal& marginal) {
  if (marginal.kind == MarginalKind::Empirical) {
    auto data = std::make_shared<ArrXd>(marginal.sample);
    const double theta = theta_empirical(kernel, *data);
    auto eval = kernel.eval;
    auto rho1 = [eval, data](double x) {
      CompensatedSum acc;
      for (Index j = 0; j < data->size(); ++j) acc.add(eval(x, (*data)[j]));
      return acc.value() / static_cast<double>(data->size());
    };
    return wire(kernel, marginal, std::move(rho1), theta);
  }
  if (kernel.descriptor != "gini") {
    throw UnsupportedOperationError(
        "h_decompose: exact marginals ship closed forms for the gini kernel only; "
        "use h_decompose_custom with a quadrature-backed rho1");
  }
  const MarginalKind kind = marginal.kind;
  auto rho1 = [kind](double x) { return rho1_exact(kind, x); };
  return wire(kernel, marginal, std::move(rho1), theta_exact_gini(kind));
}

HDecomposition h_decompose_custom(const Kernel2& kernel, const Marginal& marginal,
                                  std::function<double(double)> rho1, double theta) {
  return wire(kernel, marginal, std::move(rho1), theta);
}

}  // namespace austat
