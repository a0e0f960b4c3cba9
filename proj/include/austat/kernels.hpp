#pragma once

#include <functional>
#include <string>

#include "austat/generators.hpp"
#include "austat/types.hpp"

namespace austat {

/// Degree-2 symmetric kernel.
struct Kernel2 {
  std::function<double(double, double)> eval;
  std::string descriptor;
};

/// The Gini mean-difference kernel (x, y) -> |x - y|.
Kernel2 gini_kernel();

enum class MarginalKind { Exp1, StdNormal, Empirical };

/// Marginal law a decomposition is taken against: one of the two exact
/// standard marginals, or the empirical measure of a sample.
struct Marginal {
  MarginalKind kind = MarginalKind::Exp1;
  ArrXd sample;  // Empirical only

  static Marginal exp1() { return {MarginalKind::Exp1, {}}; }
  static Marginal std_normal() { return {MarginalKind::StdNormal, {}}; }
  static Marginal empirical(ArrXd values) {
    return {MarginalKind::Empirical, std::move(values)};
  }
};

double norm_pdf(double x);
double norm_cdf(double x);

/// Closed-form first projection of the Gini kernel, rho1(x) = E|x - Y|:
///   Exp(1):  x - 1 + 2 e^{-x}           (x >= 0)
///   N(0,1):  2 phi(x) + x (2 Phi(x) - 1)
double rho1_exact(MarginalKind marginal, double x);

/// Empirical first projection (1/n) sum_j |X_j - x|; includes the self term
/// when x is a sample point.
double rho1_empirical(ConstArrRef values, double x);
inline double rho1_empirical(const Sample& sample, double x) {
  return rho1_empirical(sample.values, x);
}

/// theta, rho1 and the centered components of a degree-2 kernel. h2 is wired
/// from the same rho1/theta, so rho(x,y) = theta + h1(x) + h1(y) + h2(x,y)
/// holds exactly for every input.
struct HDecomposition {
  double theta = 0.0;
  std::function<double(double)> rho1;
  std::function<double(double)> h1;
  std::function<double(double, double)> h2;
  Marginal marginal;
  std::string kernel_descriptor;
};

/// Decomposes `kernel` against `marginal`. Exact marginals ship closed forms
/// for the Gini kernel only (UnsupportedOperationError otherwise); the
/// empirical marginal works for any kernel, with theta the full V-statistic
/// double sum over n^2 pairs and rho1(x) = (1/n) sum_j kernel(x, X_j).
HDecomposition h_decompose(const Kernel2& kernel, const Marginal& marginal);

/// Same wiring with a caller-supplied projection (e.g. quadrature-backed):
/// any (rho1, theta) pair yields an algebraically valid decomposition.
HDecomposition h_decompose_custom(const Kernel2& kernel, const Marginal& marginal,
                                  std::function<double(double)> rho1, double theta);

}  // namespace austat
