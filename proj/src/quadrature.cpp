#include "austat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace austat {
namespace {

struct SimpsonPanel {
  double fa, fm, fb;
  double estimate;
};

SimpsonPanel panel(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb) {
  return {fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             const SimpsonPanel& whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const SimpsonPanel left = panel(f, a, m, whole.fa, f(lm), whole.fm);
  const SimpsonPanel right = panel(f, m, b, whole.fm, f(rm), whole.fb);
  const double delta = left.estimate + right.estimate - whole.estimate;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left.estimate + right.estimate + delta / 15.0;
  }
  return adapt(f, a, m, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (!(a <= b)) throw std::invalid_argument("integrate: need a <= b");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const SimpsonPanel whole = panel(f, a, b, f(a), f(m), f(b));
  return adapt(f, a, b, whole, abs_tol, max_depth);
}

}  // namespace austat
