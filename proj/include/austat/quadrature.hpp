#pragma once

#include <functional>

namespace austat {

/// Adaptive Simpson quadrature of f over [a, b] with absolute tolerance.
/// Handles the |x-y| style kinks in this codebase by subdivision; depth is
/// capped so a pathological integrand terminates.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9, int max_depth = 52);

}  // namespace austat
