#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "austat/types.hpp"

namespace austat {

enum class Family { ExpMin, NormalSum };

std::string family_name(Family family);

/// Recipe for a stationary associated sequence: moving minima of
/// exponentials (standard exponential marginal) or moving sums of normals
/// (standard normal marginal), window length m. m = 1 degenerates to i.i.d.
struct GeneratorScheme {
  Family family = Family::ExpMin;
  int m = 1;
  std::string label;
};

/// The six named schemes: S1-S3 are ExpMin with m = 2, 3, 10 and S4-S6 are
/// NormalSum with m = 2, 3, 10. Throws std::invalid_argument otherwise.
GeneratorScheme scheme_from_label(const std::string& label);

/// One realized series with its provenance. Immutable after creation;
/// regenerating with the same (scheme, n, seed) reproduces values bitwise.
struct Sample {
  ArrXd values;
  GeneratorScheme scheme;
  std::uint64_t seed = 0;

  Index n() const { return values.size(); }
};

/// Draws n + m - 1 underlying i.i.d. variables and windows them: minima of
/// Exp(mean m) for ExpMin, sums of N(0, 1/m) for NormalSum. Overlapping
/// windows induce the association; each X_j keeps the standard marginal.
Sample generate(const GeneratorScheme& scheme, Index n, std::uint64_t seed);

/// True Gini mean difference of the marginal: 1 for Exp(1), 2/sqrt(pi) for
/// N(0,1).
double marginal_theta(const GeneratorScheme& scheme);

/// Cov(X_1, X_{1+lag}) where a closed form exists: NormalSum gives
/// max(0, m-lag)/m; ExpMin gives 1 at lag 0 and 0 for lag >= m, and
/// nullopt in between (no closed form adopted).
std::optional<double> analytic_lag_cov(const GeneratorScheme& scheme, Index lag);

}  // namespace austat
