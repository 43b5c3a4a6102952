#pragma once

namespace urnkit {

// Standard normal distribution function, Phi(x) = erfc(-x / sqrt(2)) / 2.
// Absolute error well below 1e-15 everywhere.
double normal_cdf(double x);

// Inverse of normal_cdf via the Wichura AS 241 rational approximation
// (relative error about 1e-15). Requires p in (0,1); BadProbability
// otherwise.
double normal_quantile(double p);

// Two-sided critical value: |N(0,1)| exceeds it with probability alpha.
// BadAlpha unless alpha lies in (0,1).
double normal_two_sided_critical(double alpha);

}  // namespace urnkit
