#pragma once

#include <functional>
#include <span>

namespace urnkit {

struct KsResult {
  double stat = 0.0;     // sup-distance between empirical and target CDF
  double p_value = 0.0;  // asymptotic Kolmogorov tail of sqrt(R) * stat
};

// Two-sided Kolmogorov-Smirnov test against an arbitrary continuous CDF.
// Needs at least 20 samples (TooFewSamples).
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

// Against the standard normal.
KsResult ks_normality(std::span<const double> samples);

// Against uniform(0,1).
KsResult ks_uniform(std::span<const double> samples);

// P(K > t) for the Kolmogorov distribution; series terms truncated at 1e-10.
double kolmogorov_tail(double t);

}  // namespace urnkit
