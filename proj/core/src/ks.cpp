#include "urnkit/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "urnkit/errors.hpp"
#include "urnkit/normal.hpp"

namespace urnkit {

double kolmogorov_tail(double t) {
  if (t <= 0.0) return 1.0;
  if (t < 1.0) {
    // Jacobi-theta form converges fast for small t; the alternating series
    // does not.
    const double pi = std::numbers::pi;
    const double factor = std::sqrt(2.0 * pi) / t;
    double sum = 0.0;
    for (int k = 1;; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * pi * pi / (8.0 * t * t));
      sum += term;
      if (term < 1e-10) break;
    }
    return 1.0 - factor * sum;
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-10) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
  const std::size_t count = samples.size();
  if (count < 20) raise(Errc::TooFewSamples, "KS needs at least 20 samples");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  double stat = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double f = cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / static_cast<double>(count) - f;
    const double lower = f - static_cast<double>(i) / static_cast<double>(count);
    stat = std::max({stat, upper, lower});
  }

  KsResult result;
  result.stat = stat;
  result.p_value = kolmogorov_tail(std::sqrt(static_cast<double>(count)) * stat);
  return result;
}

KsResult ks_normality(std::span<const double> samples) {
  return ks_test(samples, [](double x) { return normal_cdf(x); });
}

KsResult ks_uniform(std::span<const double> samples) {
  return ks_test(samples, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

}  // namespace urnkit
