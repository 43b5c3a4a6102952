#include <doctest.h>

#include <cmath>
#include <vector>

#include "urnkit/errors.hpp"
#include "urnkit/ks.hpp"
#include "urnkit/normal.hpp"
#include "urnkit/rng.hpp"

using namespace urnkit;

TEST_CASE("a constructed near-perfect normal sample scores almost zero") {
  const int count = 1000;
  std::vector<double> samples;
  for (int i = 0; i < count; ++i)
    samples.push_back(normal_quantile((i + 0.5) / count));
  const auto result = ks_normality(samples);
  CHECK(result.stat <= 0.5 / count + 1e-6);
  CHECK(result.p_value > 0.999);
}

TEST_CASE("a point mass against a continuous target scores one half") {
  const std::vector<double> zeros(50, 0.0);
  const auto result = ks_normality(zeros);
  CHECK(result.stat == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(result.p_value < 1e-9);
}

TEST_CASE("uniform samples are rejected as normal at the 1% level") {
  // Direct CDF-distance oracle: uniforms live on [0,1] where the normal CDF
  // is already 0.5, so the distance approaches 0.5 from below.
  Stream rng(2024, 0);
  std::vector<double> samples;
  for (int i = 0; i < 2000; ++i) samples.push_back(rng.next_unit());
  const auto result = ks_normality(samples);
  CHECK(result.stat > 1.6276 / std::sqrt(2000.0));
  CHECK(result.stat == doctest::Approx(0.5).epsilon(0.05));
  CHECK(result.p_value < 0.01);

  // The same draws are accepted as uniform.
  const auto uniform = ks_uniform(samples);
  CHECK(uniform.p_value > 0.01);
}

TEST_CASE("sample count gate") {
  const std::vector<double> few(19, 0.0);
  try {
    ks_normality(few);
    FAIL("expected failure");
  } catch (const UrnError& e) {
    CHECK(e.code() == Errc::TooFewSamples);
  }
}

TEST_CASE("Kolmogorov tail brackets its 1% critical value") {
  // Frozen from the asymptotic distribution: Q(1.62762) is 1%.
  CHECK(kolmogorov_tail(1.62762) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(kolmogorov_tail(1.628) < 0.01);
  CHECK(kolmogorov_tail(1.627) > 0.00995);
  // Both series branches stay within [0,1] and agree near the switch.
  CHECK(kolmogorov_tail(0.99) == doctest::Approx(kolmogorov_tail(1.0)).epsilon(0.02));
  CHECK(kolmogorov_tail(0.2) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(kolmogorov_tail(3.0) < 1e-7);
}
