#include <doctest.h>

#include <cmath>
#include <string>

#include "../common/test_support.hpp"
#include "urnkit/errors.hpp"
#include "urnkit/io.hpp"
#include "urnkit/mc.hpp"

using namespace urnkit;

namespace {

ExperimentSpec small_spec(StatKind kind) {
  ExperimentSpec spec;
  spec.config = testing::e1_config();
  spec.kind = kind;
  spec.horizon = 300;
  spec.proxy_horizon = 30000;
  spec.replications = 100;
  spec.base_seed = 555;
  spec.color = 0;
  spec.jstar = {0, 1};
  spec.alpha = 0.05;
  spec.lambda = 0.5;
  return spec;
}

std::string canonical(const McReport& report) {
  return io::report_to_json(report, "", /*include_timing=*/false) +
         io::replication_csv(report, "");
}

}  // namespace

TEST_CASE("reports are a pure function of the experiment") {
  for (StatKind kind : {StatKind::DstarNormalized, StatKind::CstarNormalized,
                        StatKind::Coverage, StatKind::Size}) {
    const auto spec = small_spec(kind);
    const auto once = replicate(spec, 1);
    const auto again = replicate(spec, 1);
    CHECK(canonical(once) == canonical(again));
  }
}

TEST_CASE("parallel and sequential execution agree bit for bit") {
  for (StatKind kind : {StatKind::DstarNormalized, StatKind::Size, StatKind::Divergence}) {
    auto spec = small_spec(kind);
    if (kind == StatKind::Divergence) spec.checkpoints = {10, 300};
    const auto sequential = replicate(spec, 1);
    const auto parallel2 = replicate(spec, 2);
    const auto parallel4 = replicate(spec, 4);
    CHECK(canonical(sequential) == canonical(parallel2));
    CHECK(canonical(sequential) == canonical(parallel4));
  }
}

TEST_CASE("experiment validation gates") {
  {
    auto spec = small_spec(StatKind::DstarNormalized);
    spec.replications = 99;
    try {
      replicate(spec, 1);
      FAIL("expected failure");
    } catch (const UrnError& e) {
      CHECK(e.code() == Errc::TooFewReplications);
    }
  }
  {
    auto spec = small_spec(StatKind::DstarNormalized);
    spec.proxy_horizon = 29999;  // below 100 * horizon
    try {
      replicate(spec, 1);
      FAIL("expected failure");
    } catch (const UrnError& e) {
      CHECK(e.code() == Errc::HorizonTooSmall);
    }
  }
  {
    auto spec = small_spec(StatKind::CstarNormalized);
    spec.jstar = {0};
    try {
      replicate(spec, 1);
      FAIL("expected failure");
    } catch (const UrnError& e) {
      CHECK(e.code() == Errc::SmallJstar);
    }
  }
}

TEST_CASE("scalar kinds aggregate moments and a distribution distance") {
  const auto report = replicate(small_spec(StatKind::DstarNormalized), 0);
  CHECK(report.values.size() == 100);
  CHECK(report.ks_stat > 0.0);
  CHECK(report.ks_stat <= 1.0);
  CHECK(report.ks_pvalue >= 0.0);
  CHECK(report.ks_pvalue <= 1.0);
  CHECK_FALSE(report.ks_vs_uniform);
  CHECK(report.variance > 0.0);
}

TEST_CASE("indicator kinds aggregate a rate with its binomial error") {
  const auto report = replicate(small_spec(StatKind::Coverage), 0);
  CHECK(report.rate >= 0.0);
  CHECK(report.rate <= 1.0);
  CHECK(report.rate_se ==
        doctest::Approx(std::sqrt(report.rate * (1 - report.rate) / 100)).epsilon(1e-12));
  for (double v : report.values) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("limit samples are tested against the uniform target") {
  auto spec = small_spec(StatKind::LimitSample);
  spec.config = testing::polya_config();
  spec.horizon = 0;
  spec.proxy_horizon = 2000;
  const auto report = replicate(spec, 0);
  CHECK(report.ks_vs_uniform);
  for (double v : report.values) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("series kinds produce one summary per checkpoint") {
  auto spec = small_spec(StatKind::LemmaConvergence);
  spec.checkpoints = {10, 50, 300};
  const auto report = replicate(spec, 0);
  REQUIRE(report.series.size() == 4);
  CHECK(report.series_names ==
        std::vector<std::string>{"s_over_n", "sstar_over_n", "decay", "stability_gap"});
  for (const auto& series : report.series) {
    CHECK(series.median.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(series.lo[i] <= series.median[i]);
      CHECK(series.median[i] <= series.hi[i]);
    }
  }
  // Growth rates hover near the limiting mean already at these depths.
  CHECK(report.series[0].median.back() == doctest::Approx(3.0).epsilon(0.25));

  auto diverge = small_spec(StatKind::Divergence);
  diverge.checkpoints = {10, 50};

  const auto diag = replicate(diverge, 0);
  CHECK(diag.series_names == std::vector<std::string>{"sqrt_n_dominated", "star_gap"});
  CHECK(diag.checkpoints == std::vector<std::int64_t>{10, 50});
}

TEST_CASE("series checkpoints default to the geometric grid") {
  auto spec = small_spec(StatKind::Divergence);
  spec.checkpoints.clear();
  const auto report = replicate(spec, 0);
  CHECK(report.checkpoints == default_checkpoints(300));
}

TEST_CASE("sorted quantiles interpolate order statistics") {
  const std::vector<double> values{1.0, 2.0, 3.0, 4.0};
  CHECK(sorted_quantile(values, 0.0) == 1.0);
  CHECK(sorted_quantile(values, 1.0) == 4.0);
  CHECK(sorted_quantile(values, 0.5) == doctest::Approx(2.5));
}

TEST_CASE("named wrappers pin their kinds") {
  auto spec = small_spec(StatKind::DstarNormalized);
  const auto coverage = coverage_experiment(spec, 1);
  CHECK(coverage.kind == StatKind::Coverage);
  const auto size = size_power_experiment(spec, {0, 1}, 1);
  CHECK(size.kind == StatKind::Size);
  auto lemma_spec = small_spec(StatKind::DstarNormalized);
  lemma_spec.checkpoints = {10, 50};

  const auto lemma = lemma_convergence_experiment(lemma_spec, 1);
  CHECK(lemma.kind == StatKind::LemmaConvergence);
}

TEST_CASE("statistic selector names round-trip") {
  for (StatKind kind : {StatKind::DstarNormalized, StatKind::CstarNormalized,
                        StatKind::DNormalized, StatKind::Coverage, StatKind::Size,
                        StatKind::Power, StatKind::LemmaConvergence, StatKind::Divergence,
                        StatKind::LimitSample}) {
    CHECK(stat_kind_from_name(stat_kind_name(kind)) == kind);
  }
  CHECK(stat_kind_from_name("k") == StatKind::CstarNormalized);
  CHECK_THROWS_AS(stat_kind_from_name("nope"), UrnError);
}
