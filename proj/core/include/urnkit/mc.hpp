#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "urnkit/config.hpp"

namespace urnkit {

// What each replication contributes to the aggregate.
enum class StatKind {
  DstarNormalized,   // centered leading share over its estimated sd
  CstarNormalized,   // studentized frequency statistic under a candidate set
  DNormalized,       // centered full share over the same estimated sd
  Coverage,          // share interval covers the same-trajectory proxy
  Size,              // rejection of the candidate-set test (true set)
  Power,             // rejection of the candidate-set test (wrong set)
  LemmaConvergence,  // per-checkpoint medians of growth/decay diagnostics
  Divergence,        // per-checkpoint medians of dominated-mass diagnostics
  LimitSample,       // the proxy value itself, for distribution cross-checks
};

const char* stat_kind_name(StatKind kind);
StatKind stat_kind_from_name(const std::string& name);

// One replicated experiment, fully specified. Reports are a pure function
// of this struct: thread count and scheduling never change a single bit.
struct ExperimentSpec {
  ValidatedConfig config;
  StatKind kind = StatKind::DstarNormalized;
  std::int64_t horizon = 0;
  std::int64_t proxy_horizon = 0;  // required >= 100 * horizon where a proxy is read
  int replications = 0;            // >= 100
  std::uint64_t base_seed = 0;
  int color = 0;                   // 0-based designated color
  std::vector<int> jstar;          // 0-based candidate set
  bool union_mode = false;         // reject when any candidate color trips
  double alpha = 0.05;
  double lambda = 0.5;             // decay exponent for the lemma diagnostics
  std::vector<std::int64_t> checkpoints;  // series kinds; empty = geometric grid
};

struct SeriesStat {
  std::string name;
  std::vector<double> median;  // per checkpoint
  std::vector<double> lo;      // 0.5% quantile
  std::vector<double> hi;      // 99.5% quantile
};

struct McReport {
  StatKind kind = StatKind::DstarNormalized;
  std::int64_t horizon = 0;
  std::int64_t proxy_horizon = 0;
  int replications = 0;
  std::uint64_t base_seed = 0;
  int color = 0;
  std::vector<int> jstar;
  bool union_mode = false;
  double alpha = 0.0;
  double lambda = 0.0;

  // Scalar kinds. Moments, distances and rates are taken over the
  // replications whose statistic was defined (every candidate color drawn);
  // the rest are counted, never imputed.
  double mean = 0.0;
  double variance = 0.0;  // sample variance, denominator defined - 1
  double ks_stat = 0.0;
  double ks_pvalue = 0.0;
  bool ks_vs_uniform = false;
  int defined_count = 0;
  std::int64_t zero_variance_count = 0;  // replications where the indicator tripped

  // Indicator kinds.
  double rate = 0.0;
  double rate_se = 0.0;  // sqrt(rate * (1 - rate) / R)

  // Series kinds.
  std::vector<std::int64_t> checkpoints;
  std::vector<SeriesStat> series;

  // Raw per-replication values for CSV export. Scalar and indicator kinds
  // fill `values` and `defined`; series kinds fill
  // series_values[s][rep * ncp + cp].
  std::vector<double> values;
  std::vector<bool> defined;
  std::vector<std::string> series_names;
  std::vector<std::vector<double>> series_values;

  double wall_seconds = 0.0;  // excluded from any equality or hashing
  int threads_used = 1;

  bool is_series() const noexcept { return !series_names.empty(); }
  bool is_rate() const noexcept {
    return kind == StatKind::Coverage || kind == StatKind::Size || kind == StatKind::Power;
  }
};

// Runs the experiment; replications are independent work items scheduled
// over `threads` workers (0 = hardware concurrency), each writing into its
// own slot, so the aggregate is identical to the sequential run.
McReport replicate(const ExperimentSpec& spec, int threads = 0);

// Named entry points for the canned experiments; these just pin the kind.
McReport coverage_experiment(ExperimentSpec spec, int threads = 0);
McReport size_power_experiment(ExperimentSpec spec, std::vector<int> jstar, int threads = 0);
McReport lemma_convergence_experiment(ExperimentSpec spec, int threads = 0);

// Empirical quantile with linear interpolation; input must be sorted.
double sorted_quantile(const std::vector<double>& sorted, double q);

}  // namespace urnkit
