#include "urnkit/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "urnkit/errors.hpp"
#include "urnkit/inference.hpp"
#include "urnkit/ks.hpp"
#include "urnkit/statistics.hpp"
#include "urnkit/urn.hpp"

namespace urnkit {

const char* stat_kind_name(StatKind kind) {
  switch (kind) {
    case StatKind::DstarNormalized: return "dstar-normalized";
    case StatKind::CstarNormalized: return "cstar-normalized";
    case StatKind::DNormalized: return "d-normalized";
    case StatKind::Coverage: return "coverage";
    case StatKind::Size: return "size";
    case StatKind::Power: return "power";
    case StatKind::LemmaConvergence: return "lemma-convergence";
    case StatKind::Divergence: return "divergence";
    case StatKind::LimitSample: return "limit-sample";
  }
  return "unknown";
}

StatKind stat_kind_from_name(const std::string& name) {
  if (name == "dstar-normalized") return StatKind::DstarNormalized;
  if (name == "cstar-normalized" || name == "k") return StatKind::CstarNormalized;
  if (name == "d-normalized") return StatKind::DNormalized;
  if (name == "coverage") return StatKind::Coverage;
  if (name == "size") return StatKind::Size;
  if (name == "power") return StatKind::Power;
  if (name == "lemma-convergence") return StatKind::LemmaConvergence;
  if (name == "divergence") return StatKind::Divergence;
  if (name == "limit-sample") return StatKind::LimitSample;
  raise(Errc::BadConfig, "unknown statistic selector: " + name);
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

namespace {

bool needs_proxy(StatKind kind) {
  return kind == StatKind::DstarNormalized || kind == StatKind::DNormalized ||
         kind == StatKind::Coverage || kind == StatKind::LimitSample;
}

bool needs_jstar(StatKind kind) {
  return kind == StatKind::CstarNormalized || kind == StatKind::Size ||
         kind == StatKind::Power;
}

bool is_series_kind(StatKind kind) {
  return kind == StatKind::LemmaConvergence || kind == StatKind::Divergence;
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.replications < 100)
    raise(Errc::TooFewReplications, "experiments need at least 100 replications");
  if (spec.kind != StatKind::LimitSample && spec.horizon < 1)
    raise(Errc::BadConfig, "horizon must be >= 1");
  if (needs_proxy(spec.kind)) {
    const std::int64_t floor =
        spec.kind == StatKind::LimitSample ? 1 : 100 * spec.horizon;
    if (spec.proxy_horizon < floor)
      raise(Errc::HorizonTooSmall, "proxy horizon must be >= 100 * horizon");
  }
  if (needs_jstar(spec.kind) && spec.jstar.size() < 2)
    raise(Errc::SmallJstar, "candidate set needs at least 2 colors");
  if (spec.color < 0 || spec.color >= spec.config.colors())
    raise(Errc::BadConfig, "designated color out of range");
}

void parallel_for(int replications, int threads, const std::function<void(int)>& body) {
  int workers = threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  workers = std::clamp(workers, 1, replications);
  if (workers == 1) {
    for (int r = 0; r < replications; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const int r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= replications) return;
      try {
        body(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct ScalarOutcome {
  double value = 0.0;
  bool defined = true;          // candidate-set estimators existed
  bool indicator_zero = false;  // variance estimate was not positive
};

ScalarOutcome one_scalar(const ExperimentSpec& spec, int rep) {
  const SeedRecord seed{spec.base_seed, static_cast<std::uint64_t>(rep)};
  const int j = spec.color;
  const std::size_t jk = static_cast<std::size_t>(j);
  ScalarOutcome out;

  switch (spec.kind) {
    case StatKind::DstarNormalized:
    case StatKind::DNormalized: {
      TrajectoryRunner runner(spec.config, seed);
      runner.advance_to(spec.horizon);
      const UrnState& state = runner.state();
      const double v = estimate_V(state, j, spec.config.nondominated());
      const double centered = spec.kind == StatKind::DstarNormalized
                                  ? state.balls[jk] / state.leading_balls(spec.config.nondominated())
                                  : state.balls[jk] / state.total_balls();
      const auto proxy = runner.continue_to_proxy(spec.proxy_horizon);
      const double stat =
          std::sqrt(static_cast<double>(spec.horizon)) * (centered - proxy.zhat[jk]);
      if (v > 0.0) {
        out.value = stat / std::sqrt(v);
      } else {
        out.value = 0.0;
        out.indicator_zero = true;
      }
      return out;
    }
    case StatKind::CstarNormalized: {
      TrajectoryRunner runner(spec.config, seed);
      runner.advance_to(spec.horizon);
      // Per-color moment estimators exist only once every candidate color
      // has been drawn, which at finite n fails with small probability; such
      // replications are reported as undefined rather than invented.
      try {
        const auto report = test_H0(runner.state(), spec.jstar, spec.color, spec.alpha);
        for (const auto& color : report.per_color) {
          if (color.color == spec.color) {
            out.value = color.k;
            out.indicator_zero = color.u <= 0.0;
          }
        }
      } catch (const UrnError& e) {
        if (e.code() != Errc::UndefinedEstimator) throw;
        out.defined = false;
      }
      return out;
    }
    case StatKind::Coverage: {
      TrajectoryRunner runner(spec.config, seed);
      runner.advance_to(spec.horizon);
      const UrnState& state = runner.state();
      const double v = estimate_V(state, j, spec.config.nondominated());
      const double z_star = state.balls[jk] / state.leading_balls(spec.config.nondominated());
      const auto ci = confidence_interval(z_star, v, spec.horizon, spec.alpha);
      const auto proxy = runner.continue_to_proxy(spec.proxy_horizon);
      out.value = (proxy.zhat[jk] >= ci.lower && proxy.zhat[jk] <= ci.upper) ? 1.0 : 0.0;
      return out;
    }
    case StatKind::Size:
    case StatKind::Power: {
      TrajectoryRunner runner(spec.config, seed);
      runner.advance_to(spec.horizon);
      const std::optional<int> designated =
          spec.union_mode ? std::nullopt : std::optional<int>(spec.color);
      try {
        const auto report = test_H0(runner.state(), spec.jstar, designated, spec.alpha);
        out.value = report.reject ? 1.0 : 0.0;
      } catch (const UrnError& e) {
        if (e.code() != Errc::UndefinedEstimator) throw;
        out.defined = false;
      }
      return out;
    }
    case StatKind::LimitSample: {
      const auto proxy = limit_proxy(spec.config, spec.proxy_horizon, seed);
      out.value = proxy.zhat[jk];
      return out;
    }
    default:
      raise(Errc::BadConfig, "scalar evaluation of a series statistic");
  }
}

}  // namespace

McReport replicate(const ExperimentSpec& spec, int threads) {
  validate_spec(spec);
  const auto started = std::chrono::steady_clock::now();

  McReport report;
  report.kind = spec.kind;
  report.horizon = spec.horizon;
  report.proxy_horizon = needs_proxy(spec.kind) ? spec.proxy_horizon : 0;
  report.replications = spec.replications;
  report.base_seed = spec.base_seed;
  report.color = spec.color;
  report.jstar = spec.jstar;
  report.union_mode = spec.union_mode;
  report.alpha = spec.alpha;
  report.lambda = spec.kind == StatKind::LemmaConvergence ? spec.lambda : 0.0;

  const int workers =
      threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;
  report.threads_used = std::max(1, workers);

  if (!is_series_kind(spec.kind)) {
    const int count = spec.replications;
    std::vector<ScalarOutcome> outcomes(static_cast<std::size_t>(count));
    parallel_for(count, threads,
                 [&](int r) { outcomes[static_cast<std::size_t>(r)] = one_scalar(spec, r); });

    report.values.resize(static_cast<std::size_t>(count));
    report.defined.resize(static_cast<std::size_t>(count));
    std::vector<double> usable;
    usable.reserve(static_cast<std::size_t>(count));
    double sum = 0.0;
    for (int r = 0; r < count; ++r) {
      const auto& o = outcomes[static_cast<std::size_t>(r)];
      report.values[static_cast<std::size_t>(r)] = o.value;
      report.defined[static_cast<std::size_t>(r)] = o.defined;
      if (o.defined) {
        usable.push_back(o.value);
        sum += o.value;
      }
      if (o.indicator_zero) ++report.zero_variance_count;
    }
    report.defined_count = static_cast<int>(usable.size());
    const int defined = report.defined_count;
    if (defined == 0) raise(Errc::TooFewSamples, "every replication was undefined");
    // Aggregates are conditional on the statistic being defined; the
    // undefined share is reported, never imputed.
    report.mean = sum / defined;
    double sq = 0.0;
    for (double v : usable) sq += (v - report.mean) * (v - report.mean);
    report.variance = defined > 1 ? sq / (defined - 1) : 0.0;

    if (report.is_rate()) {
      report.rate = report.mean;
      report.rate_se = std::sqrt(report.rate * (1.0 - report.rate) / defined);
    } else {
      report.ks_vs_uniform = spec.kind == StatKind::LimitSample;
      const auto ks = report.ks_vs_uniform ? ks_uniform(usable) : ks_normality(usable);
      report.ks_stat = ks.stat;
      report.ks_pvalue = ks.p_value;
    }
  } else {
    std::vector<std::int64_t> cps =
        spec.checkpoints.empty() ? default_checkpoints(spec.horizon) : spec.checkpoints;
    if (cps.empty()) raise(Errc::EmptyCheckpoints, "series experiment has no checkpoints");
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (cps[i] < 1 || cps[i] > spec.horizon)
        raise(Errc::CheckpointOutOfRange, "checkpoints must lie in [1, horizon]");
      if (i > 0 && cps[i] <= cps[i - 1])
        raise(Errc::CheckpointOutOfRange, "checkpoints must be strictly increasing");
    }
    report.checkpoints = cps;

    const bool lemma = spec.kind == StatKind::LemmaConvergence;
    report.series_names = lemma
                              ? std::vector<std::string>{"s_over_n", "sstar_over_n", "decay",
                                                         "stability_gap"}
                              : std::vector<std::string>{"sqrt_n_dominated", "star_gap"};
    const std::size_t ncp = cps.size();
    const std::size_t nseries = report.series_names.size();
    const int count = spec.replications;
    report.series_values.assign(nseries,
                                std::vector<double>(static_cast<std::size_t>(count) * ncp, 0.0));

    // The stability gap compares each checkpoint against its double, so the
    // lemma trajectories run to 2 * last checkpoint.
    std::vector<std::int64_t> visit = cps;
    if (lemma) {
      for (std::int64_t cp : cps) visit.push_back(2 * cp);
      std::sort(visit.begin(), visit.end());
      visit.erase(std::unique(visit.begin(), visit.end()), visit.end());
    }

    const int d0 = spec.config.nondominated();
    const int d = spec.config.colors();
    const std::size_t jk = static_cast<std::size_t>(spec.color);
    const double lambda = spec.lambda;
    if (lemma) {
      const double floor = spec.config.lambda0 / spec.config.mean_limit;
      if (!(lambda > floor) || lambda > 1.0)
        raise(Errc::LambdaOutOfRange, "lambda must lie in (lambda0/m, 1]");
    }

    parallel_for(count, threads, [&](int r) {
      TrajectoryRunner runner(spec.config,
                              SeedRecord{spec.base_seed, static_cast<std::uint64_t>(r)});
      std::vector<UrnState> states;
      states.reserve(visit.size());
      for (std::int64_t target : visit) {
        runner.advance_to(target);
        states.push_back(runner.state());
      }
      const auto state_at = [&](std::int64_t n) -> const UrnState& {
        const auto it = std::lower_bound(visit.begin(), visit.end(), n);
        return states[static_cast<std::size_t>(it - visit.begin())];
      };
      for (std::size_t c = 0; c < ncp; ++c) {
        const UrnState& state = state_at(cps[c]);
        const double n = static_cast<double>(state.n);
        double dominated = 0.0;
        const double total = state.total_balls();
        for (int i = d0; i < d; ++i)
          dominated += state.balls[static_cast<std::size_t>(i)] / total;
        const std::size_t slot = static_cast<std::size_t>(r) * ncp + c;
        if (lemma) {
          report.series_values[0][slot] = total / n;
          report.series_values[1][slot] = state.leading_balls(d0) / n;
          report.series_values[2][slot] = std::pow(n, 1.0 - lambda) * dominated;
          const UrnState& doubled = state_at(2 * cps[c]);
          report.series_values[3][slot] =
              std::abs(state.balls[jk] / total - doubled.balls[jk] / doubled.total_balls());
        } else {
          report.series_values[0][slot] = std::sqrt(n) * dominated;
          const double z_star = state.balls[jk] / state.leading_balls(d0);
          const double z_full = state.balls[jk] / total;
          report.series_values[1][slot] = std::sqrt(n) * (z_star - z_full);
        }
      }
    });

    for (std::size_t s = 0; s < nseries; ++s) {
      SeriesStat stat;
      stat.name = report.series_names[s];
      stat.median.resize(ncp);
      stat.lo.resize(ncp);
      stat.hi.resize(ncp);
      std::vector<double> column(static_cast<std::size_t>(count));
      for (std::size_t c = 0; c < ncp; ++c) {
        for (int r = 0; r < count; ++r)
          column[static_cast<std::size_t>(r)] =
              report.series_values[s][static_cast<std::size_t>(r) * ncp + c];
        std::sort(column.begin(), column.end());
        stat.median[c] = sorted_quantile(column, 0.5);
        stat.lo[c] = sorted_quantile(column, 0.005);
        stat.hi[c] = sorted_quantile(column, 0.995);
      }
      report.series.push_back(std::move(stat));
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

McReport coverage_experiment(ExperimentSpec spec, int threads) {
  spec.kind = StatKind::Coverage;
  return replicate(spec, threads);
}

McReport size_power_experiment(ExperimentSpec spec, std::vector<int> jstar, int threads) {
  if (spec.kind != StatKind::Power) spec.kind = StatKind::Size;
  spec.jstar = std::move(jstar);
  return replicate(spec, threads);
}

McReport lemma_convergence_experiment(ExperimentSpec spec, int threads) {
  spec.kind = StatKind::LemmaConvergence;
  return replicate(spec, threads);
}

}  // namespace urnkit
