#include "urnkit/urn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "urnkit/errors.hpp"

namespace urnkit {

double UrnState::total_balls() const {
  double total = 0.0;
  for (double b : balls) total += b;
  return total;
}

double UrnState::leading_balls(int nondominated) const {
  double total = 0.0;
  for (int j = 0; j < nondominated; ++j) total += balls[static_cast<std::size_t>(j)];
  return total;
}

UrnState initial_state(const ValidatedConfig& config) {
  UrnState state;
  const std::size_t d = static_cast<std::size_t>(config.colors());
  state.balls = config.urn.initial;
  state.draws.assign(d, 0);
  state.reinf_sum.assign(d, 0.0);
  state.reinf_sq_sum.assign(d, 0.0);
  return state;
}

int draw_color(std::span<const double> probs, double u) {
  double cum = 0.0;
  const int d = static_cast<int>(probs.size());
  for (int j = 0; j < d - 1; ++j) {
    cum += probs[static_cast<std::size_t>(j)];
    if (u <= cum) return j;
  }
  return d - 1;  // F_d is 1 by construction; rounding may leave cum a hair short
}

void apply_draw(UrnState& state, int color, double reinforcement) {
  const std::size_t j = static_cast<std::size_t>(color);
  state.balls[j] += reinforcement;
  state.draws[j] += 1;
  state.reinf_sum[j] += reinforcement;
  state.reinf_sq_sum[j] += reinforcement * reinforcement;
  state.n += 1;
}

namespace {

inline void step_with_scratch(UrnState& state, const ValidatedConfig& config, Stream& rng,
                              std::vector<double>& share) {
  const int d = state.colors();
  double total = 0.0;
  for (int j = 0; j < d; ++j) total += state.balls[static_cast<std::size_t>(j)];
  const double inv_total = 1.0 / total;
  for (int j = 0; j < d; ++j)
    share[static_cast<std::size_t>(j)] = state.balls[static_cast<std::size_t>(j)] * inv_total;

  const double u_draw = rng.next_unit();
  const int color = draw_color(share, u_draw);
  const double u_reinf = rng.next_unit();
  const double amount = config.urn.schedule.sample(color, state.n + 1, u_reinf);
  apply_draw(state, color, amount);
}

}  // namespace

void step(UrnState& state, const ValidatedConfig& config, Stream& rng) {
  std::vector<double> share(static_cast<std::size_t>(state.colors()));
  step_with_scratch(state, config, rng, share);
}

TrajectoryRunner::TrajectoryRunner(ValidatedConfig config, SeedRecord seed)
    : config_(std::move(config)),
      state_(initial_state(config_)),
      rng_(seed),
      seed_(seed),
      share_scratch_(static_cast<std::size_t>(config_.colors())) {}

void TrajectoryRunner::advance_to(std::int64_t target_n) {
  while (state_.n < target_n) step_with_scratch(state_, config_, rng_, share_scratch_);
}

LimitProxy TrajectoryRunner::continue_to_proxy(std::int64_t proxy_horizon) {
  if (proxy_horizon < 100 * state_.n)
    raise(Errc::HorizonTooSmall,
          "proxy horizon " + std::to_string(proxy_horizon) + " is below 100 * n = " +
              std::to_string(100 * state_.n));
  advance_to(proxy_horizon);
  LimitProxy proxy;
  proxy.proxy_horizon = proxy_horizon;
  proxy.source_seed = seed_;
  const int d0 = config_.nondominated();
  const double leading = state_.leading_balls(d0);
  proxy.zhat.resize(static_cast<std::size_t>(d0));
  for (int j = 0; j < d0; ++j)
    proxy.zhat[static_cast<std::size_t>(j)] = state_.balls[static_cast<std::size_t>(j)] / leading;
  return proxy;
}

std::vector<UrnState> run(const ValidatedConfig& config, std::int64_t horizon,
                          std::span<const std::int64_t> checkpoints, SeedRecord seed) {
  if (checkpoints.empty()) raise(Errc::EmptyCheckpoints, "no checkpoints requested");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 0 || checkpoints[i] > horizon)
      raise(Errc::CheckpointOutOfRange,
            "checkpoint " + std::to_string(checkpoints[i]) + " outside [0, horizon]");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      raise(Errc::CheckpointOutOfRange, "checkpoints must be strictly increasing");
  }

  TrajectoryRunner runner(config, seed);
  std::vector<UrnState> snapshots;
  snapshots.reserve(checkpoints.size());
  for (std::int64_t cp : checkpoints) {
    runner.advance_to(cp);
    snapshots.push_back(runner.state());
  }
  return snapshots;
}

LimitProxy limit_proxy(const ValidatedConfig& config, std::int64_t proxy_horizon,
                       SeedRecord seed) {
  TrajectoryRunner runner(config, seed);
  return runner.continue_to_proxy(proxy_horizon);
}

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon) {
  std::vector<std::int64_t> grid;
  if (horizon <= 0) {
    grid.push_back(0);
    return grid;
  }
  for (int k = 0;; ++k) {
    const auto cp = static_cast<std::int64_t>(std::ceil(std::pow(10.0, k / 4.0)));
    if (cp > horizon) break;
    if (grid.empty() || cp != grid.back()) grid.push_back(cp);
  }
  return grid;
}

std::int64_t default_proxy_horizon(std::int64_t inference_horizon, std::int64_t ceiling) {
  std::int64_t proxy = std::max<std::int64_t>(100 * inference_horizon, 1'000'000);
  if (ceiling > 0) {
    if (ceiling < 100 * inference_horizon)
      raise(Errc::HorizonTooSmall, "proxy ceiling is below 100 * horizon");
    proxy = std::min(proxy, ceiling);
  }
  return proxy;
}

}  // namespace urnkit
