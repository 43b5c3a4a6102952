#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "urnkit/config.hpp"
#include "urnkit/rng.hpp"

namespace urnkit {

// Running sufficient statistics of one trajectory. A plain value: copy it
// across threads freely, no hidden state.
struct UrnState {
  std::int64_t n = 0;
  std::vector<double> balls;            // per-color ball count, a_j plus reinforcements
  std::vector<std::int64_t> draws;      // times each color has been drawn
  std::vector<double> reinf_sum;        // sum of reinforcements received per color
  std::vector<double> reinf_sq_sum;     // sum of squared reinforcements per color

  int colors() const noexcept { return static_cast<int>(balls.size()); }
  double total_balls() const;                 // S_n
  double leading_balls(int nondominated) const;  // S*_n, first d0 colors only
};

UrnState initial_state(const ValidatedConfig& config);

// Finite-horizon surrogate for a trajectory's own almost-sure color limits.
struct LimitProxy {
  std::vector<double> zhat;        // limiting shares of the non-dominated colors
  std::int64_t proxy_horizon = 0;  // time the surrogate was read off
  SeedRecord source_seed;
};

// Index of the unique bucket with F_{j-1} < u <= F_j, where F_j is the
// cumulative sum of probs. Right-closed on purpose: u equal to a boundary
// selects the lower color. Preconditions (probs on the simplex, u in (0,1))
// are the caller's job.
int draw_color(std::span<const double> probs, double u);

// Applies one forced transition: the given color was drawn and received the
// given reinforcement. Shared by the sampling step, unit tests, and the
// panel-driven simulation.
void apply_draw(UrnState& state, int color, double reinforcement);

// One sampled transition. Consumes exactly two uniforms in fixed order
// (draw first, reinforcement second) regardless of the family, so streams
// stay aligned across schedule variations.
void step(UrnState& state, const ValidatedConfig& config, Stream& rng);

// Owns one trajectory: the model, the state, and the stream, so the same
// trajectory can be continued past any checkpoint (the limit proxy depends
// on that). The config is copied in: a runner never dangles.
class TrajectoryRunner {
 public:
  TrajectoryRunner(ValidatedConfig config, SeedRecord seed);

  const UrnState& state() const noexcept { return state_; }
  const ValidatedConfig& config() const noexcept { return config_; }
  SeedRecord seed() const noexcept { return seed_; }

  void advance_to(std::int64_t target_n);

  // Reads the proxy off the same trajectory at proxy_horizon. Requires
  // proxy_horizon >= 100 * current n (HorizonTooSmall otherwise); advancing
  // is append-only, so statistics already emitted are unaffected.
  LimitProxy continue_to_proxy(std::int64_t proxy_horizon);

 private:
  ValidatedConfig config_;
  UrnState state_;
  Stream rng_;
  SeedRecord seed_;
  std::vector<double> share_scratch_;
};

// State copies at each checkpoint. Checkpoints must be sorted, within
// [0, horizon] (0 means the initial state) and non-empty.
std::vector<UrnState> run(const ValidatedConfig& config, std::int64_t horizon,
                          std::span<const std::int64_t> checkpoints, SeedRecord seed);

// Fresh trajectory advanced straight to proxy_horizon.
LimitProxy limit_proxy(const ValidatedConfig& config, std::int64_t proxy_horizon,
                       SeedRecord seed);

// Geometric grid ceil(10^(k/4)) intersected with [1, horizon].
std::vector<std::int64_t> default_checkpoints(std::int64_t horizon);

// max(100 * n, 1e6), optionally capped; the cap may not cut below 100 * n.
std::int64_t default_proxy_horizon(std::int64_t inference_horizon, std::int64_t ceiling = 0);

}  // namespace urnkit
