#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "../common/test_support.hpp"
#include "urnkit/inference.hpp"
#include "urnkit/urn.hpp"

// Plug-in estimators against the limit-formula oracles, evaluated at each
// trajectory's own proxy shares with the model's true moments.

using namespace urnkit;

TEST_CASE("variance estimators track the limit formulas on most trajectories") {
  const auto config = testing::e1_config();
  const double mean = 3.0;
  const std::vector<double> q{11.0, 11.0};
  const std::vector<double> sigma2{2.0, 2.0};
  const std::vector<int> jstar{0, 1};

  const int replications = 200;
  const std::int64_t horizon = 100000;
  const std::int64_t proxy_horizon = 10000000;

  std::vector<int> v_close(replications, 0);
  std::vector<int> u_close(replications, 0);
  testing::parallel_map(replications, [&](int r) {
    TrajectoryRunner runner(config, {4201, static_cast<std::uint64_t>(r)});
    runner.advance_to(horizon);
    const UrnState& state = runner.state();
    const double v_estimate = estimate_V(state, 0, 2);
    const double u_estimate = estimate_U(state, jstar, 0);
    const auto proxy = runner.continue_to_proxy(proxy_horizon);

    const double v_oracle = limit_V(proxy.zhat, 0, mean, q);
    const double u_oracle = limit_U_from_variances(proxy.zhat, 0, mean, sigma2);
    v_close[static_cast<std::size_t>(r)] = std::abs(v_estimate - v_oracle) <= 0.10 * v_oracle;
    u_close[static_cast<std::size_t>(r)] = std::abs(u_estimate - u_oracle) <= 0.10 * u_oracle;
  });

  int v_hits = 0, u_hits = 0;
  for (int r = 0; r < replications; ++r) {
    v_hits += v_close[static_cast<std::size_t>(r)];
    u_hits += u_close[static_cast<std::size_t>(r)];
  }
  CHECK(v_hits >= 180);  // 90% of 200
  CHECK(u_hits >= 180);
}
