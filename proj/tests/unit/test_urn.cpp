#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "../common/test_support.hpp"
#include "urnkit/errors.hpp"
#include "urnkit/urn.hpp"

using namespace urnkit;

TEST_CASE("draw_color resolves right-closed cumulative intervals") {
  const std::vector<double> half{0.5, 0.5};
  CHECK(draw_color(half, 0.3) == 0);

  const std::vector<double> degenerate{1.0, 0.0, 0.0};
  CHECK(draw_color(degenerate, 0.0001) == 0);
  CHECK(draw_color(degenerate, 0.9999) == 0);

  // Boundary lands on the closed right end of the second bucket.
  const std::vector<double> mixed{0.2, 0.3, 0.5};
  CHECK(draw_color(mixed, 0.5) == 1);
  CHECK(draw_color(mixed, 0.2) == 0);
  CHECK(draw_color(mixed, 0.5000000001) == 2);
}

TEST_CASE("a forced draw updates every sufficient statistic") {
  std::vector<Family> families{Family::point_mass(2.0), Family::point_mass(2.0)};
  UrnConfig config;
  config.colors = 2;
  config.nondominated = 2;
  config.initial = {1.0, 1.0};
  config.schedule = ReinforcementSchedule(std::move(families));
  const auto validated = validate_config(std::move(config));

  UrnState state = initial_state(validated);
  apply_draw(state, 0, 2.0);
  CHECK(state.balls == std::vector<double>{3.0, 1.0});
  CHECK(state.draws == std::vector<std::int64_t>{1, 0});
  CHECK(state.reinf_sum == std::vector<double>{2.0, 0.0});
  CHECK(state.reinf_sq_sum == std::vector<double>{4.0, 0.0});
  CHECK(state.n == 1);
}

TEST_CASE("one-step conditional mean matches exhaustive enumeration") {
  const auto config = testing::e1_config();
  UrnState state = initial_state(config);
  // Skew the composition first so the check is not about symmetry.
  apply_draw(state, 0, 4.0);
  apply_draw(state, 2, 1.0);
  apply_draw(state, 0, 2.0);

  const double total = state.total_balls();
  for (int j = 0; j < config.colors(); ++j) {
    const double z_j = state.balls[static_cast<std::size_t>(j)] / total;
    // Enumerate (drawn color, atom) outcomes of the next step.
    double expected_delta = 0.0;
    for (int c = 0; c < config.colors(); ++c) {
      const double z_c = state.balls[static_cast<std::size_t>(c)] / total;
      for (const auto& atom : config.urn.schedule.family(c).atoms(state.n + 1)) {
        if (c == j) expected_delta += z_c * atom.prob * atom.value;
      }
    }
    CHECK(expected_delta ==
          doctest::Approx(z_j * config.urn.schedule.mean(j, state.n + 1)).epsilon(1e-12));
  }
}

TEST_CASE("exactly one draw count increments per step") {
  const auto config = testing::e1_config();
  Stream rng(5, 0);
  UrnState state = initial_state(config);
  for (int i = 0; i < 500; ++i) {
    const auto before = state.draws;
    step(state, config, rng);
    int changed = 0;
    std::int64_t total = 0;
    for (std::size_t j = 0; j < before.size(); ++j) {
      if (state.draws[j] != before[j]) {
        ++changed;
        CHECK(state.draws[j] == before[j] + 1);
      }
      total += state.draws[j];
    }
    CHECK(changed == 1);
    CHECK(total == state.n);
  }
}

TEST_CASE("one-step conditional law passes a chi-square audit") {
  // 13 cells: two five-atom colors and one three-atom color. 99.9% critical
  // value for 12 degrees of freedom is 32.9095.
  const auto config = testing::e1_config();
  UrnState base = initial_state(config);
  apply_draw(base, 0, 5.0);
  apply_draw(base, 1, 1.0);

  std::vector<std::vector<double>> atom_probs;
  std::vector<std::vector<double>> atom_values;
  for (int c = 0; c < config.colors(); ++c) {
    std::vector<double> probs, values;
    for (const auto& atom : config.urn.schedule.family(c).atoms(base.n + 1)) {
      probs.push_back(atom.prob);
      values.push_back(atom.value);
    }
    atom_probs.push_back(probs);
    atom_values.push_back(values);
  }

  const int samples = 100000;
  std::vector<std::vector<std::int64_t>> counts(3);
  for (int c = 0; c < 3; ++c) counts[static_cast<std::size_t>(c)].assign(atom_probs[static_cast<std::size_t>(c)].size(), 0);

  for (int i = 0; i < samples; ++i) {
    UrnState state = base;
    Stream rng(777, static_cast<std::uint64_t>(i));
    const auto balls_before = state.balls;
    step(state, config, rng);
    for (int c = 0; c < 3; ++c) {
      const std::size_t k = static_cast<std::size_t>(c);
      if (state.draws[k] > base.draws[k]) {
        const double added = state.balls[k] - balls_before[k];
        for (std::size_t a = 0; a < atom_values[k].size(); ++a)
          if (added == atom_values[k][a]) ++counts[k][a];
      }
    }
  }

  const double total = base.total_balls();
  double chi_square = 0.0;
  std::int64_t tallied = 0;
  for (int c = 0; c < 3; ++c) {
    const std::size_t k = static_cast<std::size_t>(c);
    const double z_c = base.balls[k] / total;
    for (std::size_t a = 0; a < atom_probs[k].size(); ++a) {
      const double expected = samples * z_c * atom_probs[k][a];
      const double diff = static_cast<double>(counts[k][a]) - expected;
      chi_square += diff * diff / expected;
      tallied += counts[k][a];
    }
  }
  CHECK(tallied == samples);
  CHECK(chi_square < 32.9095);
}

TEST_CASE("trajectories are a pure function of the seed") {
  const auto config = testing::e1_config();
  const std::vector<std::int64_t> cps{10, 100, 1000};
  const auto first = run(config, 1000, cps, {123, 4});
  const auto second = run(config, 1000, cps, {123, 4});
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].reinf_sum == second[i].reinf_sum);
    CHECK(first[i].draws == second[i].draws);
  }
  // A different stream index must give a different trajectory.
  const auto other = run(config, 1000, cps, {123, 5});
  CHECK(other.back().reinf_sum != first.back().reinf_sum);
}

TEST_CASE("running to horizon zero returns the initial state only") {
  const auto config = testing::e1_config();
  const std::vector<std::int64_t> cps{0};
  const auto states = run(config, 0, cps, {1, 0});
  REQUIRE(states.size() == 1);
  CHECK(states[0].n == 0);
  CHECK(states[0].balls == config.urn.initial);
}

TEST_CASE("checkpoint lists are validated") {
  const auto config = testing::e1_config();
  CHECK_THROWS_AS(run(config, 100, {}, {1, 0}), UrnError);
  try {
    run(config, 100, {}, {1, 0});
  } catch (const UrnError& e) {
    CHECK(e.code() == Errc::EmptyCheckpoints);
  }
  const std::vector<std::int64_t> outside{50, 200};
  try {
    run(config, 100, outside, {1, 0});
    FAIL("expected failure");
  } catch (const UrnError& e) {
    CHECK(e.code() == Errc::CheckpointOutOfRange);
  }
}

TEST_CASE("counting and support invariants hold along a long run") {
  const auto config = testing::e1_config();
  const std::vector<std::int64_t> cps{1, 10, 100, 1000, 10000};
  const auto states = run(config, 10000, cps, {99, 0});
  const double beta = config.support_bound();
  for (const auto& state : states) {
    std::int64_t draws = 0;
    for (int j = 0; j < state.colors(); ++j) {
      const std::size_t k = static_cast<std::size_t>(j);
      draws += state.draws[k];
      const double a_j = config.urn.initial[k];
      CHECK(state.balls[k] >= a_j);
      CHECK(state.balls[k] <= a_j + static_cast<double>(state.n) * beta);
      CHECK(state.balls[k] ==
            doctest::Approx(a_j + state.reinf_sum[k]).epsilon(1e-12));
      CHECK(state.reinf_sq_sum[k] <= beta * state.reinf_sum[k] + 1e-9);
    }
    CHECK(draws == state.n);
  }
}

TEST_CASE("default checkpoints form the quarter-decade grid") {
  const auto grid = default_checkpoints(10000);
  CHECK(grid.size() == 17);
  CHECK(grid.front() == 1);
  CHECK(grid.back() == 10000);
  CHECK(grid[4] == 10);
  CHECK(grid[8] == 100);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

  CHECK(default_checkpoints(0) == std::vector<std::int64_t>{0});
  CHECK(default_checkpoints(3) == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("limit proxy lives on the simplex and requires a deep horizon") {
  const auto config = testing::e1_config();
  TrajectoryRunner runner(config, {7, 0});
  runner.advance_to(100);
  try {
    runner.continue_to_proxy(5000);
    FAIL("expected failure");
  } catch (const UrnError& e) {
    CHECK(e.code() == Errc::HorizonTooSmall);
  }
  const auto proxy = runner.continue_to_proxy(10000);
  REQUIRE(proxy.zhat.size() == 2);
  double sum = 0.0;
  for (double z : proxy.zhat) {
    CHECK(z > 0.0);
    CHECK(z < 1.0);
    sum += z;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proxy.proxy_horizon == 10000);
  CHECK(proxy.source_seed == SeedRecord{7, 0});
}

TEST_CASE("continuation is append-only: emitted checkpoints do not move") {
  const auto config = testing::e1_config();
  TrajectoryRunner runner(config, {21, 3});
  runner.advance_to(500);
  const UrnState emitted = runner.state();
  runner.continue_to_proxy(50000);

  const std::vector<std::int64_t> cps{500};
  const auto replay = run(config, 500, cps, {21, 3});
  CHECK(replay[0].reinf_sum == emitted.reinf_sum);
  CHECK(replay[0].draws == emitted.draws);
}

TEST_CASE("default proxy horizon honors both the factor and the ceiling") {
  CHECK(default_proxy_horizon(10000) == 1000000);
  CHECK(default_proxy_horizon(100) == 1000000);
  CHECK(default_proxy_horizon(100000) == 10000000);
  CHECK(default_proxy_horizon(100, 500000) == 500000);
  try {
    default_proxy_horizon(10000, 500000);
    FAIL("expected failure");
  } catch (const UrnError& e) {
    CHECK(e.code() == Errc::HorizonTooSmall);
  }
}
