#include <doctest.h>

#include "../common/test_support.hpp"
#include "urnkit/config.hpp"
#include "urnkit/errors.hpp"

using namespace urnkit;

namespace {

Errc code_of(UrnConfig config) {
  try {
    validate_config(std::move(config));
  } catch (const UrnError& e) {
    return e.code();
  }
  FAIL("expected validation to fail");
  return Errc::BadConfig;
}

}  // namespace

TEST_CASE("two identical point-mass colors validate with the obvious limits") {
  UrnConfig config;
  config.colors = 2;
  config.nondominated = 2;
  config.initial = {1.0, 1.0};
  config.schedule =
      ReinforcementSchedule({Family::point_mass(3.0), Family::point_mass(3.0)});
  const auto validated = validate_config(std::move(config));
  CHECK(validated.mean_limit == 3.0);
  CHECK(validated.second_moment_limits == std::vector<double>{9.0, 9.0});
  CHECK(validated.lambda0 == 0.0);
  CHECK(validated.condition_1_star);
  CHECK_FALSE(validated.degenerate_single);
}

TEST_CASE("the three-color workhorse model validates with its book values") {
  const auto validated = testing::e1_config();
  CHECK(validated.mean_limit == 3.0);
  CHECK(validated.second_moment_limits == std::vector<double>{11.0, 11.0});
  CHECK(validated.lambda0 == 1.0);
  CHECK(validated.condition_1_star);  // 2 * 1 < 3
  CHECK_FALSE(validated.condition_1);
  CHECK(validated.support_bound() == 5.0);
}

TEST_CASE("a dominated color with the larger mean is rejected") {
  UrnConfig config;
  config.colors = 2;
  config.nondominated = 1;
  config.initial = {1.0, 1.0};
  config.schedule =
      ReinforcementSchedule({Family::point_mass(2.0), Family::point_mass(3.0)});
  CHECK(code_of(std::move(config)) == Errc::DominationViolation);
}

TEST_CASE("equality of means is required at every n, not just in the limit") {
  UrnConfig config;
  config.colors = 2;
  config.nondominated = 2;
  config.initial = {1.0, 1.0};
  // Same limit (1.0), different approach path.
  config.schedule = ReinforcementSchedule(
      {Family::coin_flip(2.0, 0.5, 0.9), Family::coin_flip(2.0, 0.5, 0.5)});
  CHECK(code_of(std::move(config)) == Errc::MeanMismatch);
}

TEST_CASE("non-positive initial composition is rejected") {
  UrnConfig config;
  config.colors = 2;
  config.nondominated = 2;
  config.initial = {1.0, 0.0};
  config.schedule =
      ReinforcementSchedule({Family::point_mass(1.0), Family::point_mass(1.0)});
  CHECK(code_of(std::move(config)) == Errc::NonPositiveInitial);
}

TEST_CASE("a single non-dominated color is accepted but flagged") {
  UrnConfig config;
  config.colors = 2;
  config.nondominated = 1;
  config.initial = {2.0, 1.0};
  config.schedule =
      ReinforcementSchedule({Family::point_mass(3.0), Family::point_mass(1.0)});
  const auto validated = validate_config(std::move(config));
  CHECK(validated.degenerate_single);
  CHECK(validated.lambda0 == 1.0);
}

TEST_CASE("the heavy-tail variant flips the divergence flags") {
  const auto validated = testing::e1_heavy_tail_config();
  CHECK(validated.lambda0 == 2.0);
  CHECK_FALSE(validated.condition_1_star);  // 2 * 2 >= 3
  CHECK(validated.condition_1);             // 2 > 3/2
}
