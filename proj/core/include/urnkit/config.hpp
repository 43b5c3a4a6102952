#pragma once

#include <string>
#include <vector>

#include "urnkit/schedule.hpp"

namespace urnkit {

// Declared urn model. Colors are 0-based internally; by convention the
// leading `nondominated` colors are the non-dominated ones (loaders apply
// the user's permutation before anything reaches this struct).
struct UrnConfig {
  int colors = 0;                   // d >= 2
  int nondominated = 0;             // d0 in [1, d]
  std::vector<double> initial;      // a_j > 0, one per color
  ReinforcementSchedule schedule;   // one family per color
  std::vector<std::string> labels;  // optional, for reports; default "1".."d"
};

// UrnConfig annotated with the limit quantities derived from the declared
// families, produced by validate_config.
struct ValidatedConfig {
  UrnConfig urn;
  double mean_limit = 0.0;               // m, common limiting mean of non-dominated colors
  std::vector<double> second_moment_limits;  // q_j for the non-dominated colors
  double lambda0 = 0.0;                  // largest limiting mean among dominated colors
  bool condition_1_star = false;         // 2*lambda0 < m
  bool condition_1 = false;              // some dominated limiting mean > m/2
  bool degenerate_single = false;        // d0 == 1: statistics computed, inference moot

  int colors() const noexcept { return urn.colors; }
  int nondominated() const noexcept { return urn.nondominated; }
  double support_bound() const noexcept { return urn.schedule.support_bound(); }
};

// Checks the declared model:
//   - a_j > 0 for every color (NonPositiveInitial)
//   - family support within the bound (BadSupport, raised by the schedule)
//   - mean(j, n) identical across non-dominated colors for every n
//     (MeanMismatch); supported families have means of the form a + b/n,
//     so equality of both coefficients settles all n at once
//   - m > lambda0 (DominationViolation)
ValidatedConfig validate_config(UrnConfig config);

}  // namespace urnkit
