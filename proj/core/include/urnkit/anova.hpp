#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urnkit/inference.hpp"
#include "urnkit/rng.hpp"
#include "urnkit/urn.hpp"

namespace urnkit {

// A fully observed reinforcement panel: one row per time step, one column
// per color, every cell in [0, support_bound]. No urn is attached; the
// assignment indicators get simulated.
struct ObservedPanel {
  std::int64_t rows = 0;
  int cols = 0;
  std::vector<double> data;         // row-major
  std::vector<std::string> labels;  // column names
  double support_bound = 0.0;       // defaults to the max entry

  double at(std::int64_t row, int col) const {
    return data[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) +
                static_cast<std::size_t>(col)];
  }
};

// Validates shape and entries (BadPanel). support_bound <= 0 means "use the
// largest entry".
ObservedPanel make_panel(std::int64_t rows, int cols, std::vector<double> data,
                         std::vector<std::string> labels = {}, double support_bound = 0.0);

struct AssignmentSim {
  std::vector<int> assignments;          // drawn color per row, 0-based
  std::vector<std::vector<double>> z_path;  // shares after each row; z_path[0] is uniform
  UrnState state;                        // final sufficient statistics (unit initials)
  SeedRecord seed;
};

// Drives a unit-initial urn through the panel: at each row, a color is drawn
// from the current shares with an auxiliary uniform independent of the
// panel, and the drawn color is reinforced by that row's observed entry.
AssignmentSim simulate_assignments(const ObservedPanel& panel, SeedRecord seed);

// Simulates assignments, then tests whether jstar is exactly the
// non-dominated set, using whole-column moments (every entry is observed
// here, not only drawn ones). The report records the auxiliary seed: the
// decision is itself random given the data.
InferenceReport anova_test(const ObservedPanel& panel, std::span<const int> jstar,
                           std::optional<int> designated, double alpha, SeedRecord seed);

struct AnovaAggregate {
  int replications = 0;
  int rejections = 0;
  double rejection_rate = 0.0;  // frequency only; no formal level attached
  std::vector<InferenceReport> reports;
};

// Same test replayed under `replications` auxiliary sequences derived from
// base_seed. The rate is reported as-is.
AnovaAggregate anova_test_multi(const ObservedPanel& panel, std::span<const int> jstar,
                                std::optional<int> designated, double alpha,
                                std::uint64_t base_seed, int replications);

}  // namespace urnkit
