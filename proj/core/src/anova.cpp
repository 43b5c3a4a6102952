#include "urnkit/anova.hpp"

#include <cmath>
#include <string>

#include "urnkit/errors.hpp"

namespace urnkit {

ObservedPanel make_panel(std::int64_t rows, int cols, std::vector<double> data,
                         std::vector<std::string> labels, double support_bound) {
  if (rows < 1 || cols < 2) raise(Errc::BadPanel, "panel needs >= 1 row and >= 2 columns");
  if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
    raise(Errc::BadPanel, "panel data does not match rows * cols");

  double max_entry = 0.0;
  for (double v : data) {
    if (!std::isfinite(v) || v < 0.0) raise(Errc::BadPanel, "panel entries must be finite and >= 0");
    max_entry = std::max(max_entry, v);
  }
  ObservedPanel panel;
  panel.rows = rows;
  panel.cols = cols;
  panel.data = std::move(data);
  if (support_bound > 0.0) {
    if (max_entry > support_bound * (1.0 + 1e-12))
      raise(Errc::BadPanel, "panel entry exceeds the declared bound");
    panel.support_bound = support_bound;
  } else {
    panel.support_bound = max_entry > 0.0 ? max_entry : 1.0;
  }
  if (labels.empty()) {
    for (int j = 1; j <= cols; ++j) panel.labels.push_back(std::to_string(j));
  } else if (static_cast<int>(labels.size()) != cols) {
    raise(Errc::BadPanel, "panel needs one label per column");
  } else {
    panel.labels = std::move(labels);
  }
  return panel;
}

AssignmentSim simulate_assignments(const ObservedPanel& panel, SeedRecord seed) {
  const int d = panel.cols;
  AssignmentSim sim;
  sim.seed = seed;
  sim.assignments.reserve(static_cast<std::size_t>(panel.rows));
  sim.z_path.reserve(static_cast<std::size_t>(panel.rows) + 1);

  // Unit initial composition, uniform starting shares.
  sim.state.balls.assign(static_cast<std::size_t>(d), 1.0);
  sim.state.draws.assign(static_cast<std::size_t>(d), 0);
  sim.state.reinf_sum.assign(static_cast<std::size_t>(d), 0.0);
  sim.state.reinf_sq_sum.assign(static_cast<std::size_t>(d), 0.0);

  Stream auxiliary(seed);
  std::vector<double> shares(static_cast<std::size_t>(d), 1.0 / d);
  sim.z_path.push_back(shares);

  for (std::int64_t row = 0; row < panel.rows; ++row) {
    const double y = auxiliary.next_unit();
    const int color = draw_color(shares, y);
    apply_draw(sim.state, color, panel.at(row, color));

    const double total = sim.state.total_balls();
    for (int j = 0; j < d; ++j)
      shares[static_cast<std::size_t>(j)] = sim.state.balls[static_cast<std::size_t>(j)] / total;
    sim.assignments.push_back(color);
    sim.z_path.push_back(shares);
  }
  return sim;
}

InferenceReport anova_test(const ObservedPanel& panel, std::span<const int> jstar,
                           std::optional<int> designated, double alpha, SeedRecord seed) {
  for (int i : jstar) {
    if (i < 0 || i >= panel.cols)
      raise(Errc::BadConfig, "candidate column " + std::to_string(i + 1) + " out of range");
  }
  AssignmentSim sim = simulate_assignments(panel, seed);

  // Whole-column moments: the panel is fully observed.
  const double n = static_cast<double>(panel.rows);
  std::vector<double> mean_hat(static_cast<std::size_t>(panel.cols), 0.0);
  std::vector<double> var_hat(static_cast<std::size_t>(panel.cols), 0.0);
  for (int j = 0; j < panel.cols; ++j) {
    double sum = 0.0;
    for (std::int64_t row = 0; row < panel.rows; ++row) sum += panel.at(row, j);
    mean_hat[static_cast<std::size_t>(j)] = sum / n;
  }
  for (int j = 0; j < panel.cols; ++j) {
    double sq = 0.0;
    for (std::int64_t row = 0; row < panel.rows; ++row) {
      const double centered = panel.at(row, j) - mean_hat[static_cast<std::size_t>(j)];
      sq += centered * centered;
    }
    var_hat[static_cast<std::size_t>(j)] = sq / n;
  }

  InferenceReport report = test_H0_with_moments(sim.state, jstar, designated, alpha, mean_hat,
                                                var_hat, "whole-column");
  report.simulation_seed = seed;
  return report;
}

AnovaAggregate anova_test_multi(const ObservedPanel& panel, std::span<const int> jstar,
                                std::optional<int> designated, double alpha,
                                std::uint64_t base_seed, int replications) {
  if (replications < 1) raise(Errc::TooFewReplications, "need at least 1 replication");
  AnovaAggregate agg;
  agg.replications = replications;
  for (int r = 0; r < replications; ++r) {
    auto report = anova_test(panel, jstar, designated, alpha,
                             SeedRecord{base_seed, static_cast<std::uint64_t>(r)});
    if (report.reject) ++agg.rejections;
    agg.reports.push_back(std::move(report));
  }
  agg.rejection_rate = static_cast<double>(agg.rejections) / replications;
  return agg;
}

}  // namespace urnkit
