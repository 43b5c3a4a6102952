#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urnkit/rng.hpp"
#include "urnkit/urn.hpp"

namespace urnkit {

// Plug-in moment estimators computable from the running sufficient
// statistics alone (only the drawn color's reinforcement is ever observed).
struct MomentEstimates {
  double pooled_mean = 0.0;       // all reinforcements over n
  std::vector<double> q;          // per-color mean of squared reinforcements over n
  std::vector<double> mean_hat;   // per-color mean over that color's draws
  std::vector<double> var_hat;    // per-color variance over that color's draws
  std::vector<bool> defined;      // false while a color has never been drawn
};

MomentEstimates moment_estimators(const UrnState& state);

// Plug-in variance estimate for the centered-share statistic of color j
// (0-based) with the first `nondominated` colors treated as the leading
// block. ZeroPooledMean when nothing has been reinforced yet.
double estimate_V(const UrnState& state, int j, int nondominated);

// Plug-in variance estimate for the centered-frequency statistic of color j
// under the candidate leading set jstar (0-based indices). Every color in
// jstar must have been drawn (UndefinedEstimator) and the averaged per-color
// mean must be positive (ZeroMean).
double estimate_U(const UrnState& state, std::span<const int> jstar, int j);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
};

// center +/- critical(alpha)/sqrt(n) * sqrt(variance_estimate).
ConfidenceInterval confidence_interval(double center, double variance_estimate, std::int64_t n,
                                       double alpha);

// 0 when the variance estimate is not positive, else the studentized ratio.
double k_statistic(double c_star, double u_estimate);

struct ColorInference {
  int color = 0;  // 0-based
  double v = 0.0;
  double u = 0.0;
  double k = 0.0;
  ConfidenceInterval ci;        // share-centered, width from v
  ConfidenceInterval ci_mstar;  // frequency-centered, width from u + v
};

struct InferenceReport {
  std::int64_t n = 0;
  std::vector<int> jstar;           // 0-based
  std::optional<int> designated;    // 0-based; nullopt = union over jstar
  double alpha = 0.0;
  double critical = 0.0;
  bool reject = false;
  bool union_calibrated = true;     // false in union mode: level not exact
  std::vector<ColorInference> per_color;
  std::string estimator_kind;       // which moment estimators produced u
  std::optional<SeedRecord> simulation_seed;  // set when assignments were simulated
};

// The frequency-based test of the hypothesis that jstar is exactly the
// non-dominated set, on a trajectory where only drawn reinforcements are
// observed. Rejects when |k| of the designated color reaches the two-sided
// critical value; in union mode when any color in jstar does (more powerful,
// level not calibrated). card(jstar) >= 2 (SmallJstar).
InferenceReport test_H0(const UrnState& state, std::span<const int> jstar,
                        std::optional<int> designated, double alpha);

// Same test with externally supplied per-color moment estimates (the
// panel-driven path observes whole reinforcement columns).
InferenceReport test_H0_with_moments(const UrnState& state, std::span<const int> jstar,
                                     std::optional<int> designated, double alpha,
                                     std::span<const double> mean_hat,
                                     std::span<const double> var_hat,
                                     const std::string& estimator_kind);

// Limit-formula oracles. shares must lie on the simplex of the leading
// block; q are limiting second moments, sigma2 limiting variances.
double limit_V(std::span<const double> shares, int j, double mean, std::span<const double> q);
double limit_U(std::span<const double> shares, int j, double mean, std::span<const double> q);
double limit_U_from_variances(std::span<const double> shares, int j, double mean,
                              std::span<const double> sigma2);

}  // namespace urnkit
