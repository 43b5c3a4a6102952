#include "urnkit/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "urnkit/errors.hpp"
#include "urnkit/normal.hpp"

namespace urnkit {

MomentEstimates moment_estimators(const UrnState& state) {
  if (state.n < 1) raise(Errc::BadConfig, "estimators need n >= 1");
  const int d = state.colors();
  const double n = static_cast<double>(state.n);

  MomentEstimates est;
  est.q.resize(static_cast<std::size_t>(d));
  est.mean_hat.assign(static_cast<std::size_t>(d), 0.0);
  est.var_hat.assign(static_cast<std::size_t>(d), 0.0);
  est.defined.assign(static_cast<std::size_t>(d), false);

  double reinf_total = 0.0;
  for (int i = 0; i < d; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    reinf_total += state.reinf_sum[k];
    est.q[k] = state.reinf_sq_sum[k] / n;
    if (state.draws[k] > 0) {
      const double t = static_cast<double>(state.draws[k]);
      const double mean = state.reinf_sum[k] / t;
      est.mean_hat[k] = mean;
      // Second-moment identity; clamp the cancellation residue.
      est.var_hat[k] = std::max(0.0, state.reinf_sq_sum[k] / t - mean * mean);
      est.defined[k] = true;
    }
  }
  est.pooled_mean = reinf_total / n;
  return est;
}

double estimate_V(const UrnState& state, int j, int nondominated) {
  const auto est = moment_estimators(state);

  const double total = state.total_balls();
  const double z_j = state.balls[static_cast<std::size_t>(j)] / total;
  double others = 0.0;
  for (int i = 0; i < nondominated; ++i) {
    if (i == j) continue;
    others += est.q[static_cast<std::size_t>(i)];
  }
  const double q_j = est.q[static_cast<std::size_t>(j)];
  const double numerator = q_j * (1.0 - z_j) * (1.0 - z_j) + z_j * z_j * others;
  if (numerator == 0.0) return 0.0;
  // Any positive squared reinforcement forces a positive pooled rate, so
  // this only fires on inconsistent hand-built states.
  if (!(est.pooled_mean > 0.0)) raise(Errc::ZeroPooledMean, "pooled mean rate is zero");
  return numerator / (est.pooled_mean * est.pooled_mean);
}

namespace {

double estimate_U_impl(const UrnState& state, std::span<const int> jstar, int j,
                       std::span<const double> mean_hat, std::span<const double> var_hat) {
  const double total = state.total_balls();
  const double z_j = state.balls[static_cast<std::size_t>(j)] / total;
  double cross = 0.0;
  for (int i : jstar) {
    if (i == j) continue;
    const std::size_t k = static_cast<std::size_t>(i);
    const double z_i = state.balls[k] / total;
    cross += z_i * var_hat[k];
  }
  const double own = var_hat[static_cast<std::size_t>(j)];
  const double numerator = z_j * ((1.0 - z_j) * (1.0 - z_j) * own + z_j * cross);
  if (numerator == 0.0) return 0.0;

  double mean_sum = 0.0;
  for (int i : jstar) mean_sum += mean_hat[static_cast<std::size_t>(i)];
  const double pooled = mean_sum / static_cast<double>(jstar.size());
  if (!(pooled > 0.0)) raise(Errc::ZeroMean, "averaged per-color mean is zero");
  return numerator / (pooled * pooled);
}

void check_jstar(const UrnState& state, std::span<const int> jstar) {
  if (jstar.size() < 2) raise(Errc::SmallJstar, "candidate set needs at least 2 colors");
  for (int i : jstar) {
    if (i < 0 || i >= state.colors())
      raise(Errc::BadConfig, "candidate color " + std::to_string(i + 1) + " out of range");
  }
}

}  // namespace

double estimate_U(const UrnState& state, std::span<const int> jstar, int j) {
  check_jstar(state, jstar);
  const auto est = moment_estimators(state);
  for (int i : jstar) {
    if (!est.defined[static_cast<std::size_t>(i)])
      raise(Errc::UndefinedEstimator,
            "color " + std::to_string(i + 1) + " has never been drawn");
  }
  return estimate_U_impl(state, jstar, j, est.mean_hat, est.var_hat);
}

ConfidenceInterval confidence_interval(double center, double variance_estimate, std::int64_t n,
                                       double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) raise(Errc::BadAlpha, "alpha must lie in (0,1)");
  if (variance_estimate < 0.0) raise(Errc::BadConfig, "variance estimate must be >= 0");
  const double half_width = normal_two_sided_critical(alpha) *
                            std::sqrt(variance_estimate / static_cast<double>(n));
  return {center - half_width, center + half_width};
}

double k_statistic(double c_star, double u_estimate) {
  return u_estimate > 0.0 ? c_star / std::sqrt(u_estimate) : 0.0;
}

InferenceReport test_H0_with_moments(const UrnState& state, std::span<const int> jstar,
                                     std::optional<int> designated, double alpha,
                                     std::span<const double> mean_hat,
                                     std::span<const double> var_hat,
                                     const std::string& estimator_kind) {
  check_jstar(state, jstar);
  if (designated &&
      std::find(jstar.begin(), jstar.end(), *designated) == jstar.end())
    raise(Errc::BadConfig, "designated color must belong to the candidate set");

  // Candidate-set convention: starred denominators run over jstar.
  double leading_balls = 0.0;
  std::int64_t leading_draws = 0;
  for (int i : jstar) {
    leading_balls += state.balls[static_cast<std::size_t>(i)];
    leading_draws += state.draws[static_cast<std::size_t>(i)];
  }

  const double n = static_cast<double>(state.n);
  const double root_n = std::sqrt(n);
  const double critical = normal_two_sided_critical(alpha);

  // Pooled rate over all colors, for the share-centered variance estimate.
  double reinf_total = 0.0;
  double sq_total_jstar = 0.0;
  for (int i = 0; i < state.colors(); ++i)
    reinf_total += state.reinf_sum[static_cast<std::size_t>(i)];
  for (int i : jstar) sq_total_jstar += state.reinf_sq_sum[static_cast<std::size_t>(i)];
  const double pooled_mean = reinf_total / n;

  InferenceReport report;
  report.n = state.n;
  report.jstar.assign(jstar.begin(), jstar.end());
  report.designated = designated;
  report.alpha = alpha;
  report.critical = critical;
  report.union_calibrated = designated.has_value();
  report.estimator_kind = estimator_kind;

  const double total = state.total_balls();
  bool any_reject = false;
  for (int color : jstar) {
    const std::size_t k = static_cast<std::size_t>(color);
    const double z_star = state.balls[k] / leading_balls;
    const double m_star =
        static_cast<double>(state.draws[k]) / (1.0 + static_cast<double>(leading_draws));
    const double c_star = root_n * (m_star - z_star);
    const double u = estimate_U_impl(state, jstar, color, mean_hat, var_hat);

    // Share-centered variance restricted to the candidate set.
    const double z_full = state.balls[k] / total;
    double others_q = 0.0;
    for (int i : jstar) {
      if (i == color) continue;
      others_q += state.reinf_sq_sum[static_cast<std::size_t>(i)] / n;
    }
    const double q_own = state.reinf_sq_sum[k] / n;
    double v = 0.0;
    if (pooled_mean > 0.0)
      v = (q_own * (1.0 - z_full) * (1.0 - z_full) + z_full * z_full * others_q) /
          (pooled_mean * pooled_mean);

    ColorInference ci;
    ci.color = color;
    ci.v = v;
    ci.u = u;
    ci.k = k_statistic(c_star, u);
    ci.ci = confidence_interval(z_star, v, state.n, alpha);
    ci.ci_mstar = confidence_interval(m_star, u + v, state.n, alpha);
    report.per_color.push_back(ci);

    const bool color_rejects = std::abs(ci.k) >= critical;
    if (designated) {
      if (color == *designated) report.reject = color_rejects;
    } else if (color_rejects) {
      any_reject = true;
    }
  }
  if (!designated) report.reject = any_reject;
  return report;
}

InferenceReport test_H0(const UrnState& state, std::span<const int> jstar,
                        std::optional<int> designated, double alpha) {
  check_jstar(state, jstar);
  const auto est = moment_estimators(state);
  for (int i : jstar) {
    if (!est.defined[static_cast<std::size_t>(i)])
      raise(Errc::UndefinedEstimator,
            "color " + std::to_string(i + 1) + " has never been drawn");
  }
  return test_H0_with_moments(state, jstar, designated, alpha, est.mean_hat, est.var_hat,
                              "drawn-only");
}

double limit_V(std::span<const double> shares, int j, double mean, std::span<const double> q) {
  const double z_j = shares[static_cast<std::size_t>(j)];
  double cross = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (static_cast<int>(i) == j) continue;
    cross += q[i] * shares[i];
  }
  return z_j * (q[static_cast<std::size_t>(j)] * (1.0 - z_j) * (1.0 - z_j) + z_j * cross) /
         (mean * mean);
}

double limit_U(std::span<const double> shares, int j, double mean, std::span<const double> q) {
  const double z_j = shares[static_cast<std::size_t>(j)];
  return limit_V(shares, j, mean, q) - z_j * (1.0 - z_j);
}

double limit_U_from_variances(std::span<const double> shares, int j, double mean,
                              std::span<const double> sigma2) {
  const double z_j = shares[static_cast<std::size_t>(j)];
  double cross = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    if (static_cast<int>(i) == j) continue;
    cross += shares[i] * sigma2[i];
  }
  return z_j *
         ((1.0 - z_j) * (1.0 - z_j) * sigma2[static_cast<std::size_t>(j)] + z_j * cross) /
         (mean * mean);
}

}  // namespace urnkit
