#include "urnkit/config.hpp"

#include <cmath>
#include <string>

#include "urnkit/errors.hpp"

namespace urnkit {

namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ValidatedConfig validate_config(UrnConfig config) {
  const int d = config.colors;
  const int d0 = config.nondominated;
  if (d < 2) raise(Errc::BadConfig, "need at least 2 colors");
  if (d0 < 1 || d0 > d) raise(Errc::BadConfig, "non-dominated count must lie in [1, d]");
  if (config.schedule.colors() != d)
    raise(Errc::BadConfig, "schedule must declare one family per color");
  if (static_cast<int>(config.initial.size()) != d)
    raise(Errc::BadConfig, "initial composition must have one entry per color");

  for (int j = 0; j < d; ++j) {
    if (!(config.initial[static_cast<std::size_t>(j)] > 0.0))
      raise(Errc::NonPositiveInitial,
            "initial composition of color " + std::to_string(j + 1) + " must be > 0");
  }

  if (config.labels.empty()) {
    for (int j = 1; j <= d; ++j) config.labels.push_back(std::to_string(j));
  } else if (static_cast<int>(config.labels.size()) != d) {
    raise(Errc::BadConfig, "labels must have one entry per color");
  }

  double c0 = 0.0, h0 = 0.0;
  config.schedule.family(0).mean_coefficients(c0, h0);
  for (int j = 1; j < d0; ++j) {
    double cj = 0.0, hj = 0.0;
    config.schedule.family(j).mean_coefficients(cj, hj);
    if (!close(c0, cj) || !close(h0, hj))
      raise(Errc::MeanMismatch,
            "color " + std::to_string(j + 1) + " mean differs from color 1 at some n");
  }

  ValidatedConfig out;
  out.mean_limit = config.schedule.mean_limit(0);
  for (int j = 0; j < d0; ++j)
    out.second_moment_limits.push_back(config.schedule.second_moment_limit(j));

  out.lambda0 = 0.0;
  out.condition_1 = false;
  for (int j = d0; j < d; ++j) {
    const double limit = config.schedule.mean_limit(j);
    out.lambda0 = std::max(out.lambda0, limit);
    if (limit > 0.5 * out.mean_limit) out.condition_1 = true;
  }
  if (!(out.mean_limit > out.lambda0))
    raise(Errc::DominationViolation, "limiting mean must exceed every dominated mean");

  out.condition_1_star = 2.0 * out.lambda0 < out.mean_limit;
  out.degenerate_single = d0 == 1;
  out.urn = std::move(config);
  return out;
}

}  // namespace urnkit
