#pragma once

#include <optional>
#include <string>
#include <vector>

#include "urnkit/mc.hpp"

namespace urnkit {

// Declarative acceptance bands evaluated against a finished report. These
// live in experiment config files, not in code, so the bands ship with the
// experiment they gate.
struct CheckSpec {
  std::optional<double> abs_mean_max;
  std::optional<double> variance_min;
  std::optional<double> variance_max;
  std::optional<double> ks_coeff;  // ks_stat <= ks_coeff / sqrt(R)
  std::optional<double> rate_min;
  std::optional<double> rate_max;
  std::vector<std::string> nonincreasing;        // series medians, each step
  std::vector<std::string> strictly_increasing;  // series medians, each step
  std::vector<std::string> last_below_first;     // series medians, endpoints only

  struct FinalWithin {
    std::string series;
    double target = 0.0;
    double tol = 0.0;
    double min_fraction = 0.0;  // of replications within tol at the last checkpoint
  };
  std::vector<FinalWithin> final_within;

  bool empty() const {
    return !abs_mean_max && !variance_min && !variance_max && !ks_coeff && !rate_min &&
           !rate_max && nonincreasing.empty() && strictly_increasing.empty() &&
           last_below_first.empty() && final_within.empty();
  }
};

struct CheckOutcome {
  std::string description;  // e.g. "variance=1.003 in [0.90,1.10]"
  bool pass = false;
};

std::vector<CheckOutcome> evaluate_checks(const McReport& report, const CheckSpec& check);

bool all_pass(const std::vector<CheckOutcome>& outcomes);

}  // namespace urnkit
