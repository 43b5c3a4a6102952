#include "urnkit/check.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "urnkit/errors.hpp"

namespace urnkit {

namespace {

const SeriesStat* find_series(const McReport& report, const std::string& name) {
  for (const auto& s : report.series)
    if (s.name == name) return &s;
  raise(Errc::BadConfig, "check references unknown series: " + name);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::vector<CheckOutcome> evaluate_checks(const McReport& report, const CheckSpec& check) {
  std::vector<CheckOutcome> out;

  if (check.abs_mean_max) {
    out.push_back({"|mean|=" + fmt(std::abs(report.mean)) + " <= " + fmt(*check.abs_mean_max),
                   std::abs(report.mean) <= *check.abs_mean_max});
  }
  if (check.variance_min || check.variance_max) {
    const double lo = check.variance_min.value_or(0.0);
    const double hi = check.variance_max.value_or(std::numeric_limits<double>::infinity());
    out.push_back({"variance=" + fmt(report.variance) + " in [" + fmt(lo) + "," + fmt(hi) + "]",
                   report.variance >= lo && report.variance <= hi});
  }
  if (check.ks_coeff) {
    const double crit = *check.ks_coeff / std::sqrt(static_cast<double>(report.replications));
    out.push_back({"ks=" + fmt(report.ks_stat) + " <= " + fmt(crit) + " (" +
                       (report.ks_vs_uniform ? "uniform" : "normal") + " target)",
                   report.ks_stat <= crit});
  }
  if (check.rate_min || check.rate_max) {
    const double lo = check.rate_min.value_or(0.0);
    const double hi = check.rate_max.value_or(1.0);
    out.push_back({"rate=" + fmt(report.rate) + " in [" + fmt(lo) + "," + fmt(hi) + "]",
                   report.rate >= lo && report.rate <= hi});
  }
  for (const auto& name : check.nonincreasing) {
    const auto* s = find_series(report, name);
    bool ok = true;
    for (std::size_t i = 1; i < s->median.size(); ++i)
      if (s->median[i] > s->median[i - 1]) ok = false;
    out.push_back({"median " + name + " nonincreasing across checkpoints", ok});
  }
  for (const auto& name : check.strictly_increasing) {
    const auto* s = find_series(report, name);
    bool ok = true;
    for (std::size_t i = 1; i < s->median.size(); ++i)
      if (s->median[i] <= s->median[i - 1]) ok = false;
    out.push_back({"median " + name + " strictly increasing across checkpoints", ok});
  }
  for (const auto& name : check.last_below_first) {
    const auto* s = find_series(report, name);
    const bool ok = !s->median.empty() && s->median.back() < s->median.front();
    out.push_back({"median " + name + " at last checkpoint (" + fmt(s->median.back()) +
                       ") below first (" + fmt(s->median.front()) + ")",
                   ok});
  }
  for (const auto& fw : check.final_within) {
    std::size_t series_index = report.series_names.size();
    for (std::size_t s = 0; s < report.series_names.size(); ++s)
      if (report.series_names[s] == fw.series) series_index = s;
    if (series_index == report.series_names.size())
      raise(Errc::BadConfig, "check references unknown series: " + fw.series);
    const std::size_t ncp = report.checkpoints.size();
    const int count = report.replications;
    int inside = 0;
    for (int r = 0; r < count; ++r) {
      const double v =
          report.series_values[series_index][static_cast<std::size_t>(r) * ncp + (ncp - 1)];
      if (std::abs(v - fw.target) <= fw.tol) ++inside;
    }
    const double fraction = static_cast<double>(inside) / count;
    out.push_back({"final " + fw.series + " within " + fmt(fw.tol) + " of " + fmt(fw.target) +
                       " in " + fmt(fraction) + " >= " + fmt(fw.min_fraction) + " of runs",
                   fraction >= fw.min_fraction});
  }
  return out;
}

bool all_pass(const std::vector<CheckOutcome>& outcomes) {
  for (const auto& o : outcomes)
    if (!o.pass) return false;
  return true;
}

}  // namespace urnkit
