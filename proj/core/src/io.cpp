#include "urnkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "urnkit/errors.hpp"

namespace urnkit::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(Errc::BadConfig, "malformed JSON in " + what);
  return j;
}

Family family_from_json(const json& j) {
  const std::string kind = j.value("family", "");
  if (kind == "point") return Family::point_mass(j.at("value").get<double>());
  if (kind == "coin") {
    const double value = j.at("value").get<double>();
    const double p = j.at("p").get<double>();
    return Family::coin_flip(value, p, j.value("p_start", p));
  }
  if (kind == "uniform_int")
    return Family::uniform_int(j.at("lo").get<int>(), j.at("hi").get<int>());
  if (kind == "grid")
    return Family::symmetric_grid(j.at("scale").get<double>(), j.at("points").get<int>(),
                                  j.at("shape").get<double>());
  raise(Errc::BadConfig, "unknown reinforcement family: '" + kind + "'");
}

json family_to_json(const Family& f) {
  json j;
  switch (f.kind()) {
    case FamilyKind::PointMass:
      j["family"] = "point";
      j["value"] = f.param_value();
      break;
    case FamilyKind::CoinFlip:
      j["family"] = "coin";
      j["value"] = f.param_value();
      j["p"] = f.param_p_limit();
      if (f.param_p_start() != f.param_p_limit()) j["p_start"] = f.param_p_start();
      break;
    case FamilyKind::UniformInt:
      j["family"] = "uniform_int";
      j["lo"] = f.param_lo();
      j["hi"] = f.param_hi();
      break;
    case FamilyKind::SymmetricGrid:
      j["family"] = "grid";
      j["scale"] = f.param_scale();
      j["points"] = f.param_points();
      j["shape"] = f.param_shape();
      break;
  }
  return j;
}

UrnConfig urn_config_from_json(const json& j) {
  if (!j.is_object() || !j.contains("colors"))
    raise(Errc::BadConfig, "urn config needs a 'colors' array");

  const auto& colors = j.at("colors");
  const int d = j.value("d", static_cast<int>(colors.size()));
  if (d != static_cast<int>(colors.size()))
    raise(Errc::BadConfig, "'d' disagrees with the number of declared colors");

  std::vector<int> order(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  if (j.contains("permutation")) {
    const auto perm = j.at("permutation").get<std::vector<int>>();
    if (static_cast<int>(perm.size()) != d)
      raise(Errc::BadConfig, "permutation must list every color once");
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (int i = 0; i < d; ++i) {
      const int src = perm[static_cast<std::size_t>(i)] - 1;  // 1-based in the file
      if (src < 0 || src >= d || seen[static_cast<std::size_t>(src)])
        raise(Errc::BadConfig, "permutation must list every color once");
      seen[static_cast<std::size_t>(src)] = true;
      order[static_cast<std::size_t>(i)] = src;
    }
  }

  UrnConfig config;
  config.colors = d;
  config.nondominated = j.value("d0", d);

  std::vector<double> initial(static_cast<std::size_t>(d), 1.0);
  if (j.contains("a")) {
    const auto a = j.at("a").get<std::vector<double>>();
    if (static_cast<int>(a.size()) != d)
      raise(Errc::BadConfig, "'a' must have one entry per color");
    initial = a;
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
    if (static_cast<int>(labels.size()) != d)
      raise(Errc::BadConfig, "'labels' must have one entry per color");
  }

  std::vector<Family> families;
  families.reserve(static_cast<std::size_t>(d));
  config.initial.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const int src = order[static_cast<std::size_t>(i)];
    families.push_back(family_from_json(colors.at(static_cast<std::size_t>(src))));
    config.initial[static_cast<std::size_t>(i)] = initial[static_cast<std::size_t>(src)];
    if (!labels.empty())
      config.labels.push_back(labels[static_cast<std::size_t>(src)]);
    else if (j.contains("permutation"))
      config.labels.push_back(std::to_string(src + 1));
  }
  config.schedule = ReinforcementSchedule(std::move(families), j.value("beta", 0.0));
  return config;
}

json urn_config_to_json_value(const UrnConfig& config) {
  json j;
  j["d"] = config.colors;
  j["d0"] = config.nondominated;
  j["a"] = config.initial;
  j["beta"] = config.schedule.support_bound();
  if (!config.labels.empty()) j["labels"] = config.labels;
  json colors = json::array();
  for (int i = 0; i < config.colors; ++i) colors.push_back(family_to_json(config.schedule.family(i)));
  j["colors"] = colors;
  return j;
}

CheckSpec check_from_json(const json& j) {
  CheckSpec check;
  if (j.contains("abs_mean_max")) check.abs_mean_max = j.at("abs_mean_max").get<double>();
  if (j.contains("variance_min")) check.variance_min = j.at("variance_min").get<double>();
  if (j.contains("variance_max")) check.variance_max = j.at("variance_max").get<double>();
  if (j.contains("ks_coeff")) check.ks_coeff = j.at("ks_coeff").get<double>();
  if (j.contains("rate_min")) check.rate_min = j.at("rate_min").get<double>();
  if (j.contains("rate_max")) check.rate_max = j.at("rate_max").get<double>();
  if (j.contains("nonincreasing"))
    check.nonincreasing = j.at("nonincreasing").get<std::vector<std::string>>();
  if (j.contains("strictly_increasing"))
    check.strictly_increasing = j.at("strictly_increasing").get<std::vector<std::string>>();
  if (j.contains("last_below_first"))
    check.last_below_first = j.at("last_below_first").get<std::vector<std::string>>();
  if (j.contains("final_within")) {
    for (const auto& entry : j.at("final_within")) {
      CheckSpec::FinalWithin fw;
      fw.series = entry.at("series").get<std::string>();
      fw.target = entry.at("target").get<double>();
      fw.tol = entry.at("tol").get<double>();
      fw.min_fraction = entry.at("min_fraction").get<double>();
      check.final_within.push_back(std::move(fw));
    }
  }
  return check;
}

std::vector<int> to_zero_based(std::vector<int> colors, int limit, const char* what) {
  for (auto& c : colors) {
    if (c < 1 || c > limit) raise(Errc::BadConfig, std::string(what) + " color out of range");
    c -= 1;
  }
  return colors;
}

}  // namespace

UrnConfig parse_urn_config(const std::string& json_text) {
  return urn_config_from_json(parse_json(json_text, "urn config"));
}

UrnConfig load_urn_config(const std::string& path) {
  return parse_urn_config(read_file(path));
}

std::string urn_config_to_json(const UrnConfig& config) {
  return urn_config_to_json_value(config).dump(2) + "\n";
}

ExperimentFile load_experiment(const std::string& path, const ExperimentOverrides& overrides) {
  const json root = parse_json(read_file(path), path);

  json urn_json;
  json experiment = json::object();
  json check_json = json::object();
  if (root.contains("experiment") || root.contains("urn") || root.contains("urn_path")) {
    if (root.contains("urn")) {
      urn_json = root.at("urn");
    } else if (root.contains("urn_path")) {
      const auto base = std::filesystem::path(path).parent_path();
      const auto urn_path = base / root.at("urn_path").get<std::string>();
      urn_json = parse_json(read_file(urn_path.string()), urn_path.string());
    } else {
      raise(Errc::BadConfig, "experiment file needs 'urn' or 'urn_path'");
    }
    if (root.contains("experiment")) experiment = root.at("experiment");
    if (root.contains("check")) check_json = root.at("check");
  } else {
    urn_json = root;  // bare urn config
  }

  ExperimentFile out;
  out.spec.config = validate_config(urn_config_from_json(urn_json));
  out.check = check_from_json(check_json);

  const auto pick_str = [&](const char* key, const std::optional<std::string>& cli,
                            const char* fallback) {
    if (cli) return *cli;
    return experiment.value(key, std::string(fallback));
  };

  const std::string statistic = pick_str("statistic", overrides.statistic, "dstar-normalized");
  out.spec.kind = stat_kind_from_name(statistic);
  out.spec.horizon =
      overrides.horizon ? *overrides.horizon : experiment.value("horizon", std::int64_t{0});
  out.spec.proxy_horizon = overrides.proxy_horizon ? *overrides.proxy_horizon
                                                   : experiment.value("proxy_horizon",
                                                                      std::int64_t{0});
  out.spec.replications =
      overrides.replications ? *overrides.replications : experiment.value("replications", 0);
  out.spec.base_seed =
      overrides.base_seed ? *overrides.base_seed : experiment.value("base_seed", std::uint64_t{0});
  const int color_1based =
      overrides.color ? *overrides.color : experiment.value("color", 1);
  if (color_1based < 1 || color_1based > out.spec.config.colors())
    raise(Errc::BadConfig, "designated color out of range");
  out.spec.color = color_1based - 1;

  std::vector<int> jstar = overrides.jstar
                               ? *overrides.jstar
                               : experiment.value("jstar", std::vector<int>{});
  out.spec.jstar = to_zero_based(std::move(jstar), out.spec.config.colors(), "jstar");

  const std::string mode =
      overrides.union_mode ? (*overrides.union_mode ? "union" : "single")
                           : experiment.value("mode", "single");
  if (mode != "single" && mode != "union")
    raise(Errc::BadConfig, "mode must be 'single' or 'union'");
  out.spec.union_mode = mode == "union";
  out.spec.alpha = overrides.alpha ? *overrides.alpha : experiment.value("alpha", 0.05);
  out.spec.lambda = overrides.lambda ? *overrides.lambda : experiment.value("lambda", 0.5);
  out.spec.checkpoints = overrides.checkpoints
                             ? *overrides.checkpoints
                             : experiment.value("checkpoints", std::vector<std::int64_t>{});

  // Default the proxy where one is required but unspecified.
  if (out.spec.proxy_horizon == 0 &&
      (out.spec.kind == StatKind::DstarNormalized || out.spec.kind == StatKind::DNormalized ||
       out.spec.kind == StatKind::Coverage))
    out.spec.proxy_horizon = default_proxy_horizon(out.spec.horizon);

  // Canonical resolved dump, for manifests.
  json resolved;
  resolved["urn"] = urn_config_to_json_value(out.spec.config.urn);
  json exp;
  exp["statistic"] = stat_kind_name(out.spec.kind);
  exp["horizon"] = out.spec.horizon;
  exp["proxy_horizon"] = out.spec.proxy_horizon;
  exp["replications"] = out.spec.replications;
  exp["base_seed"] = out.spec.base_seed;
  exp["color"] = out.spec.color + 1;
  exp["jstar"] = [&] {
    std::vector<int> one_based = out.spec.jstar;
    for (auto& c : one_based) c += 1;
    return one_based;
  }();
  exp["mode"] = out.spec.union_mode ? "union" : "single";
  exp["alpha"] = out.spec.alpha;
  exp["lambda"] = out.spec.lambda;
  exp["checkpoints"] = out.spec.checkpoints;
  resolved["experiment"] = exp;
  if (!check_json.empty()) resolved["check"] = check_json;
  out.resolved_json = resolved.dump(2) + "\n";
  return out;
}

std::string report_to_json(const McReport& report, const std::string& manifest_hash,
                           bool include_timing) {
  json j;
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  j["manifest_hash"] = manifest_hash;

  json exp;
  exp["statistic"] = stat_kind_name(report.kind);
  exp["horizon"] = report.horizon;
  exp["proxy_horizon"] = report.proxy_horizon;
  exp["replications"] = report.replications;
  exp["base_seed"] = report.base_seed;
  exp["color"] = report.color + 1;
  std::vector<int> one_based = report.jstar;
  for (auto& c : one_based) c += 1;
  exp["jstar"] = one_based;
  exp["mode"] = report.union_mode ? "union" : "single";
  exp["alpha"] = report.alpha;
  if (report.kind == StatKind::LemmaConvergence) exp["lambda"] = report.lambda;
  j["experiment"] = exp;

  json summary;
  if (report.is_rate()) {
    summary["rate"] = report.rate;
    summary["rate_se"] = report.rate_se;
    summary["rate_band"] = {report.rate - 2.0 * report.rate_se,
                            report.rate + 2.0 * report.rate_se};
    summary["defined_count"] = report.defined_count;
  } else if (!report.is_series()) {
    summary["mean"] = report.mean;
    summary["variance"] = report.variance;
    summary["ks_stat"] = report.ks_stat;
    summary["ks_pvalue"] = report.ks_pvalue;
    summary["ks_target"] = report.ks_vs_uniform ? "uniform" : "normal";
    summary["defined_count"] = report.defined_count;
    summary["zero_variance_count"] = report.zero_variance_count;
  }
  j["summary"] = summary;

  if (report.is_series()) {
    j["checkpoints"] = report.checkpoints;
    json series = json::array();
    for (const auto& s : report.series) {
      json entry;
      entry["name"] = s.name;
      entry["median"] = s.median;
      entry["band_lo"] = s.lo;
      entry["band_hi"] = s.hi;
      series.push_back(entry);
    }
    j["series"] = series;
  }

  if (include_timing) {
    json timing;
    timing["wall_seconds"] = report.wall_seconds;
    timing["threads"] = report.threads_used;
    j["timing"] = timing;
  }
  return j.dump(2) + "\n";
}

std::string inference_report_to_json(const InferenceReport& report,
                                     const std::vector<std::string>& labels,
                                     const std::string& manifest_hash) {
  json j;
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  j["manifest_hash"] = manifest_hash;
  j["n"] = report.n;
  std::vector<int> one_based = report.jstar;
  for (auto& c : one_based) c += 1;
  j["jstar"] = one_based;
  j["alpha"] = report.alpha;
  j["critical"] = report.critical;
  j["mode"] = report.designated ? "single" : "union";
  if (report.designated) j["designated"] = *report.designated + 1;
  j["union_calibrated"] = report.union_calibrated;
  j["decision"] = report.reject ? "reject" : "accept";
  j["estimators"] = report.estimator_kind;
  j["g_estimator"] = "u_plus_v_jstar";
  if (report.simulation_seed) {
    j["simulation_seed"] = {{"base_seed", report.simulation_seed->base_seed},
                            {"stream_index", report.simulation_seed->stream_index}};
  }
  json per_color = json::array();
  for (const auto& color : report.per_color) {
    json entry;
    entry["j"] = color.color + 1;
    if (!labels.empty()) entry["label"] = labels[static_cast<std::size_t>(color.color)];
    entry["V"] = color.v;
    entry["U"] = color.u;
    entry["K"] = color.k;
    entry["ci"] = {color.ci.lower, color.ci.upper};
    entry["ci_mstar"] = {color.ci_mstar.lower, color.ci_mstar.upper};
    per_color.push_back(entry);
  }
  j["per_color"] = per_color;
  return j.dump(2) + "\n";
}

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

std::string csv_header_comment(const std::string& manifest_hash) {
  return manifest_hash.empty() ? std::string()
                               : "# manifest_hash=" + manifest_hash + "\n";
}

}  // namespace

std::string states_csv(std::span<const UrnState> states, const std::string& manifest_hash) {
  std::ostringstream os;
  os << csv_header_comment(manifest_hash);
  if (states.empty()) return os.str();
  const int d = states.front().colors();
  os << "n";
  for (int j = 1; j <= d; ++j) os << ",N_" << j;
  for (int j = 1; j <= d; ++j) os << ",T_" << j;
  for (int j = 1; j <= d; ++j) os << ",SXA_" << j;
  for (int j = 1; j <= d; ++j) os << ",SXA2_" << j;
  os << "\n";
  for (const auto& state : states) {
    os << state.n;
    for (int j = 0; j < d; ++j) os << "," << format_double(state.balls[static_cast<std::size_t>(j)]);
    for (int j = 0; j < d; ++j) os << "," << state.draws[static_cast<std::size_t>(j)];
    for (int j = 0; j < d; ++j)
      os << "," << format_double(state.reinf_sum[static_cast<std::size_t>(j)]);
    for (int j = 0; j < d; ++j)
      os << "," << format_double(state.reinf_sq_sum[static_cast<std::size_t>(j)]);
    os << "\n";
  }
  return os.str();
}

std::string snapshots_csv(std::span<const Snapshot> snapshots,
                          const std::string& manifest_hash) {
  std::ostringstream os;
  os << csv_header_comment(manifest_hash);
  os << "n,color,Zstar,Mstar,Cstar,Dstar,dominated_mass,proxy_horizon\n";
  for (const auto& snap : snapshots) {
    const int d0 = static_cast<int>(snap.z_star.size());
    for (int j = 0; j < d0; ++j) {
      const std::size_t k = static_cast<std::size_t>(j);
      os << snap.n << "," << (j + 1) << "," << format_double(snap.z_star[k]) << ","
         << format_double(snap.m_star[k]) << "," << format_double(snap.c_star[k]) << ",";
      if (snap.has_proxy()) os << format_double(snap.d_star[k]);
      os << "," << format_double(snap.dominated_mass) << "," << snap.proxy_horizon << "\n";
    }
  }
  return os.str();
}

std::string replication_csv(const McReport& report, const std::string& manifest_hash) {
  std::ostringstream os;
  os << csv_header_comment(manifest_hash);
  if (!report.is_series()) {
    os << "replication,defined,value\n";
    for (std::size_t r = 0; r < report.values.size(); ++r)
      os << r << "," << (report.defined.empty() || report.defined[r] ? 1 : 0) << ","
         << format_double(report.values[r]) << "\n";
    return os.str();
  }
  os << "replication,checkpoint,series,value\n";
  const std::size_t ncp = report.checkpoints.size();
  for (int r = 0; r < report.replications; ++r) {
    for (std::size_t c = 0; c < ncp; ++c) {
      for (std::size_t s = 0; s < report.series_names.size(); ++s) {
        os << r << "," << report.checkpoints[c] << "," << report.series_names[s] << ","
           << format_double(report.series_values[s][static_cast<std::size_t>(r) * ncp + c])
           << "\n";
      }
    }
  }
  return os.str();
}

ObservedPanel parse_panel_csv(const std::string& text, double support_bound) {
  std::vector<std::string> labels;
  std::vector<double> data;
  std::int64_t rows = 0;
  int cols = 0;

  std::istringstream is(text);
  std::string line;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string field;
    if (!header_done) {
      while (std::getline(fields, field, ',')) labels.push_back(field);
      cols = static_cast<int>(labels.size());
      if (cols < 2) raise(Errc::BadPanel, "panel header needs at least 2 columns");
      header_done = true;
      continue;
    }
    int found = 0;
    while (std::getline(fields, field, ',')) {
      double value = 0.0;
      const auto* begin = field.data();
      const auto* end = field.data() + field.size();
      const auto parsed = std::from_chars(begin, end, value);
      if (parsed.ec != std::errc{} || parsed.ptr != end)
        raise(Errc::BadPanel, "unparseable panel cell: '" + field + "'");
      data.push_back(value);
      ++found;
    }
    if (found != cols) raise(Errc::BadPanel, "panel row with wrong cell count");
    ++rows;
  }
  return make_panel(rows, cols, std::move(data), std::move(labels), support_bound);
}

ObservedPanel load_panel_csv(const std::string& path, double support_bound) {
  return parse_panel_csv(read_file(path), support_bound);
}

std::string assignments_csv(const AssignmentSim& sim, const std::string& manifest_hash) {
  std::ostringstream os;
  os << csv_header_comment(manifest_hash);
  const int d = sim.state.colors();
  os << "row,drawn_color";
  for (int j = 1; j <= d; ++j) os << ",X_" << j;
  os << "\n";
  for (std::size_t row = 0; row < sim.assignments.size(); ++row) {
    os << (row + 1) << "," << (sim.assignments[row] + 1);
    for (int j = 0; j < d; ++j) os << "," << (sim.assignments[row] == j ? 1 : 0);
    os << "\n";
  }
  return os.str();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string manifest_hash(const Manifest& manifest) {
  std::ostringstream os;
  os << manifest.command << '\n' << manifest.config_json << '\n' << manifest.base_seed;
  for (const auto& output : manifest.outputs) os << '\n' << output;
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(os.str())));
  return buffer;
}

std::string manifest_to_json(const Manifest& manifest, const std::string& hash,
                             bool with_timestamp) {
  json j;
  j["tool"] = std::string(kToolName) + " " + kToolVersion;
  j["command"] = manifest.command;
  j["config"] = json::parse(manifest.config_json, nullptr, false);
  j["base_seed"] = manifest.base_seed;
  j["outputs"] = manifest.outputs;
  j["manifest_hash"] = hash;
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    const auto time = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&time));
    j["created_utc"] = stamp;  // outside the hashed content
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::BadConfig, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::BadConfig, "cannot write " + path);
  out << content;
}

}  // namespace urnkit::io
