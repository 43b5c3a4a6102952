#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urnkit/anova.hpp"
#include "urnkit/check.hpp"
#include "urnkit/config.hpp"
#include "urnkit/inference.hpp"
#include "urnkit/mc.hpp"
#include "urnkit/statistics.hpp"

// Persistence layer: JSON for configs and reports, CSV for bulk numeric
// series (comma separated, '.' decimal point, LF line ends, UTF-8, one
// header row). Numbers are printed shortest-round-trip, so rewriting a
// parsed artifact reproduces it byte for byte.
namespace urnkit::io {

inline constexpr const char* kToolName = "urnkit";
inline constexpr const char* kToolVersion = "0.1.0";

// --- urn configs ----------------------------------------------------------

UrnConfig parse_urn_config(const std::string& json_text);
UrnConfig load_urn_config(const std::string& path);
std::string urn_config_to_json(const UrnConfig& config);

// --- experiment files -----------------------------------------------------

struct ExperimentFile {
  ExperimentSpec spec;
  CheckSpec check;
  std::string resolved_json;  // canonical dump of the fully resolved file
};

// CLI flags that override (or, for bare urn configs, supply) experiment
// fields. Color indices here are 1-based, as typed by the user.
struct ExperimentOverrides {
  std::optional<std::string> statistic;
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> proxy_horizon;
  std::optional<int> replications;
  std::optional<std::uint64_t> base_seed;
  std::optional<int> color;
  std::optional<std::vector<int>> jstar;
  std::optional<bool> union_mode;
  std::optional<double> alpha;
  std::optional<double> lambda;
  std::optional<std::vector<std::int64_t>> checkpoints;
};

// Accepts either a full experiment file ({"urn"|"urn_path", "experiment",
// "check"?}) or a bare urn config, which the overrides must complete.
ExperimentFile load_experiment(const std::string& path,
                               const ExperimentOverrides& overrides = {});

// --- reports --------------------------------------------------------------

std::string report_to_json(const McReport& report, const std::string& manifest_hash,
                           bool include_timing = true);
std::string inference_report_to_json(const InferenceReport& report,
                                     const std::vector<std::string>& labels,
                                     const std::string& manifest_hash);

// --- CSV ------------------------------------------------------------------

std::string format_double(double value);  // shortest round-trip decimal

std::string states_csv(std::span<const UrnState> states, const std::string& manifest_hash);
std::string snapshots_csv(std::span<const Snapshot> snapshots,
                          const std::string& manifest_hash);
std::string replication_csv(const McReport& report, const std::string& manifest_hash);

ObservedPanel parse_panel_csv(const std::string& text, double support_bound = 0.0);
ObservedPanel load_panel_csv(const std::string& path, double support_bound = 0.0);
std::string assignments_csv(const AssignmentSim& sim, const std::string& manifest_hash);

// --- manifests ------------------------------------------------------------

struct Manifest {
  std::string command;                // reconstructed invocation
  std::string config_json;            // resolved configuration
  std::uint64_t base_seed = 0;
  std::vector<std::string> outputs;   // artifact file names
};

std::uint64_t fnv1a64(std::string_view text);
std::string manifest_hash(const Manifest& manifest);
// Timestamps sit outside the hashed content by construction.
std::string manifest_to_json(const Manifest& manifest, const std::string& hash,
                             bool with_timestamp = true);

// --- files ----------------------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace urnkit::io
