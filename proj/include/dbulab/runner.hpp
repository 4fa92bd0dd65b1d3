#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <json.hpp>

#include "dbulab/initial_data.hpp"
#include "dbulab/nonlinear_solver.hpp"

namespace dbu {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::json;

// Model selector covering both the exact linear flows and the split-step
// nonlinear ones.
struct RunModel {
  bool is_linear = true;
  LinearModel linear;
  ModelSpec nonlinear;
  std::string variant;
};

struct RunConfig {
  std::vector<double> extent;
  std::vector<int> points;
  bool auto_nyquist = false;
  RunModel model;
  DataSpec data;
  double T = 0.0;
  double dt = 0.0;
  std::vector<double> snapshot_times;
  json diagnostics = json::array();
  std::string output_dir;
  std::uint64_t seed = 1234;
  bool store_snapshots = true;
};

// Parse and fully validate a config document; throws validation_error naming
// the violated constraint before any compute starts.
RunConfig parse_config(const json& doc);

RunModel parse_model(const json& doc, int dim);
json model_to_json(const RunModel& model);
DataSpec parse_data(const json& doc);
json data_to_json(const DataSpec& spec);

struct RunOutcome {
  json report;          // full run report (config echo, diagnostics, manifest)
  int exit_code = 0;    // 0 ok, 2 validation, 3 divergence
};

// build -> evolve -> diagnostics -> persist. Snapshot payloads are raw
// little-endian interleaved re/im doubles in row-major order with a JSON
// sidecar; the report carries a checksum over its deterministic payload.
RunOutcome run(const json& config_doc);

// Independent runs over one config leaf (dotted path, e.g. "data.delta");
// each value gets its own subdirectory of the base output_dir. Failures are
// isolated per run. Parallel worker count from DBULAB_WORKERS (default 1).
std::vector<RunOutcome> sweep(const json& base_config, const std::string& axis,
                              const std::vector<json>& values);

// Cross-validation suite of the slow reference paths; returns a pass/fail
// JSON report.
json oracle_check(std::uint64_t seed);

std::uint64_t fnv1a64(std::span<const unsigned char> bytes);
std::string hex64(std::uint64_t v);

}  // namespace dbu
