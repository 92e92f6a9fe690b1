#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lomega/front.hpp"
#include "lomega/kinetics.hpp"
#include "lomega/pde.hpp"
#include "lomega/polar.hpp"
#include "lomega/sweep.hpp"
#include "lomega/theory.hpp"

namespace lomega {

// Shortest decimal representation that parses back to the same double, so
// repeated runs produce byte-identical files.
std::string format_double(double value);

std::string to_string(Frame frame);
std::string to_string(Species species);
std::string to_string(Regime regime);
std::string to_string(Instability instability);
Frame frame_from_string(const std::string& name);
Species species_from_string(const std::string& name);

struct RunConfig {
    SystemParams params;
    Grid1D grid;
    DisturbanceSpec disturbance;
    double t_end = 40.0;
    double snapshot_every = 1.0;
};

// Strict parsing: unknown keys are rejected, all values validated.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig load_run_config(const std::filesystem::path& path);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

// Snapshot output. The single-file CSV holds one row per node per snapshot;
// directory output writes one CSV per snapshot plus config.json; JSON output
// embeds the config. All three round-trip through read_snapshots.
void write_snapshots_csv(const std::filesystem::path& path, const std::vector<FieldState>& snapshots);
void write_snapshots_dir(const std::filesystem::path& dir, const std::vector<FieldState>& snapshots,
                         const RunConfig& config);
void write_snapshots_json(const std::filesystem::path& path, const std::vector<FieldState>& snapshots,
                          const RunConfig& config);

std::vector<FieldState> read_snapshots(const std::filesystem::path& path);

// Config recovery for `analyze`: embedded in a JSON snapshot file or
// config.json inside a snapshot directory.
std::optional<RunConfig> find_attached_config(const std::filesystem::path& snapshots_path);

void write_polar_csv(const std::filesystem::path& path, const std::vector<PolarField>& fields);
void write_trajectory_csv(const std::filesystem::path& path, const OdeTrajectory& trajectory);

nlohmann::json params_to_json(const SystemParams& params);
nlohmann::json prediction_to_json(const Prediction& prediction);
nlohmann::json speed_estimate_to_json(const SpeedEstimate& estimate);
nlohmann::json convective_to_json(const ConvectiveReport& report);

// Measured quantities plus the closed-form estimates for the same params.
nlohmann::json report_to_json(const SpeedReport& report, double zero_tol = 0.1);

nlohmann::json sweep_row_to_json(const SweepRow& row);
nlohmann::json sweep_result_to_json(const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace lomega
