#include "lomega/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lomega/errors.hpp"

namespace lomega {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string to_string(Frame frame) {
    switch (frame) {
        case Frame::original: return "original";
        case Frame::reduced: return "reduced";
        case Frame::flow_centred: return "flow_centred";
    }
    return "reduced";
}

std::string to_string(Species species) {
    switch (species) {
        case Species::u_only: return "u_only";
        case Species::v_only: return "v_only";
        case Species::both: return "both";
    }
    return "both";
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::simple: return "simple";
        case Regime::small_param: return "small_param";
        case Regime::large_param: return "large_param";
        case Regime::general: return "general";
    }
    return "simple";
}

std::string to_string(Instability instability) {
    switch (instability) {
        case Instability::absolute: return "absolute";
        case Instability::convective: return "convective";
        case Instability::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Frame frame_from_string(const std::string& name) {
    if (name == "original") return Frame::original;
    if (name == "reduced") return Frame::reduced;
    if (name == "flow_centred") return Frame::flow_centred;
    throw ValidationError("unknown frame '" + name + "' (expected original, reduced or flow_centred)");
}

Species species_from_string(const std::string& name) {
    if (name == "u_only") return Species::u_only;
    if (name == "v_only") return Species::v_only;
    if (name == "both") return Species::both;
    throw ValidationError("unknown species '" + name + "' (expected u_only, v_only or both)");
}

namespace {

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed, const char* where) {
    if (!j.is_object()) throw ValidationError(std::string(where) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ValidationError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
}

double get_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) throw ValidationError(std::string(where) + ": missing key '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(std::string(where) + ": '" + key + "' must be a number");
    return v.get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, const char* where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(std::string(where) + ": '" + key + "' must be a number");
    return v.get<double>();
}

std::string get_string(const json& j, const char* key, const char* where) {
    if (!j.contains(key)) throw ValidationError(std::string(where) + ": missing key '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_string()) throw ValidationError(std::string(where) + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

DisturbanceSpec disturbance_from_json(const json& j, const char* where) {
    DisturbanceSpec d;
    if (j.is_null()) return d;
    reject_unknown_keys(j, {"center", "amplitude", "width", "species"}, where);
    d.center = get_number_or(j, "center", d.center, where);
    d.amplitude = get_number_or(j, "amplitude", d.amplitude, where);
    d.width = get_number_or(j, "width", d.width, where);
    if (j.contains("species")) d.species = species_from_string(get_string(j, "species", where));
    return d;
}

json disturbance_to_json(const DisturbanceSpec& d) {
    return {{"center", d.center},
            {"amplitude", d.amplitude},
            {"width", d.width},
            {"species", to_string(d.species)}};
}

double parse_double_token(const std::string& token, const fs::path& path, std::size_t line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    while (first != last && *first == ' ') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{})
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": cannot parse number '" + token + "'");
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
    return out;
}

Grid1D grid_from_nodes(const std::vector<double>& x, const fs::path& path) {
    if (x.size() < 3) throw ValidationError(path.string() + ": snapshot has fewer than 3 nodes");
    Grid1D grid;
    grid.x_min = x.front();
    grid.x_max = x.back();
    grid.n = static_cast<int>(x.size());
    grid.validate();
    const double h = grid.h();
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (std::abs((x[i] - x[i - 1]) - h) > 1e-6 * std::max(1.0, std::abs(h)))
            throw ValidationError(path.string() + ": grid spacing is not uniform");
    }
    return grid;
}

FieldState snapshot_from_json(const json& j, const fs::path& path) {
    reject_unknown_keys(j, {"t", "u", "v"}, "snapshot");
    FieldState state;
    state.t = get_number(j, "t", "snapshot");
    state.u = j.at("u").get<std::vector<double>>();
    state.v = j.at("v").get<std::vector<double>>();
    if (state.u.size() != state.v.size())
        throw ValidationError(path.string() + ": snapshot u and v lengths differ");
    return state;
}

std::vector<FieldState> read_snapshots_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file");
    ++line_no;
    if (split_csv_line(line) != std::vector<std::string>{"t", "x", "u", "v"})
        throw ValidationError(path.string() + ": expected header 't,x,u,v'");

    std::vector<FieldState> snapshots;
    std::vector<double> xs;
    FieldState current;
    bool open_block = false;

    auto flush = [&] {
        if (!open_block) return;
        current.grid = grid_from_nodes(xs, path);
        snapshots.push_back(std::move(current));
        current = FieldState{};
        xs.clear();
        open_block = false;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 4 columns");
        const double t = parse_double_token(fields[0], path, line_no);
        if (!open_block || t != current.t) {
            flush();
            current.t = t;
            open_block = true;
        }
        xs.push_back(parse_double_token(fields[1], path, line_no));
        current.u.push_back(parse_double_token(fields[2], path, line_no));
        current.v.push_back(parse_double_token(fields[3], path, line_no));
    }
    flush();
    if (snapshots.empty()) throw InsufficientDataError(path.string() + ": no snapshot rows");
    return snapshots;
}

std::vector<FieldState> read_snapshots_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    reject_unknown_keys(j, {"config", "x", "snapshots"}, "snapshot file");
    if (!j.contains("x") || !j.contains("snapshots"))
        throw ValidationError(path.string() + ": expected keys 'x' and 'snapshots'");

    const auto x = j.at("x").get<std::vector<double>>();
    const Grid1D grid = grid_from_nodes(x, path);

    std::vector<FieldState> snapshots;
    for (const json& sj : j.at("snapshots")) {
        FieldState state = snapshot_from_json(sj, path);
        if (static_cast<int>(state.u.size()) != grid.n)
            throw ValidationError(path.string() + ": snapshot length does not match grid");
        state.grid = grid;
        snapshots.push_back(std::move(state));
    }
    if (snapshots.empty()) throw InsufficientDataError(path.string() + ": no snapshots");
    return snapshots;
}

std::vector<fs::path> snapshot_files_in(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (name.rfind("snapshot_", 0) == 0 && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"frame", "eps1", "eps2", "p", "q", "x_min", "x_max", "n", "t_end",
                         "snapshot_every", "disturbance"},
                        "run config");
    RunConfig config;
    config.params.frame = frame_from_string(get_string(j, "frame", "run config"));
    config.params.eps1 = get_number(j, "eps1", "run config");
    config.params.eps2 = get_number(j, "eps2", "run config");
    config.params.p = get_number(j, "p", "run config");
    config.params.q = get_number(j, "q", "run config");
    config.grid.x_min = get_number(j, "x_min", "run config");
    config.grid.x_max = get_number(j, "x_max", "run config");
    const double n = get_number(j, "n", "run config");
    if (n != std::floor(n)) throw ValidationError("run config: 'n' must be an integer");
    config.grid.n = static_cast<int>(n);
    config.t_end = get_number(j, "t_end", "run config");
    config.snapshot_every = get_number(j, "snapshot_every", "run config");
    config.disturbance =
        disturbance_from_json(j.contains("disturbance") ? j.at("disturbance") : json(nullptr),
                              "run config disturbance");

    config.params.validate();
    config.grid.validate();
    if (!(config.t_end > 0.0) || !std::isfinite(config.t_end))
        throw ValidationError("run config: t_end must be positive");
    if (!(config.snapshot_every > 0.0) || !std::isfinite(config.snapshot_every))
        throw ValidationError("run config: snapshot_every must be positive");
    // Fails early on impossible disturbances rather than mid-run.
    build_initial_state(config.grid, config.disturbance);
    return config;
}

json run_config_to_json(const RunConfig& config) {
    return {{"frame", to_string(config.params.frame)},
            {"eps1", config.params.eps1},
            {"eps2", config.params.eps2},
            {"p", config.params.p},
            {"q", config.params.q},
            {"x_min", config.grid.x_min},
            {"x_max", config.grid.x_max},
            {"n", config.grid.n},
            {"t_end", config.t_end},
            {"snapshot_every", config.snapshot_every},
            {"disturbance", disturbance_to_json(config.disturbance)}};
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return run_config_from_json(j);
}

SweepSpec sweep_spec_from_json(const json& j) {
    reject_unknown_keys(j, {"gamma_values", "eps_values", "template"}, "sweep spec");
    SweepSpec spec;
    if (j.contains("gamma_values")) {
        spec.gamma_values = j.at("gamma_values").get<std::vector<double>>();
    } else {
        for (int i = 0; i <= 12; ++i) spec.gamma_values.push_back(0.5 * i);
    }
    if (j.contains("eps_values")) {
        spec.eps_values = j.at("eps_values").get<std::vector<double>>();
    } else {
        spec.eps_values = {0.25, 0.5, 1.0, 2.0, 4.0};
    }
    if (j.contains("template")) {
        const json& t = j.at("template");
        reject_unknown_keys(t,
                            {"x_min", "x_max", "n", "t_end", "snapshot_every", "threshold",
                             "window", "zero_tol", "disturbance"},
                            "sweep template");
        RunTemplate& run = spec.run;
        run.x_min = get_number_or(t, "x_min", run.x_min, "sweep template");
        run.x_max = get_number_or(t, "x_max", run.x_max, "sweep template");
        const double n = get_number_or(t, "n", run.n, "sweep template");
        if (n != std::floor(n)) throw ValidationError("sweep template: 'n' must be an integer");
        run.n = static_cast<int>(n);
        run.t_end = get_number_or(t, "t_end", run.t_end, "sweep template");
        run.snapshot_every = get_number_or(t, "snapshot_every", run.snapshot_every, "sweep template");
        run.threshold = get_number_or(t, "threshold", run.threshold, "sweep template");
        run.window_fraction = get_number_or(t, "window", run.window_fraction, "sweep template");
        run.zero_tol = get_number_or(t, "zero_tol", run.zero_tol, "sweep template");
        run.disturbance = disturbance_from_json(
            t.contains("disturbance") ? t.at("disturbance") : json(nullptr), "sweep disturbance");
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sweep spec '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return sweep_spec_from_json(j);
}

void write_snapshots_csv(const fs::path& path, const std::vector<FieldState>& snapshots) {
    auto out = open_output(path);
    out << "t,x,u,v\n";
    for (const auto& snap : snapshots) {
        const std::string t = format_double(snap.t);
        for (int i = 0; i < snap.grid.n; ++i) {
            const auto j = static_cast<std::size_t>(i);
            out << t << ',' << format_double(snap.grid.node(i)) << ',' << format_double(snap.u[j])
                << ',' << format_double(snap.v[j]) << '\n';
        }
    }
}

void write_snapshots_dir(const fs::path& dir, const std::vector<FieldState>& snapshots,
                         const RunConfig& config) {
    fs::create_directories(dir);
    int index = 0;
    for (const auto& snap : snapshots) {
        std::array<char, 32> name{};
        std::snprintf(name.data(), name.size(), "snapshot_%05d.csv", index++);
        write_snapshots_csv(dir / name.data(), {snap});
    }
    auto out = open_output(dir / "config.json");
    out << run_config_to_json(config).dump(2) << '\n';
}

void write_snapshots_json(const fs::path& path, const std::vector<FieldState>& snapshots,
                          const RunConfig& config) {
    json j;
    j["config"] = run_config_to_json(config);
    json xs = json::array();
    for (int i = 0; i < snapshots.front().grid.n; ++i) xs.push_back(snapshots.front().grid.node(i));
    j["x"] = std::move(xs);
    json snaps = json::array();
    for (const auto& snap : snapshots)
        snaps.push_back(json{{"t", snap.t}, {"u", snap.u}, {"v", snap.v}});
    j["snapshots"] = std::move(snaps);
    auto out = open_output(path);
    out << j.dump() << '\n';
}

std::vector<FieldState> read_snapshots(const fs::path& path) {
    if (fs::is_directory(path)) {
        const auto files = snapshot_files_in(path);
        if (files.empty())
            throw InsufficientDataError("no snapshot_*.csv files in '" + path.string() + "'");
        std::vector<FieldState> snapshots;
        for (const auto& file : files) {
            auto part = read_snapshots_csv(file);
            snapshots.insert(snapshots.end(), part.begin(), part.end());
        }
        return snapshots;
    }
    if (!fs::exists(path)) throw ValidationError("no such file: '" + path.string() + "'");
    if (path.extension() == ".json") return read_snapshots_json(path);
    return read_snapshots_csv(path);
}

std::optional<RunConfig> find_attached_config(const fs::path& snapshots_path) {
    try {
        if (fs::is_directory(snapshots_path)) {
            const fs::path config_path = snapshots_path / "config.json";
            if (fs::exists(config_path)) return load_run_config(config_path);
            return std::nullopt;
        }
        if (snapshots_path.extension() == ".json") {
            std::ifstream in(snapshots_path);
            if (!in) return std::nullopt;
            json j;
            in >> j;
            if (j.contains("config")) return run_config_from_json(j.at("config"));
        }
    } catch (...) {
        return std::nullopt;
    }
    return std::nullopt;
}

void write_polar_csv(const fs::path& path, const std::vector<PolarField>& fields) {
    auto out = open_output(path);
    out << "t,x,r,theta,theta_valid\n";
    for (const auto& field : fields) {
        const std::string t = format_double(field.t);
        for (int i = 0; i < field.grid.n; ++i) {
            const auto j = static_cast<std::size_t>(i);
            out << t << ',' << format_double(field.grid.node(i)) << ',' << format_double(field.r[j])
                << ',' << format_double(field.theta[j]) << ',' << (field.theta_valid[j] ? 1 : 0)
                << '\n';
        }
    }
}

void write_trajectory_csv(const fs::path& path, const OdeTrajectory& trajectory) {
    auto out = open_output(path);
    out << "t,u,v,r,theta\n";
    constexpr double two_pi = 6.283185307179586476925286766559;
    double theta = 0.0;
    double prev_raw = 0.0;
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        const auto& pt = trajectory.points[i];
        const double raw = std::atan2(pt.v, pt.u);
        if (i == 0)
            theta = raw;
        else
            theta += std::remainder(raw - prev_raw, two_pi);
        prev_raw = raw;
        out << format_double(trajectory.times[i]) << ',' << format_double(pt.u) << ','
            << format_double(pt.v) << ',' << format_double(std::hypot(pt.u, pt.v)) << ','
            << format_double(theta) << '\n';
    }
}

json params_to_json(const SystemParams& params) {
    return {{"frame", to_string(params.frame)}, {"eps1", params.eps1}, {"eps2", params.eps2},
            {"p", params.p},                    {"q", params.q},       {"gamma", params.gamma()},
            {"gamma_bar", params.gamma_bar()},  {"eps_bar", params.eps_bar()},
            {"gamma_hat", params.gamma_hat()}};
}

json prediction_to_json(const Prediction& prediction) {
    json j{{"left", prediction.left},
           {"right", prediction.right},
           {"regime", to_string(prediction.regime)},
           {"frame", to_string(prediction.frame)}};
    if (std::isfinite(prediction.theta)) j["theta"] = prediction.theta;
    return j;
}

json speed_estimate_to_json(const SpeedEstimate& estimate) {
    return {{"speed", estimate.speed},
            {"stderr", estimate.std_err},
            {"window", {estimate.window_start, estimate.window_end}}};
}

json convective_to_json(const ConvectiveReport& report) {
    auto check = [](const ConditionCheck& c) {
        return json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}, {"borderline", c.borderline}};
    };
    return {{"regime", to_string(report.regime)},
            {"small_reduced", check(report.small_reduced)},
            {"small_original", check(report.small_original)},
            {"large_q_gt_p", report.large_q_gt_p},
            {"large_p_gt_q", report.large_p_gt_q},
            {"borderline", report.borderline},
            {"indicates_convective", report.indicates_convective}};
}

json report_to_json(const SpeedReport& report, double zero_tol) {
    const SystemParams& params = report.params;
    json measured{{"left", speed_estimate_to_json(report.left)},
                  {"right", speed_estimate_to_json(report.right)},
                  {"centreline", speed_estimate_to_json(report.centreline)},
                  {"left_onset_angle", report.left_onset_angle},
                  {"right_onset_angle", report.right_onset_angle},
                  {"threshold", report.threshold}};
    json predicted{{"simple", prediction_to_json(simple_speed(params))},
                   {"small_param", prediction_to_json(small_param_speed(params))},
                   {"large_param", prediction_to_json(large_param_speed(params))},
                   {"flow_centred", prediction_to_json(flow_centred_speeds(params))},
                   {"regime", to_string(regime(params))},
                   {"convective_conditions", convective_to_json(convective_conditions(params))}};
    const Instability cls =
        classify_instability(report.left.speed, report.right.speed, zero_tol);
    return {{"params", params_to_json(params)},
            {"measured", std::move(measured)},
            {"instability_measured", to_string(cls)},
            {"predicted", std::move(predicted)}};
}

json sweep_row_to_json(const SweepRow& row) {
    json j{{"gamma", row.gamma},
           {"eps", row.eps},
           {"ok", row.ok},
           {"boundary_contaminated", row.boundary_contaminated},
           {"pred_simple", prediction_to_json(row.pred_simple)},
           {"pred_small", prediction_to_json(row.pred_small)},
           {"pred_large", prediction_to_json(row.pred_large)},
           {"pred_flow", prediction_to_json(row.pred_flow)},
           {"regime", to_string(row.regime_label)}};
    if (row.ok) {
        j["measured_left"] = speed_estimate_to_json(row.measured_left);
        j["measured_right"] = speed_estimate_to_json(row.measured_right);
        j["classification"] = to_string(row.classification);
    } else {
        j["error"] = row.error;
    }
    return j;
}

json sweep_result_to_json(const std::vector<SweepRow>& rows) {
    const SweepSummary summary = compare(rows);
    json jrows = json::array();
    for (const auto& row : rows) jrows.push_back(sweep_row_to_json(row));
    return {{"rows", std::move(jrows)},
            {"summary",
             {{"n_rows", summary.n_rows},
              {"n_valid", summary.n_valid},
              {"all_failed", summary.all_failed},
              {"mean_rel_err_left", summary.mean_rel_err_left},
              {"max_rel_err_left", summary.max_rel_err_left},
              {"mean_rel_err_right", summary.mean_rel_err_right},
              {"max_rel_err_right", summary.max_rel_err_right}}}};
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
    auto out = open_output(path);
    out << "gamma,eps,measured_left,measured_left_stderr,measured_right,measured_right_stderr,"
           "pred_small_left,pred_small_right,pred_large_left,pred_large_right,regime,"
           "classification,boundary_contaminated,error\n";
    for (const auto& row : rows) {
        out << format_double(row.gamma) << ',' << format_double(row.eps) << ',';
        if (row.ok) {
            out << format_double(row.measured_left.speed) << ','
                << format_double(row.measured_left.std_err) << ','
                << format_double(row.measured_right.speed) << ','
                << format_double(row.measured_right.std_err) << ',';
        } else {
            out << ",,,,";
        }
        out << format_double(row.pred_small.left) << ',' << format_double(row.pred_small.right)
            << ',' << format_double(row.pred_large.left) << ','
            << format_double(row.pred_large.right) << ',' << to_string(row.regime_label) << ','
            << (row.ok ? to_string(row.classification) : std::string{}) << ','
            << (row.boundary_contaminated ? "true" : "false") << ',' << csv_escape(row.error)
            << '\n';
    }
}

}  // namespace lomega
