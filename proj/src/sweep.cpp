#include "lomega/sweep.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "lomega/errors.hpp"
#include "lomega/polar.hpp"

namespace lomega {

void SweepSpec::validate() const {
    if (gamma_values.empty()) throw ValidationError("sweep: gamma_values is empty");
    if (eps_values.empty()) throw ValidationError("sweep: eps_values is empty");
    for (double g : gamma_values)
        if (!std::isfinite(g)) throw ValidationError("sweep: gamma values must be finite");
    for (double e : eps_values)
        if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("sweep: eps values must be positive");
    Grid1D grid{run.x_min, run.x_max, run.n};
    grid.validate();
    if (!(run.t_end > 0.0)) throw ValidationError("sweep: t_end must be positive");
    if (!(run.snapshot_every > 0.0)) throw ValidationError("sweep: snapshot_every must be positive");
    if (!(run.threshold > 0.0)) throw ValidationError("sweep: threshold must be positive");
    if (!(run.window_fraction > 0.0) || run.window_fraction > 1.0)
        throw ValidationError("sweep: window fraction must lie in (0, 1]");
}

namespace {

SweepRow run_cell(double gamma, double eps, const RunTemplate& tmpl) {
    SweepRow row;
    row.gamma = gamma;
    row.eps = eps;

    const SystemParams params = SystemParams::reduced(gamma, 1.0, eps);
    row.pred_simple = simple_speed(params);
    row.pred_small = small_param_speed(params);
    row.pred_large = large_param_speed(params);
    row.pred_flow = flow_centred_speeds(params);
    row.regime_label = regime(params);

    const Grid1D grid{tmpl.x_min, tmpl.x_max, tmpl.n};
    double t_end = tmpl.t_end;

    std::vector<FieldState> snapshots;
    for (int attempt = 0;; ++attempt) {
        try {
            snapshots = simulate(params, grid, tmpl.disturbance, t_end, tmpl.snapshot_every);
            break;
        } catch (const BoundaryContaminatedError& e) {
            row.boundary_contaminated = true;
            if (attempt == 0) {
                t_end *= 0.5;  // shorter run keeps the pattern off the boundary
                continue;
            }
            row.error = e.what();
            return row;
        } catch (const Error& e) {
            row.error = e.what();
            return row;
        }
    }

    try {
        std::vector<PolarField> polar;
        polar.reserve(snapshots.size());
        for (const auto& s : snapshots) polar.push_back(to_polar(s));
        const FrontTrace trace = build_trace(polar, tmpl.threshold);
        row.measured_left = estimate_speed(trace, Side::left, tmpl.window_fraction);
        row.measured_right = estimate_speed(trace, Side::right, tmpl.window_fraction);
        row.classification = classify_instability(row.measured_left.speed,
                                                  row.measured_right.speed, tmpl.zero_tol);
        row.ok = true;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
    spec.validate();
    if (jobs < 1) throw ValidationError("sweep: jobs must be at least 1");

    struct Cell {
        double gamma;
        double eps;
    };
    std::vector<Cell> cells;
    cells.reserve(spec.gamma_values.size() * spec.eps_values.size());
    for (double eps : spec.eps_values)
        for (double gamma : spec.gamma_values) cells.push_back({gamma, eps});

    std::vector<SweepRow> rows(cells.size());
    if (jobs == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            rows[i] = run_cell(cells[i].gamma, cells[i].eps, spec.run);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            rows[i] = run_cell(cells[i].gamma, cells[i].eps, spec.run);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), cells.size());
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

SweepSummary compare(const std::vector<SweepRow>& rows) {
    SweepSummary summary;
    summary.n_rows = static_cast<int>(rows.size());
    double sum_left = 0.0, sum_right = 0.0;
    for (const auto& row : rows) {
        if (!row.ok) continue;
        const Prediction& pred =
            row.regime_label == Regime::large_param ? row.pred_large : row.pred_small;
        const double el = std::abs(row.measured_left.speed - pred.left) /
                          std::max(std::abs(pred.left), 1e-12);
        const double er = std::abs(row.measured_right.speed - pred.right) /
                          std::max(std::abs(pred.right), 1e-12);
        sum_left += el;
        sum_right += er;
        summary.max_rel_err_left = std::max(summary.max_rel_err_left, el);
        summary.max_rel_err_right = std::max(summary.max_rel_err_right, er);
        ++summary.n_valid;
    }
    if (summary.n_valid > 0) {
        sum_left /= summary.n_valid;
        sum_right /= summary.n_valid;
        summary.mean_rel_err_left = sum_left;
        summary.mean_rel_err_right = sum_right;
    } else {
        summary.all_failed = true;
    }
    return summary;
}

}  // namespace lomega
