#pragma once

#include <string>
#include <vector>

#include "lomega/front.hpp"
#include "lomega/pde.hpp"
#include "lomega/theory.hpp"

namespace lomega {

// Per-run settings shared by every sweep cell. Runs use the reduced frame
// with eps1 fixed at 1, eps2 = eps.
struct RunTemplate {
    double x_min = -60.0;
    double x_max = 200.0;
    int n = 2601;
    double t_end = 16.0;
    double snapshot_every = 0.5;
    DisturbanceSpec disturbance;
    double threshold = 0.5;
    double window_fraction = 0.5;
    double zero_tol = 0.1;  // measured speeds closer to zero are indeterminate
};

struct SweepSpec {
    std::vector<double> gamma_values;
    std::vector<double> eps_values;
    RunTemplate run;

    void validate() const;
};

struct SweepRow {
    double gamma = 0.0;
    double eps = 1.0;
    bool ok = false;
    std::string error;
    bool boundary_contaminated = false;

    SpeedEstimate measured_left;
    SpeedEstimate measured_right;

    Prediction pred_simple;
    Prediction pred_small;
    Prediction pred_large;
    Prediction pred_flow;
    Regime regime_label = Regime::small_param;
    Instability classification = Instability::indeterminate;
};

struct SweepSummary {
    int n_rows = 0;
    int n_valid = 0;
    bool all_failed = false;
    double mean_rel_err_left = 0.0;
    double max_rel_err_left = 0.0;
    double mean_rel_err_right = 0.0;
    double max_rel_err_right = 0.0;
};

// Runs the gamma x eps grid; rows keep their grid order regardless of job
// count. A boundary-contaminated run is retried once with t_end halved;
// remaining failures are recorded on the row instead of thrown.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1);

// Relative error of measured speeds against the regime-selected estimate.
SweepSummary compare(const std::vector<SweepRow>& rows);

}  // namespace lomega
