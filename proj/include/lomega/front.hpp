#pragma once

#include <vector>

#include "lomega/pde.hpp"
#include "lomega/polar.hpp"

namespace lomega {

enum class Side { left, right };

struct FrontPair {
    double left = 0.0;
    double right = 0.0;
};

// Front positions over time at a fixed amplitude threshold. Snapshots without
// a detectable front are skipped and their times recorded.
struct FrontTrace {
    std::vector<double> times;
    std::vector<double> left_pos;
    std::vector<double> right_pos;
    std::vector<double> skipped_times;
    double threshold = 0.5;
};

struct SpeedEstimate {
    double speed = 0.0;
    double std_err = 0.0;
    double window_start = 0.0;
    double window_end = 0.0;
};

struct SpeedReport {
    SpeedEstimate left;
    SpeedEstimate right;
    SpeedEstimate centreline;
    double left_onset_angle = 0.0;
    double right_onset_angle = 0.0;
    double threshold = 0.5;
    SystemParams params;
};

// Outermost crossings of r = threshold, linearly interpolated between nodes.
// Throws NoFrontError when no node reaches the threshold.
FrontPair detect_fronts(const PolarField& field, double threshold);

// Requires at least four snapshots with detectable fronts.
FrontTrace build_trace(const std::vector<PolarField>& snapshots, double threshold);

// Ordinary least-squares slope of front position vs time over the trailing
// window_fraction of the trace's time span (at least three points).
SpeedEstimate estimate_speed(const FrontTrace& trace, Side side, double window_fraction = 0.5);

// Slope of the midpoint (left + right)/2 over the same trailing window.
SpeedEstimate centreline_speed(const FrontTrace& trace, double window_fraction = 0.5);

// Phase angle theta mod pi in [0, pi) at the node nearest to the probe point
// `inset` inside the given front. Throws InvalidInsetError if the probe falls
// off the grid or onto a node without valid phase.
double onset_angle(const PolarField& field, double front, Side side, double inset = 2.0);

// Full measurement pipeline over polar snapshots; onset angles come from the
// last snapshot.
SpeedReport analyze_snapshots(const std::vector<PolarField>& snapshots, const SystemParams& params,
                              double threshold = 0.5, double window_fraction = 0.5,
                              double inset = 2.0);

}  // namespace lomega
