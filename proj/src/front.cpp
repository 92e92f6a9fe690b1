#include "lomega/front.hpp"

#include <cmath>
#include <string>

#include "lomega/errors.hpp"

namespace lomega {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

double interpolate_crossing(const PolarField& f, int inside, int outside, double threshold) {
    const double ri = f.r[static_cast<std::size_t>(inside)];
    const double ro = f.r[static_cast<std::size_t>(outside)];
    const double xi = f.grid.node(inside);
    const double xo = f.grid.node(outside);
    return xi + (xo - xi) * (ri - threshold) / (ri - ro);
}

struct Fit {
    double slope = 0.0;
    double std_err = 0.0;
};

Fit least_squares(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t m = t.size();
    double mean_t = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_t += t[i];
        mean_y += y[i];
    }
    mean_t /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dt = t[i] - mean_t;
        sxx += dt * dt;
        sxy += dt * (y[i] - mean_y);
    }
    if (!(sxx > 0.0)) throw InsufficientDataError("speed fit: degenerate time window");

    Fit fit;
    fit.slope = sxy / sxx;
    const double intercept = mean_y - fit.slope * mean_t;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double res = y[i] - (intercept + fit.slope * t[i]);
        ssr += res * res;
    }
    fit.std_err = std::sqrt(std::max(0.0, ssr / static_cast<double>(m - 2)) / sxx);
    return fit;
}

SpeedEstimate fit_window(const std::vector<double>& times, const std::vector<double>& pos,
                         double window_fraction) {
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw ValidationError("window_fraction must lie in (0, 1]");
    if (times.size() < 3)
        throw InsufficientDataError("speed fit needs at least 3 points; increase t_end");

    const double t0 = times.front();
    const double t1 = times.back();
    const double t_start = t1 - window_fraction * (t1 - t0);
    const double slack = 1e-12 * std::max(1.0, std::abs(t1));

    std::vector<double> wt, wy;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= t_start - slack) {
            wt.push_back(times[i]);
            wy.push_back(pos[i]);
        }
    }
    if (wt.size() < 3)
        throw InsufficientDataError("speed fit window holds fewer than 3 points; "
                                    "increase t_end or the window fraction");

    const Fit fit = least_squares(wt, wy);
    return {fit.slope, fit.std_err, wt.front(), wt.back()};
}

}  // namespace

FrontPair detect_fronts(const PolarField& field, double threshold) {
    if (!(threshold > 0.0) || !std::isfinite(threshold))
        throw ValidationError("front threshold must be positive");
    const int n = field.grid.n;

    int hi = n - 1;
    while (hi >= 0 && field.r[static_cast<std::size_t>(hi)] < threshold) --hi;
    if (hi < 0) throw NoFrontError("no node reaches r = " + std::to_string(threshold));

    int lo = 0;
    while (field.r[static_cast<std::size_t>(lo)] < threshold) ++lo;

    FrontPair fronts;
    fronts.right = (hi == n - 1) ? field.grid.node(hi) : interpolate_crossing(field, hi, hi + 1, threshold);
    fronts.left = (lo == 0) ? field.grid.node(lo) : interpolate_crossing(field, lo, lo - 1, threshold);
    return fronts;
}

FrontTrace build_trace(const std::vector<PolarField>& snapshots, double threshold) {
    FrontTrace trace;
    trace.threshold = threshold;
    for (const auto& snap : snapshots) {
        try {
            const FrontPair fronts = detect_fronts(snap, threshold);
            trace.times.push_back(snap.t);
            trace.left_pos.push_back(fronts.left);
            trace.right_pos.push_back(fronts.right);
        } catch (const NoFrontError&) {
            trace.skipped_times.push_back(snap.t);
        }
    }
    if (trace.times.size() < 4)
        throw InsufficientDataError("only " + std::to_string(trace.times.size()) +
                                    " snapshots have a detectable front (need 4); increase t_end");
    return trace;
}

SpeedEstimate estimate_speed(const FrontTrace& trace, Side side, double window_fraction) {
    return fit_window(trace.times, side == Side::left ? trace.left_pos : trace.right_pos,
                      window_fraction);
}

SpeedEstimate centreline_speed(const FrontTrace& trace, double window_fraction) {
    std::vector<double> mid(trace.times.size());
    for (std::size_t i = 0; i < mid.size(); ++i)
        mid[i] = 0.5 * (trace.left_pos[i] + trace.right_pos[i]);
    return fit_window(trace.times, mid, window_fraction);
}

double onset_angle(const PolarField& field, double front, Side side, double inset) {
    if (!(inset > 0.0) || !std::isfinite(inset))
        throw ValidationError("onset inset must be positive");
    const double x_probe = side == Side::right ? front - inset : front + inset;
    if (x_probe < field.grid.x_min || x_probe > field.grid.x_max)
        throw InvalidInsetError("onset probe lies outside the grid");

    const double h = field.grid.h();
    int i = static_cast<int>(std::lround((x_probe - field.grid.x_min) / h));
    i = std::max(0, std::min(field.grid.n - 1, i));
    if (!field.theta_valid[static_cast<std::size_t>(i)])
        throw InvalidInsetError("onset probe lands outside the pattern (r below floor)");

    double m = std::fmod(field.theta[static_cast<std::size_t>(i)], kPi);
    if (m < 0.0) m += kPi;
    return m;
}

SpeedReport analyze_snapshots(const std::vector<PolarField>& snapshots, const SystemParams& params,
                              double threshold, double window_fraction, double inset) {
    const FrontTrace trace = build_trace(snapshots, threshold);

    SpeedReport report;
    report.params = params;
    report.threshold = threshold;
    report.left = estimate_speed(trace, Side::left, window_fraction);
    report.right = estimate_speed(trace, Side::right, window_fraction);
    report.centreline = centreline_speed(trace, window_fraction);

    const PolarField& last = snapshots.back();
    const FrontPair fronts = detect_fronts(last, threshold);
    report.left_onset_angle = onset_angle(last, fronts.left, Side::left, inset);
    report.right_onset_angle = onset_angle(last, fronts.right, Side::right, inset);
    return report;
}

}  // namespace lomega
