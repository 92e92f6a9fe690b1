#include "lomega/theory.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lomega/errors.hpp"

namespace lomega {

namespace {

struct SpeedPair {
    double left;
    double right;
};

// Amount added to a reduced-frame speed to express it in params.frame. The
// original frame sits at +p, the flow-centred frame at -gamma_hat; computing
// every estimate through this single shift makes frame covariance exact.
double frame_shift(const SystemParams& params) {
    switch (params.frame) {
        case Frame::reduced: return 0.0;
        case Frame::original: return params.p;
        case Frame::flow_centred: return -params.gamma_hat();
    }
    return 0.0;
}

Prediction shifted(SpeedPair speeds, Regime regime, const SystemParams& params, double theta) {
    const double s = frame_shift(params);
    return {speeds.left + s, speeds.right + s, regime, params.frame, theta};
}

SpeedPair simple_reduced(const SystemParams& params) {
    const double d = 2.0 * std::sqrt(params.eps1);
    return {-d, d};
}

SpeedPair small_reduced(const SystemParams& params) {
    const double centre = 0.5 * params.gamma();
    const double d = std::sqrt(2.0) * std::sqrt(params.eps1 + params.eps2);
    return {centre - d, centre + d};
}

SpeedPair large_reduced(const SystemParams& params) {
    const double g = params.gamma();
    if (g >= 0.0) return {-2.0 * std::sqrt(params.eps1), g + 2.0 * std::sqrt(params.eps2)};
    // Mirrored branch: the faster-diffusing species leads on the left.
    return {g - 2.0 * std::sqrt(params.eps2), 2.0 * std::sqrt(params.eps1)};
}

SpeedPair general_reduced(double theta, const SystemParams& params) {
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double s2 = st * st;
    const double c2 = ct * ct;
    const double centre = params.gamma() * s2;
    const double d = 2.0 * std::sqrt(params.eps1 * c2 + params.eps2 * s2);
    return {centre - d, centre + d};
}

// Three-way comparison with a borderline band for exact-equality parameter
// sets such as p = q = 2, eps1 = eps2 = 1.
int compare(double a, double b, bool& borderline) {
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) <= tol) {
        borderline = true;
        return 0;
    }
    return a > b ? 1 : -1;
}

}  // namespace

WaveProfile travelling_wave_profile(double c, double z_max) {
    if (c == 0.0 || !std::isfinite(c)) throw ValidationError("profile: c must be non-zero");
    if (!(z_max > 0.0) || !std::isfinite(z_max)) throw ValidationError("profile: z_max must be positive");

    constexpr double dz = 1e-3;
    constexpr double perturbation = 1e-6;
    constexpr double blow_up = 1e6;

    const double lambda_plus = 0.5 * (-c + std::sqrt(c * c + 8.0));

    double R = 1.0 - perturbation;
    double S = -perturbation * lambda_plus;

    const auto n_steps = static_cast<std::size_t>(std::ceil(z_max / dz - 1e-12));
    WaveProfile profile;
    profile.c = c;
    profile.z.reserve(n_steps + 1);
    profile.amplitude.reserve(n_steps + 1);
    profile.z.push_back(0.0);
    profile.amplitude.push_back(R);

    const auto accel = [c](double r, double s) { return -c * s - r * (1.0 - r * r); };
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const double k1r = S, k1s = accel(R, S);
        const double k2r = S + 0.5 * dz * k1s, k2s = accel(R + 0.5 * dz * k1r, S + 0.5 * dz * k1s);
        const double k3r = S + 0.5 * dz * k2s, k3s = accel(R + 0.5 * dz * k2r, S + 0.5 * dz * k2s);
        const double k4r = S + dz * k3s, k4s = accel(R + dz * k3r, S + dz * k3s);
        R += dz / 6.0 * (k1r + 2.0 * (k2r + k3r) + k4r);
        S += dz / 6.0 * (k1s + 2.0 * (k2s + k3s) + k4s);
        const double z = static_cast<double>(i) * dz;
        if (!std::isfinite(R) || !std::isfinite(S) || std::abs(R) > blow_up || std::abs(S) > blow_up)
            throw ProfileDivergedError(z, "profile integration diverged at z=" + std::to_string(z));
        profile.z.push_back(z);
        profile.amplitude.push_back(R);
        if (R <= 0.0) profile.remained_positive = false;
    }
    return profile;
}

Prediction simple_speed(const SystemParams& params) {
    params.validate();
    return shifted(simple_reduced(params), Regime::simple, params,
                   std::numeric_limits<double>::quiet_NaN());
}

Prediction general_speed(double theta, const SystemParams& params) {
    params.validate();
    if (!std::isfinite(theta)) throw ValidationError("general_speed: theta must be finite");
    return shifted(general_reduced(theta, params), Regime::general, params, theta);
}

Prediction small_param_speed(const SystemParams& params) {
    params.validate();
    return shifted(small_reduced(params), Regime::small_param, params,
                   std::numeric_limits<double>::quiet_NaN());
}

Prediction large_param_speed(const SystemParams& params) {
    params.validate();
    return shifted(large_reduced(params), Regime::large_param, params,
                   std::numeric_limits<double>::quiet_NaN());
}

Prediction flow_centred_speeds(const SystemParams& params) {
    params.validate();
    SystemParams flow = params;
    flow.frame = Frame::flow_centred;
    const Regime r = regime(params);
    const SpeedPair pair = r == Regime::large_param ? large_reduced(flow) : small_reduced(flow);
    return shifted(pair, r, flow, std::numeric_limits<double>::quiet_NaN());
}

Regime regime(const SystemParams& params) {
    params.validate();
    return std::abs(params.gamma_bar()) > 2.0 ? Regime::large_param : Regime::small_param;
}

Instability classify_instability(double left_speed, double right_speed, double zero_tol) {
    if (!(zero_tol >= 0.0)) throw ValidationError("zero_tol must be non-negative");
    if (std::abs(left_speed) < zero_tol || std::abs(right_speed) < zero_tol)
        return Instability::indeterminate;
    return (left_speed < 0.0) != (right_speed < 0.0) ? Instability::absolute
                                                     : Instability::convective;
}

ConvectiveReport convective_conditions(const SystemParams& params) {
    params.validate();
    ConvectiveReport report;
    report.regime = regime(params);

    const double energy = 8.0 * (params.eps1 + params.eps2);
    const double g = params.gamma();
    const double pq = params.p + params.q;

    report.small_reduced.lhs = g * g;
    report.small_reduced.rhs = energy;
    report.small_reduced.holds =
        compare(report.small_reduced.lhs, energy, report.small_reduced.borderline) > 0;

    report.small_original.lhs = pq * pq;
    report.small_original.rhs = energy;
    report.small_original.holds =
        compare(report.small_original.lhs, energy, report.small_original.borderline) > 0;

    bool chain_border = false;
    const double su = 2.0 * std::sqrt(params.eps1);
    const double sv = 2.0 * std::sqrt(params.eps2);
    report.large_q_gt_p = compare(params.q, params.p, chain_border) > 0 &&
                          compare(params.p, su, chain_border) > 0;
    report.large_p_gt_q = compare(params.p, params.q, chain_border) > 0 &&
                          compare(params.q, sv, chain_border) > 0;

    report.borderline =
        report.small_reduced.borderline || report.small_original.borderline || chain_border;

    if (report.regime == Regime::large_param) {
        report.indicates_convective =
            params.frame == Frame::original && (report.large_q_gt_p || report.large_p_gt_q);
    } else {
        report.indicates_convective = params.frame == Frame::original
                                          ? report.small_original.holds
                                          : report.small_reduced.holds;
    }
    return report;
}

}  // namespace lomega
