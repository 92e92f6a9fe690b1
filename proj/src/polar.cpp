#include "lomega/polar.hpp"

#include <cmath>

#include "lomega/errors.hpp"

namespace lomega {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PolarField to_polar(const FieldState& state, double r_floor) {
    if (!(r_floor > 0.0) || !std::isfinite(r_floor))
        throw ValidationError("to_polar: r_floor must be positive");
    const std::size_t n = state.u.size();
    if (state.v.size() != n) throw ValidationError("to_polar: u and v sizes differ");

    PolarField out;
    out.grid = state.grid;
    out.t = state.t;
    out.r.resize(n);
    out.theta.resize(n);
    out.theta_valid.resize(n);

    std::ptrdiff_t prev_valid = -2;  // index of the previous valid node
    for (std::size_t i = 0; i < n; ++i) {
        out.r[i] = std::hypot(state.u[i], state.v[i]);
        const double raw = std::atan2(state.v[i], state.u[i]);
        const bool valid = out.r[i] >= r_floor;
        out.theta_valid[i] = valid ? 1 : 0;
        if (!valid) {
            out.theta[i] = raw;
            continue;
        }
        if (prev_valid == static_cast<std::ptrdiff_t>(i) - 1) {
            const double prev_raw = std::atan2(state.v[i - 1], state.u[i - 1]);
            out.theta[i] = out.theta[i - 1] + std::remainder(raw - prev_raw, kTwoPi);
        } else {
            out.theta[i] = raw;  // gap of invalid nodes resets the anchor
        }
        prev_valid = static_cast<std::ptrdiff_t>(i);
    }
    return out;
}

FieldState from_polar(const PolarField& field) {
    const std::size_t n = field.r.size();
    if (field.theta.size() != n) throw ValidationError("from_polar: r and theta sizes differ");

    FieldState out;
    out.grid = field.grid;
    out.t = field.t;
    out.u.resize(n);
    out.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.u[i] = field.r[i] * std::cos(field.theta[i]);
        out.v[i] = field.r[i] * std::sin(field.theta[i]);
    }
    return out;
}

}  // namespace lomega
