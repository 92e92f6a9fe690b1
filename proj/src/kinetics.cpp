#include "lomega/kinetics.hpp"

#include <cmath>

#include "lomega/errors.hpp"

namespace lomega {

ReactionRates reaction_terms(const CartesianPoint& point) {
    const double s = 1.0 - (point.u * point.u + point.v * point.v);
    return {-point.v + point.u * s, point.u + point.v * s};
}

PolarRates polar_rhs(const PolarPoint& point) {
    return {point.r * (1.0 - point.r * point.r), 1.0};
}

PolarPoint to_polar_point(const CartesianPoint& point) {
    return {std::hypot(point.u, point.v), std::atan2(point.v, point.u)};
}

CartesianPoint to_cartesian_point(const PolarPoint& point) {
    return {point.r * std::cos(point.theta), point.r * std::sin(point.theta)};
}

OdeTrajectory integrate_ode(const CartesianPoint& start, double dt, double t_end) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("integrate_ode: dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("integrate_ode: t_end must be positive");

    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    OdeTrajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.points.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.points.push_back(start);

    CartesianPoint y = start;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const ReactionRates k1 = reaction_terms(y);
        const ReactionRates k2 = reaction_terms({y.u + 0.5 * dt * k1.f, y.v + 0.5 * dt * k1.g});
        const ReactionRates k3 = reaction_terms({y.u + 0.5 * dt * k2.f, y.v + 0.5 * dt * k2.g});
        const ReactionRates k4 = reaction_terms({y.u + dt * k3.f, y.v + dt * k3.g});
        y.u += dt / 6.0 * (k1.f + 2.0 * (k2.f + k3.f) + k4.f);
        y.v += dt / 6.0 * (k1.g + 2.0 * (k2.g + k3.g) + k4.g);
        const double t = static_cast<double>(i) * dt;
        if (!std::isfinite(y.u) || !std::isfinite(y.v))
            throw IntegrationDivergedError(t, "integrate_ode: state became non-finite at t=" + std::to_string(t));
        traj.times.push_back(t);
        traj.points.push_back(y);
    }
    return traj;
}

std::vector<double> radii(const OdeTrajectory& trajectory) {
    std::vector<double> out;
    out.reserve(trajectory.points.size());
    for (const auto& p : trajectory.points) out.push_back(std::hypot(p.u, p.v));
    return out;
}

double phase_advance(const OdeTrajectory& trajectory) {
    if (trajectory.points.size() < 2) return 0.0;
    constexpr double two_pi = 6.283185307179586476925286766559;
    double total = 0.0;
    double prev = std::atan2(trajectory.points[0].v, trajectory.points[0].u);
    for (std::size_t i = 1; i < trajectory.points.size(); ++i) {
        const double cur = std::atan2(trajectory.points[i].v, trajectory.points[i].u);
        total += std::remainder(cur - prev, two_pi);
        prev = cur;
    }
    return total;
}

}  // namespace lomega
