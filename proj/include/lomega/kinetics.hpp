#pragma once

#include <vector>

namespace lomega {

struct CartesianPoint {
    double u = 0.0;
    double v = 0.0;
};

struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;
};

struct ReactionRates {
    double f = 0.0;  // du/dt
    double g = 0.0;  // dv/dt
};

struct PolarRates {
    double dr_dt = 0.0;
    double dtheta_dt = 0.0;
};

struct OdeTrajectory {
    std::vector<double> times;
    std::vector<CartesianPoint> points;
};

// Space-free reaction kinetics: f = -v + u(1 - u^2 - v^2), g = u + v(1 - u^2 - v^2).
ReactionRates reaction_terms(const CartesianPoint& point);

// Same kinetics in polar form: dr/dt = r(1 - r^2), dtheta/dt = 1.
PolarRates polar_rhs(const PolarPoint& point);

PolarPoint to_polar_point(const CartesianPoint& point);
CartesianPoint to_cartesian_point(const PolarPoint& point);

// Fixed-step classical RK4 integration of reaction_terms from `start`.
// The trajectory includes the initial point; the last time is >= t_end - dt.
// Throws IntegrationDivergedError if the state becomes non-finite.
OdeTrajectory integrate_ode(const CartesianPoint& start, double dt, double t_end);

// Radii along a trajectory.
std::vector<double> radii(const OdeTrajectory& trajectory);

// Total phase advance theta(end) - theta(0), unwrapped sample to sample.
double phase_advance(const OdeTrajectory& trajectory);

}  // namespace lomega
