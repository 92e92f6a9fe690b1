#include "lomega/pde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lomega/errors.hpp"
#include "lomega/kinetics.hpp"

namespace lomega {

namespace {

constexpr double kBoundaryTol = 1e-3;
constexpr int kBoundaryNodes = 5;

struct Convection {
    double cu;  // advection speed acting on u (term -cu * u_x)
    double cv;  // advection speed acting on v
};

Convection convection_coeffs(const SystemParams& params) {
    switch (params.frame) {
        case Frame::original: return {params.p, params.q};
        case Frame::reduced: return {0.0, params.gamma()};
        case Frame::flow_centred: return {-params.gamma_hat(), params.gamma_hat()};
    }
    return {0.0, 0.0};
}

void check_finite(double x, const char* name) {
    if (!std::isfinite(x)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

SystemParams SystemParams::reduced(double gamma, double eps1, double eps2) {
    SystemParams out{eps1, eps2, 0.0, gamma, Frame::reduced};
    out.validate();
    return out;
}

SystemParams SystemParams::original(double p, double q, double eps1, double eps2) {
    SystemParams out{eps1, eps2, p, q, Frame::original};
    out.validate();
    return out;
}

SystemParams SystemParams::flow_centred(double p, double q, double eps1, double eps2) {
    SystemParams out{eps1, eps2, p, q, Frame::flow_centred};
    out.validate();
    return out;
}

void SystemParams::validate() const {
    check_finite(eps1, "eps1");
    check_finite(eps2, "eps2");
    check_finite(p, "p");
    check_finite(q, "q");
    if (!(eps1 > 0.0)) throw ValidationError("eps1 must be positive");
    if (!(eps2 > 0.0)) throw ValidationError("eps2 must be positive");
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = node(i);
    return out;
}

void Grid1D::validate() const {
    check_finite(x_min, "x_min");
    check_finite(x_max, "x_max");
    if (n < 3) throw ValidationError("grid needs at least 3 nodes");
    if (!(x_min < x_max)) throw ValidationError("x_min must be less than x_max");
}

FieldState build_initial_state(const Grid1D& grid, const DisturbanceSpec& d) {
    grid.validate();
    check_finite(d.center, "disturbance.center");
    check_finite(d.amplitude, "disturbance.amplitude");
    check_finite(d.width, "disturbance.width");
    if (d.amplitude == 0.0) throw InvalidDisturbanceError("disturbance amplitude must be non-zero");
    if (!(d.width > 0.0)) throw InvalidDisturbanceError("disturbance width must be positive");
    if (d.center < grid.x_min || d.center > grid.x_max)
        throw InvalidDisturbanceError("disturbance center lies outside the grid");

    FieldState state;
    state.grid = grid;
    state.t = 0.0;
    state.u.assign(static_cast<std::size_t>(grid.n), 0.0);
    state.v.assign(static_cast<std::size_t>(grid.n), 0.0);
    for (int i = 0; i < grid.n; ++i) {
        const double z = (grid.node(i) - d.center) / d.width;
        const double bump = d.amplitude * std::exp(-z * z);
        if (d.species != Species::v_only) state.u[static_cast<std::size_t>(i)] = bump;
        if (d.species != Species::u_only) state.v[static_cast<std::size_t>(i)] = bump;
    }
    return state;
}

FieldRates rhs(const FieldState& state, const SystemParams& params) {
    params.validate();
    const int n = state.grid.n;
    if (static_cast<int>(state.u.size()) != n || static_cast<int>(state.v.size()) != n)
        throw ValidationError("rhs: field size does not match grid");

    const double h = state.grid.h();
    const double inv_h2 = 1.0 / (h * h);
    const double inv_2h = 1.0 / (2.0 * h);
    const auto [cu, cv] = convection_coeffs(params);

    FieldRates rates;
    rates.du_dt.resize(static_cast<std::size_t>(n));
    rates.dv_dt.resize(static_cast<std::size_t>(n));

    const double* u = state.u.data();
    const double* v = state.v.data();
    for (int i = 0; i < n; ++i) {
        // Ghost nodes mirror the interior neighbour, so the boundary normal
        // derivative vanishes.
        const int il = i > 0 ? i - 1 : 1;
        const int ir = i < n - 1 ? i + 1 : n - 2;
        const double ul = u[il], ur = u[ir];
        const double vl = v[il], vr = v[ir];
        // Symmetric association keeps x -> -x mirroring exact in floating point.
        const double u_xx = ((ul + ur) - 2.0 * u[i]) * inv_h2;
        const double v_xx = ((vl + vr) - 2.0 * v[i]) * inv_h2;
        const double u_x = (ur - ul) * inv_2h;
        const double v_x = (vr - vl) * inv_2h;
        const ReactionRates k = reaction_terms({u[i], v[i]});
        rates.du_dt[static_cast<std::size_t>(i)] = params.eps1 * u_xx - cu * u_x + k.f;
        rates.dv_dt[static_cast<std::size_t>(i)] = params.eps2 * v_xx - cv * v_x + k.g;
    }
    return rates;
}

FieldState step(const FieldState& state, const SystemParams& params, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("step: dt must be positive");
    const std::size_t n = state.u.size();

    const FieldRates k1 = rhs(state, params);

    FieldState stage = state;
    for (std::size_t i = 0; i < n; ++i) {
        stage.u[i] = state.u[i] + 0.5 * dt * k1.du_dt[i];
        stage.v[i] = state.v[i] + 0.5 * dt * k1.dv_dt[i];
    }
    const FieldRates k2 = rhs(stage, params);

    for (std::size_t i = 0; i < n; ++i) {
        stage.u[i] = state.u[i] + 0.5 * dt * k2.du_dt[i];
        stage.v[i] = state.v[i] + 0.5 * dt * k2.dv_dt[i];
    }
    const FieldRates k3 = rhs(stage, params);

    for (std::size_t i = 0; i < n; ++i) {
        stage.u[i] = state.u[i] + dt * k3.du_dt[i];
        stage.v[i] = state.v[i] + dt * k3.dv_dt[i];
    }
    const FieldRates k4 = rhs(stage, params);

    FieldState next;
    next.grid = state.grid;
    next.t = state.t + dt;
    next.u.resize(n);
    next.v.resize(n);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        next.u[i] = state.u[i] + w * (k1.du_dt[i] + 2.0 * (k2.du_dt[i] + k3.du_dt[i]) + k4.du_dt[i]);
        next.v[i] = state.v[i] + w * (k1.dv_dt[i] + 2.0 * (k2.dv_dt[i] + k3.dv_dt[i]) + k4.dv_dt[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(next.u[i]) || !std::isfinite(next.v[i]))
            throw SolverDivergedError(next.t, static_cast<int>(i),
                                      "solver diverged at t=" + std::to_string(next.t) +
                                          ", node " + std::to_string(i));
    }
    return next;
}

double stable_dt(const Grid1D& grid, const SystemParams& params) {
    grid.validate();
    params.validate();
    const double h = grid.h();
    const double diffusive = h * h / (2.0 * std::max(params.eps1, params.eps2));
    const double speed = std::max({std::abs(params.p), std::abs(params.q),
                                   std::abs(params.gamma()), 1e-12});
    const double advective = h / speed;
    return 0.4 * std::min({diffusive, advective, 0.1});
}

namespace {

void check_boundary(const FieldState& state) {
    const int n = state.grid.n;
    const int m = std::min(kBoundaryNodes, n);
    for (int k = 0; k < m; ++k) {
        for (int i : {k, n - 1 - k}) {
            const std::size_t j = static_cast<std::size_t>(i);
            if (std::abs(state.u[j]) > kBoundaryTol || std::abs(state.v[j]) > kBoundaryTol)
                throw BoundaryContaminatedError(
                    state.t, i,
                    "solution reached the grid boundary at t=" + std::to_string(state.t) +
                        ", node " + std::to_string(i) +
                        "; enlarge the domain or reduce t_end");
        }
    }
}

}  // namespace

std::vector<FieldState> simulate(const SystemParams& params, const Grid1D& grid,
                                 const DisturbanceSpec& disturbance, double t_end,
                                 double snapshot_every) {
    params.validate();
    grid.validate();
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("t_end must be positive");
    if (!(snapshot_every > 0.0) || !std::isfinite(snapshot_every))
        throw ValidationError("snapshot_every must be positive");

    // Snapshot times: multiples of snapshot_every, then t_end if it is not
    // already (close to) the last multiple.
    std::vector<double> times;
    const auto n_full = static_cast<std::size_t>(std::floor(t_end / snapshot_every + 1e-9));
    times.reserve(n_full + 1);
    for (std::size_t k = 1; k <= n_full; ++k) times.push_back(static_cast<double>(k) * snapshot_every);
    if (times.empty() || t_end - times.back() > 1e-9 * std::max(1.0, t_end)) times.push_back(t_end);

    const double dt_max = stable_dt(grid, params);

    std::vector<FieldState> snapshots;
    snapshots.reserve(times.size() + 1);
    snapshots.push_back(build_initial_state(grid, disturbance));
    check_boundary(snapshots.back());

    FieldState state = snapshots.back();
    for (const double target : times) {
        const double span = target - state.t;
        const auto n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / dt_max - 1e-12)));
        const double dt = span / static_cast<double>(n_steps);
        for (std::size_t j = 0; j < n_steps; ++j) state = step(state, params, dt);
        state.t = target;  // keep snapshot times exact
        check_boundary(state);
        snapshots.push_back(state);
    }
    return snapshots;
}

}  // namespace lomega
