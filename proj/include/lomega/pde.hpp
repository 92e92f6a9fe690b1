#pragma once

#include <cmath>
#include <vector>

namespace lomega {

// Coordinate frame the equations are written in.
//
//   original:     u_t = eps1 u_xx - p u_x + f,        v_t = eps2 v_xx - q v_x + g
//   reduced:      u_t = eps1 u_xx + f,                v_t = eps2 v_xx - gamma v_x + g
//   flow_centred: u_t = eps1 u_xx + gamma_hat u_x + f, v_t = eps2 v_xx - gamma_hat v_x + g
//
// with gamma = q - p and gamma_hat = (q - p) / 2.
enum class Frame { original, reduced, flow_centred };

struct SystemParams {
    double eps1 = 1.0;
    double eps2 = 1.0;
    double p = 0.0;
    double q = 0.0;
    Frame frame = Frame::reduced;

    double gamma() const { return q - p; }
    double gamma_bar() const { return gamma() / std::sqrt(eps1); }
    double eps_bar() const { return eps2 / eps1 - 1.0; }
    double gamma_hat() const { return 0.5 * (q - p); }

    static SystemParams reduced(double gamma, double eps1, double eps2);
    static SystemParams original(double p, double q, double eps1, double eps2);
    static SystemParams flow_centred(double p, double q, double eps1, double eps2);

    void validate() const;  // throws ValidationError
};

struct Grid1D {
    double x_min = -100.0;
    double x_max = 100.0;
    int n = 2001;

    double h() const { return (x_max - x_min) / static_cast<double>(n - 1); }
    double node(int i) const { return x_min + static_cast<double>(i) * h(); }
    std::vector<double> nodes() const;

    void validate() const;  // throws ValidationError
};

enum class Species { u_only, v_only, both };

// Gaussian bump amplitude * exp(-((x - center)/width)^2) added to the flat
// state u = v = 0.
struct DisturbanceSpec {
    double center = 0.0;
    double amplitude = 0.01;
    double width = 1.0;
    Species species = Species::both;
};

struct FieldState {
    Grid1D grid;
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct FieldRates {
    std::vector<double> du_dt;
    std::vector<double> dv_dt;
};

FieldState build_initial_state(const Grid1D& grid, const DisturbanceSpec& disturbance);

// Method-of-lines right-hand side: second-order central differences for both
// diffusion and convection, zero-derivative boundaries via ghost-node
// mirroring (ghost equal to the boundary node's interior neighbour).
FieldRates rhs(const FieldState& state, const SystemParams& params);

// One classical RK4 step; returns a new state, the input is untouched.
FieldState step(const FieldState& state, const SystemParams& params, double dt);

// 0.4 * min(h^2 / (2 max(eps1, eps2)), h / max(|p|, |q|, |gamma|, 1e-12), 0.1)
double stable_dt(const Grid1D& grid, const SystemParams& params);

// Fixed-step integration from the initial disturbance, recording snapshots at
// multiples of snapshot_every plus the final time. Throws
// BoundaryContaminatedError if |u| or |v| exceeds 1e-3 within five nodes of
// either boundary at a snapshot time.
std::vector<FieldState> simulate(const SystemParams& params, const Grid1D& grid,
                                 const DisturbanceSpec& disturbance, double t_end,
                                 double snapshot_every);

}  // namespace lomega
