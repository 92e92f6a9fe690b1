#pragma once

#include <vector>

#include "lomega/pde.hpp"

namespace lomega {

enum class Regime { simple, small_param, large_param, general };

// Closed-form left/right wavespeed estimate, expressed in params.frame.
// theta is only meaningful for the general (angle-dependent) estimate.
struct Prediction {
    double left = 0.0;
    double right = 0.0;
    Regime regime = Regime::simple;
    Frame frame = Frame::reduced;
    double theta = 0.0;
};

// Amplitude profile of the travelling-wave ODE R'' + c R' + R(1 - R^2) = 0,
// integrated in z from the saddle at R = 1 towards the origin.
struct WaveProfile {
    std::vector<double> z;
    std::vector<double> amplitude;
    double c = 0.0;
    bool remained_positive = true;
};

enum class Instability { absolute, convective, indeterminate };

struct ConditionCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool borderline = false;
};

struct ConvectiveReport {
    Regime regime = Regime::small_param;
    ConditionCheck small_reduced;   // gamma^2 > 8 (eps1 + eps2)
    ConditionCheck small_original;  // (p + q)^2 > 8 (eps1 + eps2)
    bool large_q_gt_p = false;      // q > p > 2 sqrt(eps1)
    bool large_p_gt_q = false;      // p > q > 2 sqrt(eps2)
    bool borderline = false;
    bool indicates_convective = false;  // the condition applicable to params' frame/regime
};

// Integrates from (1, 0) perturbed by 1e-6 along the saddle's unstable
// eigenvector (eigenvalues (-c +- sqrt(c^2 + 8)) / 2). remained_positive
// records whether R stayed positive over [0, z_max]; profiles with c < 2
// spiral into the origin and cross zero.
WaveProfile travelling_wave_profile(double c, double z_max);

// Single-species (Fisher) speeds +-2 sqrt(eps1), shifted into params.frame.
Prediction simple_speed(const SystemParams& params);

// Angle-dependent estimate gamma sin^2(theta) +- 2 sqrt(eps1 cos^2 + eps2 sin^2)
// in the reduced frame, shifted into params.frame.
Prediction general_speed(double theta, const SystemParams& params);

// Small-parameter estimate gamma/2 +- sqrt(2) sqrt(eps1 + eps2).
Prediction small_param_speed(const SystemParams& params);

// Large-parameter estimate (-2 sqrt(eps1), gamma + 2 sqrt(eps2)); for
// gamma < 0 the mirrored branch (gamma - 2 sqrt(eps2), +2 sqrt(eps1)).
Prediction large_param_speed(const SystemParams& params);

// Speeds in the flow-centred frame for the regime selected by regime().
Prediction flow_centred_speeds(const SystemParams& params);

// large_param iff |gamma_bar| > 2; the boundary belongs to small_param.
Regime regime(const SystemParams& params);

// Absolute when the measured speeds straddle zero; speeds within zero_tol of
// zero give an indeterminate result rather than an error.
Instability classify_instability(double left_speed, double right_speed, double zero_tol);

// Evaluates the convective-instability inequalities and flags equality cases.
ConvectiveReport convective_conditions(const SystemParams& params);

}  // namespace lomega
