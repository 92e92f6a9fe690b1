#pragma once

#include <cstdint>
#include <vector>

#include "lomega/pde.hpp"

namespace lomega {

// Polar view of a field snapshot. theta is spatially unwrapped left to right;
// nodes with r below the floor carry their raw atan2 value, are flagged
// invalid, and reset the unwrap anchor.
struct PolarField {
    Grid1D grid;
    double t = 0.0;
    std::vector<double> r;
    std::vector<double> theta;
    std::vector<std::uint8_t> theta_valid;
};

PolarField to_polar(const FieldState& state, double r_floor = 1e-4);

// Inverse map u = r cos(theta), v = r sin(theta).
FieldState from_polar(const PolarField& field);

}  // namespace lomega
