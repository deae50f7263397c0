#pragma once

#include <vector>

#include "nslab/trajectory.hpp"

namespace nslab {

struct ResidualSeries {
    std::vector<double> times;
    std::vector<double> values;
    double max_abs = 0.0;
};

/// Reynolds-Orr residual r(t) = d/dt energy + 2 nu rho - fwork, with the
/// time derivative by centered differences on the sample grid. The
/// identity is exact for the semi-discrete system, so max|r| must shrink
/// at the integrator's order under dt refinement. Needs >= 3 samples.
ResidualSeries energy_identity_residual(const TrajectoryRecord& traj);

/// Residual of d/dt rho + ||P Lap v||^2 + ||v_t||^2 - ||P Lap v - v_t||^2,
/// the cross norm expanded as pdelta + vt - 2 cross. Requires the in-memory
/// cross series (std::runtime_error "missing snapshot data" otherwise).
ResidualSeries enstrophy_identity_residual(const TrajectoryRecord& traj);

struct ClFunctional {
    double primary = 0.0;    // integral of |rho_dot| / (1 + rho)^2
    double companion = 0.0;  // integral of |rho_dot| / (1 + rho^2)^2
};

/// The uniform-in-m functional from the gradient-bound lemma, evaluated by
/// centered-difference rho_dot and trapezoid quadrature over the record.
ClFunctional cl_functional(const TrajectoryRecord& traj);

}  // namespace nslab
