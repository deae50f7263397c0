#include "nslab/identities.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

namespace {

ResidualSeries make_series(const TrajectoryRecord& traj, std::vector<double> values) {
    ResidualSeries out;
    out.times = traj.times;
    out.values = std::move(values);
    for (double v : out.values) out.max_abs = std::max(out.max_abs, std::abs(v));
    return out;
}

}  // namespace

ResidualSeries energy_identity_residual(const TrajectoryRecord& traj) {
    if (traj.size() < 3) throw std::invalid_argument("energy_identity_residual needs >= 3 samples");
    const double nu = traj.meta.nu;
    const std::vector<double> de = time_derivative(traj.times, traj.energy);
    std::vector<double> r(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        r[i] = de[i] + 2.0 * nu * traj.rho[i] - traj.fwork[i];
    return make_series(traj, std::move(r));
}

ResidualSeries enstrophy_identity_residual(const TrajectoryRecord& traj) {
    if (traj.size() < 3) throw std::invalid_argument("enstrophy_identity_residual needs >= 3 samples");
    if (!traj.has_cross())
        throw std::runtime_error(
            "enstrophy_identity_residual: missing snapshot data (the cross pairing (P Lap v, v_t) is "
            "recorded in-memory by the solver and is not part of the trajectory CSV)");
    const std::vector<double> drho = time_derivative(traj.times, traj.rho);
    std::vector<double> r(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double cross_norm = traj.pdelta[i] + traj.vt[i] - 2.0 * traj.cross[i];
        r[i] = drho[i] + traj.pdelta[i] + traj.vt[i] - cross_norm;
    }
    return make_series(traj, std::move(r));
}

ClFunctional cl_functional(const TrajectoryRecord& traj) {
    if (traj.size() < 3) throw std::invalid_argument("cl_functional needs >= 3 samples");
    const std::vector<double> drho = time_derivative(traj.times, traj.rho);
    std::vector<double> primary(traj.size()), companion(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double rho = traj.rho[i];
        const double num = std::abs(drho[i]);
        primary[i] = num / ((1.0 + rho) * (1.0 + rho));
        companion[i] = num / ((1.0 + rho * rho) * (1.0 + rho * rho));
    }
    ClFunctional out;
    out.primary = trapezoid(traj.times, primary, 0, traj.size() - 1);
    out.companion = trapezoid(traj.times, companion, 0, traj.size() - 1);
    return out;
}

}  // namespace nslab
