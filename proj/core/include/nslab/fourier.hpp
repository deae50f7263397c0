#pragma once

#include <vector>

#include "nslab/grid.hpp"
#include "nslab/spectral_field.hpp"

namespace nslab {

/// Real-valued samples of a vector field on the collocation grid,
/// component-major, same row-major axis order as the spectral storage.
struct PhysicalField {
    GridSpec grid{};
    std::vector<double> data;  // components * n^dim

    double* component(int comp) { return data.data() + static_cast<std::size_t>(comp) * grid.point_count(); }
    const double* component(int comp) const {
        return data.data() + static_cast<std::size_t>(comp) * grid.point_count();
    }
};

// Transform convention (asserted by a round-trip test): stored spectral
// coefficients are Fourier-series amplitudes, so synthesis (spectral ->
// physical) is the unscaled e^{+ik.x} sum and analysis divides by n^dim.
//
// FFTW plans are cached per (dim, n) in thread-local workspaces; plan
// creation is serialized behind a global mutex (the FFTW planner is not
// thread-safe), execution is concurrent.
//
// Note: with the default 2/3 cutoff and n divisible by 3, 3*kmax == n, so
// cubic integrands evaluated on the grid alias marginally; grids with
// n % 3 != 0 make advection energy-neutrality exact to roundoff.

PhysicalField to_physical(const SpectralField& u);
SpectralField to_spectral(const PhysicalField& u);

/// Single-component helpers used by the nonlinear term.
void synthesize_component(const SpectralField& u, int comp, std::vector<double>& out);
void analyze_component(const GridSpec& grid, const std::vector<double>& in, SpectralField& out, int comp);

}  // namespace nslab
