#pragma once

#include <cstdint>
#include <string>

#include "nslab/grid.hpp"
#include "nslab/spectral_field.hpp"

namespace nslab {

enum class InitialCondition { TaylorGreen, RandomDivFree, AbcFlow, Zero };
enum class ForceKind { Zero, FixedField, TimeDecaying };

std::string to_string(InitialCondition ic);
std::string to_string(ForceKind f);
InitialCondition parse_initial_condition(const std::string& s);
ForceKind parse_force_kind(const std::string& s);

/// One simulation of the mollified system. Config-file keys mirror these
/// field names one-to-one (grid fields flattened: dim, n, dealias).
struct RunConfig {
    GridSpec grid{};
    MollifierSpec mollifier{};     // key: m (and optional mollifier = sharp|gaussian)
    double nu = 1.0;               // viscosity of the dissipative term
    double t_end = 1.0;
    double dt = 1e-3;
    InitialCondition ic = InitialCondition::TaylorGreen;
    std::uint64_t seed = 0;        // random-divfree only
    double slope = -3.0;           // random-divfree spectrum slope
    double amplitude = 1.0;        // ic scale; random fields normalized to ||v0||_2 = amplitude
    ForceKind force = ForceKind::Zero;
    std::string force_snapshot;    // fixed-field / time-decaying source field
    double force_rate = 0.0;       // time-decaying: f(t) = f0 e^{-rate t}
    int sample_every = 1;          // recording stride in steps
    int snapshot_every = 0;        // 0 = no field snapshots

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Number of integrator steps: round(t_end / dt), at least 1.
    long long step_count() const;
};

/// Initial datum for a run: preset built at the grid resolution, projected
/// divergence-free, mean-zero, dealiased and mollified with the run's m
/// (this realizes v0^m as J_m applied to a fixed v0).
SpectralField initial_condition(const RunConfig& cfg);

/// Preset field before projection/mollification (exposed for tests).
SpectralField ic_preset_field(const RunConfig& cfg);

/// Random divergence-free field: seeded Gaussian coefficients with modal
/// envelope |k|^{slope/2}, projected, mean-zero, dealiased and normalized
/// to ||v||_2 = amplitude. Same seed, same field, bit for bit.
SpectralField random_div_free_field(const GridSpec& grid, std::uint64_t seed, double slope,
                                    double amplitude);

}  // namespace nslab
