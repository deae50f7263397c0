#pragma once

#include <functional>
#include <stdexcept>

#include "nslab/run_config.hpp"
#include "nslab/trajectory.hpp"

namespace nslab {

/// Raised by step() when the state develops NaN/Inf; run() converts it into
/// a truncated trajectory record instead of propagating.
struct BlowupError : std::runtime_error {
    double t;
    explicit BlowupError(double t_, const std::string& what) : std::runtime_error(what), t(t_) {}
};

/// Time integrator for the mollified system
///   v_t + J_m[v] . grad v = nu Laplacian v + f,  div v = 0,
/// in projected spectral form. Diffusion is integrated exactly per mode by
/// the factor e^{-nu |k|^2 dt}; advection and forcing use a Heun
/// predictor-corrector under that factor (second order). The state stays
/// divergence-free, mean-zero and dealiased after every step.
class LeraySolver {
  public:
    explicit LeraySolver(RunConfig cfg);

    const RunConfig& config() const { return cfg_; }
    const SpectralField& state() const { return state_; }
    double time() const { return t_; }
    long long step_index() const { return step_index_; }

    /// Advance one dt. Throws BlowupError on NaN/Inf.
    void step();

    /// Force field at time t (zero field when unforced).
    SpectralField force_at(double t) const;

    /// Projected right-hand side P[nu Lap v - J_m v . grad v + f(t)];
    /// this is v_t of the semi-discrete system.
    SpectralField rhs(const SpectralField& v, double t) const;

    /// Integrate to t_end, sampling diagnostics every sample_every steps
    /// (plus the final step). On blow-up returns the truncated record.
    /// `on_snapshot(step, t, field)` fires every snapshot_every steps if
    /// the config asks for snapshots and the callback is set.
    using SnapshotSink = std::function<void(long long, double, const SpectralField&)>;
    TrajectoryRecord run(const SnapshotSink& on_snapshot = {});

  private:
    SpectralField explicit_part(const SpectralField& v, double t) const;
    /// P[-J_m v . grad v + f] at the current state, cached so a sampled
    /// step reuses the first Heun stage instead of re-evaluating it.
    const SpectralField& stage() const;
    void apply_decay(SpectralField& v) const;
    void check_finite(const SpectralField& v) const;
    void record_sample(TrajectoryRecord& traj) const;

    RunConfig cfg_;
    SpectralField state_;
    SpectralField force_field_;  // base field for fixed/time-decaying force
    std::vector<double> decay_;  // e^{-nu |k|^2 dt} per mode
    mutable SpectralField stage_;
    mutable bool stage_valid_ = false;
    double t_ = 0.0;
    long long step_index_ = 0;
};

/// Convenience wrapper: build the solver and run.
TrajectoryRecord run(const RunConfig& cfg, const LeraySolver::SnapshotSink& on_snapshot = {});

}  // namespace nslab
