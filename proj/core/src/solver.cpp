#include "nslab/solver.hpp"

#include <cmath>

#include "nslab/snapshot_io.hpp"

namespace nslab {

namespace {

std::string format_time(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", t);
    return buf;
}

}  // namespace

LeraySolver::LeraySolver(RunConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    state_ = initial_condition(cfg_);

    if (cfg_.force != ForceKind::Zero) {
        force_field_ = read_snapshot(cfg_.force_snapshot);
        if (!force_field_.same_grid(state_))
            throw std::invalid_argument("field `force_snapshot` grid does not match the run grid");
        dealias_in_place(force_field_);
        zero_mean_in_place(force_field_);  // velocity stays mean-free
    }

    const std::size_t modes = state_.modes_per_component();
    decay_.resize(modes);
    for (std::size_t i = 0; i < modes; ++i) {
        const double k2 = static_cast<double>(squared_norm(state_.wavevector(i)));
        decay_[i] = std::exp(-cfg_.nu * k2 * cfg_.dt);
    }
}

SpectralField LeraySolver::force_at(double t) const {
    if (cfg_.force == ForceKind::Zero) return SpectralField(cfg_.grid);
    SpectralField f = force_field_;
    if (cfg_.force == ForceKind::TimeDecaying) f *= std::exp(-cfg_.force_rate * t);
    return f;
}

SpectralField LeraySolver::explicit_part(const SpectralField& v, double t) const {
    const SpectralField advecting = mollify(v, cfg_.mollifier);
    SpectralField n = nonlinear_term(advecting, v);
    n *= -1.0;
    if (cfg_.force != ForceKind::Zero) n += force_at(t);
    n = project_div_free(n);
    zero_mean_in_place(n);
    dealias_in_place(n);
    return n;
}

SpectralField LeraySolver::rhs(const SpectralField& v, double t) const {
    SpectralField out = laplacian(v);
    out *= cfg_.nu;
    out += explicit_part(v, t);
    return out;
}

void LeraySolver::apply_decay(SpectralField& v) const {
    const std::size_t modes = v.modes_per_component();
    for (int c = 0; c < v.components(); ++c) {
        auto span = v.component(c);
        for (std::size_t i = 0; i < modes; ++i) span[i] *= decay_[i];
    }
}

void LeraySolver::check_finite(const SpectralField& v) const {
    for (const auto& c : v.raw()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw BlowupError(t_, "solution lost finiteness (NaN/Inf coefficient) at t = " + format_time(t_));
    }
}

const SpectralField& LeraySolver::stage() const {
    if (!stage_valid_) {
        stage_ = explicit_part(state_, t_);
        stage_valid_ = true;
    }
    return stage_;
}

void LeraySolver::step() {
    // integrating-factor Heun: exact diffusion per mode, explicit advection
    // and force; v^{n+1} = E(v^n + dt/2 N1) + dt/2 N2(E(v^n + dt N1)).
    const double dt = cfg_.dt;
    const SpectralField& n1 = stage();

    SpectralField predictor = state_;
    {
        SpectralField full_n1 = n1;
        full_n1 *= dt;
        predictor += full_n1;
    }
    apply_decay(predictor);
    const SpectralField n2 = explicit_part(predictor, t_ + dt);

    SpectralField next = state_;
    {
        SpectralField half_n1 = n1;
        half_n1 *= 0.5 * dt;
        next += half_n1;
    }
    apply_decay(next);
    {
        SpectralField half_n2 = n2;
        half_n2 *= 0.5 * dt;
        next += half_n2;
    }

    state_ = std::move(next);
    t_ += dt;
    ++step_index_;
    stage_valid_ = false;
    check_finite(state_);
}

void LeraySolver::record_sample(TrajectoryRecord& traj) const {
    const SpectralField lap = laplacian(state_);
    SpectralField vt_field = lap;
    vt_field *= cfg_.nu;
    vt_field += stage();

    traj.times.push_back(t_);
    const double e = l2_norm(state_);
    traj.energy.push_back(e * e);
    traj.rho.push_back(grad_norm_sq(state_));
    traj.fwork.push_back(cfg_.force == ForceKind::Zero ? 0.0 : 2.0 * inner(force_at(t_), state_));
    const double pd = l2_norm(lap);
    traj.pdelta.push_back(pd * pd);
    const double vtn = l2_norm(vt_field);
    traj.vt.push_back(vtn * vtn);
    traj.cross.push_back(inner(lap, vt_field));
}

TrajectoryRecord LeraySolver::run(const SnapshotSink& on_snapshot) {
    TrajectoryRecord traj;
    traj.meta = cfg_;
    const long long steps = cfg_.step_count();

    record_sample(traj);
    if (on_snapshot && cfg_.snapshot_every > 0) on_snapshot(0, t_, state_);

    for (long long i = 1; i <= steps; ++i) {
        try {
            step();
        } catch (const BlowupError& e) {
            traj.truncated = true;
            traj.truncation_time = e.t;
            traj.truncation_reason = e.what();
            break;
        }
        if (i % cfg_.sample_every == 0 || i == steps) record_sample(traj);
        if (on_snapshot && cfg_.snapshot_every > 0 && i % cfg_.snapshot_every == 0)
            on_snapshot(i, t_, state_);
    }
    return traj;
}

TrajectoryRecord run(const RunConfig& cfg, const LeraySolver::SnapshotSink& on_snapshot) {
    LeraySolver solver(cfg);
    return solver.run(on_snapshot);
}

}  // namespace nslab
