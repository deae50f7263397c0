#include "nslab/run_config.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nslab/fourier.hpp"

namespace nslab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

/// Fill a physical-space field from pointwise component formulas.
template <typename Fn>
SpectralField sample_field(const GridSpec& grid, Fn&& f) {
    PhysicalField phys;
    phys.grid = grid;
    const std::size_t pts = grid.point_count();
    phys.data.resize(static_cast<std::size_t>(grid.dim) * pts);
    const int n = grid.n;
    const double h = GridSpec::box / n;
    for (std::size_t i = 0; i < pts; ++i) {
        std::size_t rest = i;
        double z = 0.0;
        if (grid.dim == 3) {
            z = h * static_cast<double>(rest % n);
            rest /= n;
        }
        const double y = h * static_cast<double>(rest % n);
        const double x = h * static_cast<double>(rest / n);
        for (int c = 0; c < grid.dim; ++c) phys.component(c)[i] = f(c, x, y, z);
    }
    return to_spectral(phys);
}

SpectralField taylor_green(const GridSpec& grid, double amplitude) {
    if (grid.dim == 2) {
        return sample_field(grid, [amplitude](int c, double x, double y, double) {
            return c == 0 ? amplitude * std::sin(x) * std::cos(y) : -amplitude * std::cos(x) * std::sin(y);
        });
    }
    return sample_field(grid, [amplitude](int c, double x, double y, double z) {
        if (c == 0) return amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        if (c == 1) return -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
        return 0.0;
    });
}

SpectralField abc_flow(const GridSpec& grid, double amplitude) {
    // A = B = C = 1
    return sample_field(grid, [amplitude](int c, double x, double y, double z) {
        if (c == 0) return amplitude * (std::sin(z) + std::cos(y));
        if (c == 1) return amplitude * (std::sin(x) + std::cos(z));
        return amplitude * (std::sin(y) + std::cos(x));
    });
}

}  // namespace

SpectralField random_div_free_field(const GridSpec& grid, std::uint64_t seed, double slope,
                                    double amplitude) {
    SpectralField field(grid);
    std::mt19937_64 engine(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t modes = field.modes_per_component();
    // fixed mode order keeps same-seed runs bit-identical
    for (std::size_t i = 0; i < modes; ++i) {
        const WaveVector k = field.wavevector(i);
        if (!grid.retained(k)) continue;
        const bool canonical = k[0] > 0 || (k[0] == 0 && (k[1] > 0 || (k[1] == 0 && k[2] > 0)));
        if (!canonical) continue;
        const double envelope = std::pow(static_cast<double>(squared_norm(k)), 0.25 * slope);
        for (int c = 0; c < grid.dim; ++c)
            field.component(c)[i] = envelope * SpectralField::Complex{gauss(engine), gauss(engine)};
    }
    enforce_conjugate_symmetry(field);
    field = project_div_free(field);
    zero_mean_in_place(field);
    dealias_in_place(field);
    const double norm = l2_norm(field);
    if (norm > 0.0) field *= amplitude / norm;
    return field;
}

std::string to_string(InitialCondition ic) {
    switch (ic) {
        case InitialCondition::TaylorGreen: return "taylor-green";
        case InitialCondition::RandomDivFree: return "random-divfree";
        case InitialCondition::AbcFlow: return "abc-flow";
        case InitialCondition::Zero: return "zero";
    }
    return "?";
}

std::string to_string(ForceKind f) {
    switch (f) {
        case ForceKind::Zero: return "zero";
        case ForceKind::FixedField: return "fixed-field";
        case ForceKind::TimeDecaying: return "time-decaying";
    }
    return "?";
}

InitialCondition parse_initial_condition(const std::string& s) {
    if (s == "taylor-green") return InitialCondition::TaylorGreen;
    if (s == "random-divfree") return InitialCondition::RandomDivFree;
    if (s == "abc-flow") return InitialCondition::AbcFlow;
    if (s == "zero") return InitialCondition::Zero;
    throw std::invalid_argument("field `ic` has unknown preset `" + s + "`");
}

ForceKind parse_force_kind(const std::string& s) {
    if (s == "zero") return ForceKind::Zero;
    if (s == "fixed-field") return ForceKind::FixedField;
    if (s == "time-decaying") return ForceKind::TimeDecaying;
    throw std::invalid_argument("field `force` has unknown preset `" + s + "`");
}

void RunConfig::validate() const {
    grid.validate();
    mollifier.validate();
    require(std::isfinite(nu) && nu > 0.0, "field `nu` must be positive");
    require(std::isfinite(t_end) && t_end > 0.0, "field `t_end` must be positive");
    require(std::isfinite(dt) && dt > 0.0, "field `dt` must be positive");
    require(dt <= t_end, "field `dt` must not exceed `t_end`");
    require(sample_every >= 1, "field `sample_every` must be >= 1");
    require(snapshot_every >= 0, "field `snapshot_every` must be >= 0");
    require(std::isfinite(amplitude) && amplitude >= 0.0, "field `amplitude` must be non-negative");
    require(std::isfinite(slope), "field `slope` must be finite");
    require(std::isfinite(force_rate), "field `force_rate` must be finite");
    if (ic == InitialCondition::AbcFlow) require(grid.dim == 3, "ic preset `abc-flow` requires dim = 3");
    if (force != ForceKind::Zero)
        require(!force_snapshot.empty(),
                "field `force_snapshot` is required for force presets fixed-field and time-decaying");
}

long long RunConfig::step_count() const {
    const long long steps = std::llround(t_end / dt);
    return steps < 1 ? 1 : steps;
}

SpectralField ic_preset_field(const RunConfig& cfg) {
    switch (cfg.ic) {
        case InitialCondition::TaylorGreen: return taylor_green(cfg.grid, cfg.amplitude);
        case InitialCondition::AbcFlow: return abc_flow(cfg.grid, cfg.amplitude);
        case InitialCondition::RandomDivFree:
            return random_div_free_field(cfg.grid, cfg.seed, cfg.slope, cfg.amplitude);
        case InitialCondition::Zero: return SpectralField(cfg.grid);
    }
    throw std::logic_error("unreachable ic preset");
}

SpectralField initial_condition(const RunConfig& cfg) {
    SpectralField v0 = ic_preset_field(cfg);
    v0 = project_div_free(v0);
    zero_mean_in_place(v0);
    dealias_in_place(v0);
    return mollify(v0, cfg.mollifier);
}

}  // namespace nslab
