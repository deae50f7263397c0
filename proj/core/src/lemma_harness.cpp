#include "nslab/lemma_harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nslab/run_config.hpp"

namespace nslab {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double decay_probe_rho = 1e12;
constexpr double decay_probe_tol = 0.01;

/// Composite trapezoid of f over [0, t_end] split at the family's
/// breakpoints, `per_piece` nodes per smooth piece.
template <typename Fn>
double piecewise_integral(const std::vector<double>& breakpoints, double t_end, Fn&& f,
                          int per_piece = 512) {
    std::vector<double> cuts{0.0, t_end};
    for (double b : breakpoints)
        if (b > 0.0 && b < t_end) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double a = cuts[p], b = cuts[p + 1];
        if (b - a <= 0.0) continue;
        const double h = (b - a) / per_piece;
        // sample strictly inside at the piece ends so jump discontinuities
        // at the cuts do not leak across pieces
        double sum = 0.5 * (f(a + 1e-9 * (b - a)) + f(b - 1e-9 * (b - a)));
        for (int i = 1; i < per_piece; ++i) sum += f(a + i * h);
        total += sum * h;
    }
    return total;
}

std::vector<double> family_breakpoints(const SyntheticFamily& family, int m) {
    return family.breakpoints ? family.breakpoints(m) : std::vector<double>{};
}

void check_hypotheses(const SyntheticFamily& family, const ThresholdFn& g, const WeightFn& p,
                      const std::vector<double>& alphas, const std::vector<int>& ms, double t_end) {
    if (alphas.empty() || ms.empty())
        throw std::invalid_argument("wc_weighted_limit needs non-empty alpha and m lists");

    for (int m : ms) {
        const auto bps = family_breakpoints(family, m);
        double l1 = piecewise_integral(bps, t_end, [&](double t) {
            const double v = family.evaluate(m, t);
            if (v < 0.0)
                throw std::invalid_argument("family violates non-negativity: h_m(t) < 0 for m = " +
                                            std::to_string(m));
            return v;
        });
        if (l1 > family.l1_bound * (1.0 + 1e-6) + 1e-9)
            throw std::invalid_argument("family violates the uniform L1 bound: int h_" + std::to_string(m) +
                                        " exceeds the declared bound");
    }

    for (std::size_t i = 0; i + 1 < alphas.size(); ++i)
        if (!(g(alphas[i]) < g(alphas[i + 1])))
            throw std::invalid_argument("threshold function g is not strictly increasing on the alpha list");

    for (double alpha : alphas) {
        const double ga = g(alpha);
        if (!(ga > 0.0)) throw std::invalid_argument("threshold function g must be positive");
        for (double frac : {0.0, 0.25, 0.5, 0.9, 0.999})
            if (std::abs(p(alpha, frac * ga) - 1.0) > 1e-12)
                throw std::invalid_argument("weight is not identically 1 on [0, g(alpha)]");
        double prev = 1.0;
        for (double rho = ga; rho <= 1e9; rho *= 4.0) {
            const double val = p(alpha, rho);
            if (val < -1e-12 || val > 1.0 + 1e-12)
                throw std::invalid_argument("weight leaves the range [0, 1]");
            if (val > prev + 1e-12)
                throw std::invalid_argument("weight is not weakly decreasing in rho");
            prev = val;
        }
        if (p(alpha, decay_probe_rho) > decay_probe_tol)
            throw std::invalid_argument("weight does not vanish as rho -> infinity");
    }
}

}  // namespace

SyntheticFamily constant_family(double value, double t_end) {
    if (value < 0.0) throw std::invalid_argument("constant_family needs value >= 0");
    SyntheticFamily fam;
    fam.description = "constant: h_m = h = " + std::to_string(value);
    fam.evaluate = [value](int, double) { return value; };
    fam.limit = [value](double) { return value; };
    fam.breakpoints = [](int) { return std::vector<double>{}; };
    fam.l1_bound = value * t_end;
    return fam;
}

SyntheticFamily shrinking_spike_family(double base, double mass, double t_end, double width0) {
    if (base < 0.0 || mass < 0.0 || width0 <= 0.0)
        throw std::invalid_argument("shrinking_spike_family needs base, mass >= 0 and width0 > 0");
    SyntheticFamily fam;
    fam.description = "shrinking spike at t = 0: mass " + std::to_string(mass) +
                      ", width w0/m^2; h_m -> base except at t = 0";
    fam.evaluate = [base, mass, width0](int m, double t) {
        const double width = width0 / (static_cast<double>(m) * m);
        const double height = mass / width;
        return base + (t >= 0.0 && t < width ? height : 0.0);
    };
    fam.limit = [base](double) { return base; };
    fam.breakpoints = [width0](int m) {
        return std::vector<double>{width0 / (static_cast<double>(m) * m)};
    };
    fam.l1_bound = base * t_end + mass;
    return fam;
}

SyntheticFamily oscillating_mass_family(double base, double mass, double t_end, std::uint64_t seed) {
    if (base < 0.0 || mass < 0.0)
        throw std::invalid_argument("oscillating_mass_family needs base, mass >= 0");
    // golden-ratio walk keeps the spike centers equidistributed; widths sum
    // finitely so h_m -> base a.e.
    const double golden = 0.61803398874989484820;
    const double phase = 0.31830988618 * static_cast<double>(seed % 1024);
    auto spike_window = [=](int m) {
        const double width = 1.0 / (static_cast<double>(m) * m);
        double c = std::fmod(static_cast<double>(m) * golden + phase, 1.0);
        const double center = c * std::max(t_end - width, 0.0);
        return std::pair<double, double>{center, center + width};
    };
    SyntheticFamily fam;
    fam.description = "walking spike: mass " + std::to_string(mass) + ", width 1/m^2, center wandering";
    fam.evaluate = [=](int m, double t) {
        const auto [lo, hi] = spike_window(m);
        const double height = mass * (static_cast<double>(m) * m);
        return base + (t >= lo && t < hi ? height : 0.0);
    };
    fam.limit = [base](double) { return base; };
    fam.breakpoints = [=](int m) {
        const auto [lo, hi] = spike_window(m);
        return std::vector<double>{lo, hi};
    };
    fam.l1_bound = base * t_end + mass;
    return fam;
}

WcTable wc_weighted_limit(const SyntheticFamily& family, const ThresholdFn& g, const WeightFn& p,
                          const std::vector<double>& alphas, const std::vector<int>& ms, double t_end,
                          double tol) {
    check_hypotheses(family, g, p, alphas, ms, t_end);

    WcTable table;
    table.alphas = alphas;
    table.ms = ms;
    table.limit_integral = piecewise_integral({}, t_end, [&](double t) { return family.limit(t); }, 4096);

    table.weighted.assign(alphas.size(), std::vector<double>(ms.size(), 0.0));
    table.plain.assign(alphas.size(), std::vector<double>(ms.size(), 0.0));
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        for (std::size_t mi = 0; mi < ms.size(); ++mi) {
            const int m = ms[mi];
            const auto bps = family_breakpoints(family, m);
            table.weighted[ai][mi] = piecewise_integral(bps, t_end, [&](double t) {
                const double h = family.evaluate(m, t);
                return h * p(alphas[ai], h);
            });
            table.plain[ai][mi] =
                piecewise_integral(bps, t_end, [&](double t) { return family.evaluate(m, t); });
        }
    }

    table.corner_distance = std::abs(table.weighted.back().back() - table.limit_integral);

    const std::size_t diag = std::min(alphas.size(), ms.size());
    table.diagonal_monotone = true;
    double prev = std::abs(table.weighted[alphas.size() - diag][ms.size() - diag] - table.limit_integral);
    for (std::size_t j = 1; j < diag; ++j) {
        const double d =
            std::abs(table.weighted[alphas.size() - diag + j][ms.size() - diag + j] - table.limit_integral);
        if (d > prev * 1.05 + 1e-12) table.diagonal_monotone = false;
        prev = d;
    }

    table.pass = table.corner_distance <= tol && table.diagonal_monotone;
    return table;
}

double interpolation_exponent(double r, double q, int dim) {
    if (!(q >= 1.0) || !(r >= 1.0))
        throw std::invalid_argument("interpolation exponents need r, q >= 1");
    if (dim != 2 && dim != 3) throw std::invalid_argument("interpolation dim must be 2 or 3");
    const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    const double denom = 0.5 - 2.0 / dim - inv_q;
    if (std::abs(denom) < 1e-14)
        throw std::invalid_argument("interpolation exponent is degenerate for these (r, q, dim)");
    const double a = (inv_r - inv_q) / denom;
    if (!(a >= 0.0 && a < 1.0))
        throw std::invalid_argument("interpolation exponent a = " + std::to_string(a) +
                                    " falls outside [0, 1)");
    return a;
}

double interpolation_ratio(const SpectralField& u, double r, double q) {
    const double a = interpolation_exponent(r, q, u.grid().dim);
    const double num = lq_norm(u, r);
    const double pdelta = l2_norm(project_div_free(laplacian(u)));
    const double uq = lq_norm(u, q);
    const double den = std::pow(pdelta, a) * std::pow(uq, 1.0 - a);
    if (!(den > 0.0)) throw std::invalid_argument("interpolation_ratio: zero denominator");
    return num / den;
}

InterpolationCampaign interpolation_campaign(int samples, int n, double r, double q, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("interpolation_campaign needs samples >= 1");
    GridSpec grid;
    grid.dim = 3;
    grid.n = n;
    grid.validate();
    InterpolationCampaign out;
    out.samples = samples;
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        const SpectralField u =
            random_div_free_field(grid, seed + static_cast<std::uint64_t>(i), -2.0, 1.0);
        const double ratio = interpolation_ratio(u, r, q);
        out.max_ratio = std::max(out.max_ratio, ratio);
        sum += ratio;
    }
    out.mean_ratio = sum / samples;
    return out;
}

std::vector<LdRow> ld_limit(const std::vector<double>& alphas) {
    std::vector<LdRow> rows;
    rows.reserve(alphas.size());
    for (double alpha : alphas) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("ld_limit alphas must lie in (0, 1)");
        LdRow row;
        row.alpha = alpha;
        row.value = (1.0 - alpha) * std::tan(alpha * pi / 2.0);
        row.distance = std::abs(row.value - 2.0 / pi);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace nslab
