#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nslab/spectral_field.hpp"

namespace nslab {

/// A sequence h_m(t) >= 0 on [0, T], bounded in L^1 uniformly in m, with an
/// a.e. pointwise limit h(t). `breakpoints(m)` returns the boundaries of
/// the smooth pieces of h_m so quadratures can resolve spikes exactly.
struct SyntheticFamily {
    std::string description;
    std::function<double(int, double)> evaluate;       // h_m(t)
    std::function<double(double)> limit;               // h(t)
    std::function<std::vector<double>(int)> breakpoints;
    double l1_bound = 0.0;                             // recorded uniform bound B
};

/// h_m = h for every m, h(t) = value (the dominated/trivial case).
SyntheticFamily constant_family(double value, double t_end);

/// h_m = h + (mass m^2 / width0) chi_{[0, width0/m^2]}: constant spike mass
/// escaping to infinite height, h_m -> h everywhere except t = 0. The
/// plain integral stays offset by `mass`; the weighted one converges.
SyntheticFamily shrinking_spike_family(double base, double mass, double t_end, double width0 = 1.0);

/// Same constant-mass spike but with the support walking around [0, T]
/// (equidistributed centers, widths ~ 1/m^2): h_m -> h a.e. by summability
/// of the widths.
SyntheticFamily oscillating_mass_family(double base, double mass, double t_end, std::uint64_t seed);

using WeightFn = std::function<double(double alpha, double rho)>;
using ThresholdFn = std::function<double(double alpha)>;

/// Convergence table for the weighted-limit lemma: entries
/// int_0^T h_m p(alpha, h_m) dt over the (alpha, m) grid, their distance to
/// int_0^T h dt, and the pass verdict (corner within tol, diagonal
/// distances non-increasing up to 5% slack).
struct WcTable {
    std::vector<double> alphas;
    std::vector<int> ms;
    std::vector<std::vector<double>> weighted;  // [alpha][m]
    std::vector<std::vector<double>> plain;     // int h_m without weight
    double limit_integral = 0.0;
    double corner_distance = 0.0;
    bool diagonal_monotone = false;
    bool pass = false;
};

/// Verifies the lemma's hypotheses before evaluating and throws
/// std::invalid_argument naming the violated hypothesis:
///   - h_m >= 0 on the sample grid,
///   - int h_m <= declared L^1 bound (with quadrature slack),
///   - g strictly increasing on the supplied alphas,
///   - p in [0,1], p = 1 on [0, g(alpha)], weakly decreasing,
///     p(alpha, rho) -> 0 for large rho (probed at rho = 1e12).
WcTable wc_weighted_limit(const SyntheticFamily& family, const ThresholdFn& g, const WeightFn& p,
                          const std::vector<double>& alphas, const std::vector<int>& ms, double t_end,
                          double tol);

/// Exponent a solving a(1/2 - 2/dim) + (1-a)/q = 1/r; throws when the
/// solution leaves [0, 1). r may be infinity.
double interpolation_exponent(double r, double q, int dim);

/// ||u||_r / (||P Lap u||_2^a ||u||_q^{1-a}) for the interpolation
/// inequality; scale-invariant in u. Throws on zero denominator.
double interpolation_ratio(const SpectralField& u, double r, double q);

struct InterpolationCampaign {
    int samples = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
};

/// Sampling campaign over random divergence-free fields (3D by default per
/// the r = inf, q = 6 instance). Reports the empirical max, never a sharp
/// constant.
InterpolationCampaign interpolation_campaign(int samples, int n, double r, double q, std::uint64_t seed);

struct LdRow {
    double alpha = 0.0;
    double value = 0.0;     // (1 - alpha) tan(alpha pi/2)
    double distance = 0.0;  // |value - 2/pi|
};

/// Table of the scalar limit (1-alpha) tan(alpha pi/2) -> 2/pi.
std::vector<LdRow> ld_limit(const std::vector<double>& alphas);

}  // namespace nslab
