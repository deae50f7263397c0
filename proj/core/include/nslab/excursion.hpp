#pragma once

#include <filesystem>
#include <vector>

#include "nslab/trajectory.hpp"

namespace nslab {

/// Threshold for the gradient-norm excursions: tan(alpha pi / 2).
double excursion_threshold(double alpha);

struct ExcursionInterval {
    double begin = 0.0;
    double end = 0.0;
    bool clipped_left = false;   // interval starts at the window edge with rho above threshold
    bool clipped_right = false;  // ditto at the right edge

    double length() const { return end - begin; }
};

/// The set J(alpha): maximal open intervals of the analysis window where
/// the linearly interpolated rho exceeds the threshold. Endpoints that are
/// not clipped sit on the interpolant's threshold crossing.
struct ExcursionSet {
    double alpha = 0.0;  // NaN when extracted from a raw threshold
    double threshold = 0.0;
    double window_begin = 0.0;
    double window_end = 0.0;
    std::vector<ExcursionInterval> intervals;

    double total_measure() const;
    bool contains(double t) const;
};

/// Extract from a sampled series over window [s, t] (window ends must lie
/// inside the sampled range; samples with NaN inside the window raise).
/// Crossings are located by linear inverse interpolation, so refined
/// endpoints satisfy |rho(endpoint) - threshold| <= eps (1e-9 relative) on
/// the interpolant. Grazing contact (a sample exactly at the threshold
/// with neighbours below) produces no interval: intervals are open with
/// rho strictly above the threshold inside.
ExcursionSet extract_excursions(const std::vector<double>& times, const std::vector<double>& rho,
                                double threshold, double s, double t);

/// Same, with threshold tan(alpha pi/2) and series from the record.
ExcursionSet extract_excursions(const TrajectoryRecord& traj, double alpha, double s, double t);

double measure(const ExcursionSet& set);

struct LimsupResult {
    std::vector<ExcursionInterval> intervals;  // intersection of all sets
    std::vector<int> indicator;                // per sample of the supplied grid
    double measure = 0.0;
    double bound = 0.0;  // ||rho||_1 / threshold when a rho series is given
    bool bound_available = false;
};

/// Finite-family stand-in for limsup_m J^m(alpha): the intersection of all
/// supplied sets (the literal tail-intersection degenerates to the last set
/// for a finite list). All sets must share alpha and window. When `times`
/// and `rho` are given (typically the largest-m series), the measure is
/// compared against the bound integral |rho| / threshold over the window.
LimsupResult limsup_excursions(const std::vector<ExcursionSet>& sets, const std::vector<double>& times,
                               const std::vector<double>& rho = {});

/// CSV dump, one row per interval: alpha,s_h,t_h,clipped_left,clipped_right.
void write_excursion_csv(const ExcursionSet& set, const std::filesystem::path& path);

}  // namespace nslab
