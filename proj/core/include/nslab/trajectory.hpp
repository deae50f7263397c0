#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nslab/run_config.hpp"

namespace nslab {

/// Scalar diagnostics sampled along one run. Columns map to the trajectory
/// CSV schema `t,energy,rho,fwork,pdelta,vt`:
///   energy = ||v||_2^2
///   rho    = ||grad v||_2^2
///   fwork  = 2 (f, v), the rate at which the force feeds d/dt||v||_2^2
///   pdelta = ||P Laplacian v||_2^2
///   vt     = ||v_t||_2^2 with v_t the projected right-hand side (exact for
///            the semi-discrete system, independent of the sampling stride)
/// `cross` = (P Laplacian v, v_t) is kept in memory only (it expands
/// ||P Laplacian v - v_t||^2 for the enstrophy identity) and is not part of
/// the CSV contract; records read back from CSV do not have it.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> rho;
    std::vector<double> fwork;
    std::vector<double> pdelta;
    std::vector<double> vt;
    std::vector<double> cross;

    bool truncated = false;
    double truncation_time = 0.0;
    std::string truncation_reason;

    RunConfig meta{};

    std::size_t size() const { return times.size(); }
    bool has_cross() const { return cross.size() == times.size() && !cross.empty(); }

    /// Index of the sample equal to `t` (relative tolerance 1e-9); throws
    /// std::invalid_argument when `t` is not a sample instant.
    std::size_t sample_index(double t) const;
};

/// Centered differences at interior nodes, second-order one-sided at the
/// ends; handles nonuniform spacing. Needs >= 3 samples.
std::vector<double> time_derivative(const std::vector<double>& times, const std::vector<double>& values);

/// Composite trapezoid over [times[a], times[b]] sample range.
double trapezoid(const std::vector<double>& times, const std::vector<double>& values, std::size_t a,
                 std::size_t b);

/// Linear interpolation of a sampled series at time t (t inside range).
double interp_linear(const std::vector<double>& times, const std::vector<double>& values, double t);

void write_trajectory_csv(const TrajectoryRecord& traj, const std::filesystem::path& path);

/// Reads the schema above; extra columns are ignored, missing required
/// columns raise std::runtime_error naming the first missing column.
TrajectoryRecord read_trajectory_csv(const std::filesystem::path& path);

}  // namespace nslab
