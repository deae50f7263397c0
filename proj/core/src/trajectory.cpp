#include "nslab/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nslab {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Derivative at x of the quadratic through (xa,fa), (xb,fb), (xc,fc).
double quad_derivative(double x, double xa, double fa, double xb, double fb, double xc, double fc) {
    return fa * (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc)) +
           fb * (2.0 * x - xa - xc) / ((xb - xa) * (xb - xc)) +
           fc * (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

}  // namespace

std::size_t TrajectoryRecord::sample_index(double t) const {
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(times.begin(), times.end(), t - tol);
    if (it == times.end() || std::abs(*it - t) > tol)
        throw std::invalid_argument("window endpoint t=" + format_double(t) +
                                    " is not a sample instant of the trajectory");
    return static_cast<std::size_t>(it - times.begin());
}

std::vector<double> time_derivative(const std::vector<double>& times, const std::vector<double>& values) {
    const std::size_t n = times.size();
    if (n < 3 || values.size() != n)
        throw std::invalid_argument("time_derivative needs >= 3 samples of matching length");
    std::vector<double> d(n);
    d[0] = quad_derivative(times[0], times[0], values[0], times[1], values[1], times[2], values[2]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = quad_derivative(times[i], times[i - 1], values[i - 1], times[i], values[i], times[i + 1],
                               values[i + 1]);
    d[n - 1] = quad_derivative(times[n - 1], times[n - 3], values[n - 3], times[n - 2], values[n - 2],
                               times[n - 1], values[n - 1]);
    return d;
}

double trapezoid(const std::vector<double>& times, const std::vector<double>& values, std::size_t a,
                 std::size_t b) {
    double sum = 0.0;
    for (std::size_t i = a; i < b; ++i)
        sum += 0.5 * (values[i] + values[i + 1]) * (times[i + 1] - times[i]);
    return sum;
}

double interp_linear(const std::vector<double>& times, const std::vector<double>& values, double t) {
    if (times.empty()) throw std::invalid_argument("interp_linear on empty series");
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - w) * values[lo] + w * values[hi];
}

void write_trajectory_csv(const TrajectoryRecord& traj, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trajectory file for writing: " + path.string());
    out << "t,energy,rho,fwork,pdelta,vt\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_double(traj.times[i]) << ',' << format_double(traj.energy[i]) << ','
            << format_double(traj.rho[i]) << ',' << format_double(traj.fwork[i]) << ','
            << format_double(traj.pdelta[i]) << ',' << format_double(traj.vt[i]) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing trajectory file: " + path.string());
}

TrajectoryRecord read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path.string());
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty trajectory file: " + path.string());
    if (!header.empty() && header.back() == '\r') header.pop_back();

    const auto names = split(header, ',');
    const char* required[] = {"t", "energy", "rho", "fwork", "pdelta", "vt"};
    std::size_t col[6];
    for (int r = 0; r < 6; ++r) {
        auto it = std::find(names.begin(), names.end(), required[r]);
        if (it == names.end())
            throw std::runtime_error("trajectory file missing column `" + std::string(required[r]) + "`");
        col[r] = static_cast<std::size_t>(it - names.begin());
    }

    TrajectoryRecord traj;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() < names.size())
            throw std::runtime_error("trajectory file row " + std::to_string(line_no) + " has " +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(names.size()));
        double v[6];
        for (int r = 0; r < 6; ++r) {
            try {
                v[r] = std::stod(cells[col[r]]);
            } catch (const std::exception&) {
                throw std::runtime_error("trajectory file row " + std::to_string(line_no) +
                                         ": cannot parse column `" + required[r] + "`");
            }
        }
        traj.times.push_back(v[0]);
        traj.energy.push_back(v[1]);
        traj.rho.push_back(v[2]);
        traj.fwork.push_back(v[3]);
        traj.pdelta.push_back(v[4]);
        traj.vt.push_back(v[5]);
    }
    for (std::size_t i = 0; i + 1 < traj.times.size(); ++i)
        if (!(traj.times[i] < traj.times[i + 1]))
            throw std::runtime_error("trajectory file has a non-increasing time axis at row " +
                                     std::to_string(i + 2));
    return traj;
}

}  // namespace nslab
