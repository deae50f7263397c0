#include "nslab/excursion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace nslab {

namespace {

constexpr double pi = 3.14159265358979323846;

double interp_segment(double t0, double v0, double t1, double v1, double t) {
    const double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * v0 + w * v1;
}

}  // namespace

double excursion_threshold(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("excursion parameter alpha must lie in (0, 1)");
    return std::tan(alpha * pi / 2.0);
}

double ExcursionSet::total_measure() const {
    double sum = 0.0;
    for (const auto& iv : intervals) sum += iv.length();
    return sum;
}

bool ExcursionSet::contains(double t) const {
    for (const auto& iv : intervals)
        if (t > iv.begin && t < iv.end) return true;
    return false;
}

ExcursionSet extract_excursions(const std::vector<double>& times, const std::vector<double>& rho,
                                double threshold, double s, double t) {
    if (times.size() != rho.size() || times.size() < 2)
        throw std::invalid_argument("excursion extraction needs matching series with >= 2 samples");
    if (!(threshold > 0.0)) throw std::invalid_argument("excursion threshold must be positive");
    if (!(s < t)) throw std::invalid_argument("excursion window needs s < t");
    const double tol = 1e-9 * std::max(1.0, std::max(std::abs(s), std::abs(t)));
    if (s < times.front() - tol || t > times.back() + tol)
        throw std::invalid_argument("excursion window lies outside the sampled series");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw std::invalid_argument("non-monotone time axis");

    // node walk over [s, t]: window ends plus interior samples
    std::vector<double> node_t, node_v;
    node_t.push_back(s);
    node_v.push_back(interp_linear(times, rho, s));
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] > s + tol && times[i] < t - tol) {
            node_t.push_back(times[i]);
            node_v.push_back(rho[i]);
        }
    }
    node_t.push_back(t);
    node_v.push_back(interp_linear(times, rho, t));

    for (double v : node_v)
        if (std::isnan(v)) throw std::invalid_argument("analysis window contains NaN samples (truncated run)");

    ExcursionSet set;
    set.alpha = std::numeric_limits<double>::quiet_NaN();
    set.threshold = threshold;
    set.window_begin = s;
    set.window_end = t;

    bool inside = node_v.front() > threshold;
    double begin = s;
    bool begin_clipped = inside;

    for (std::size_t i = 0; i + 1 < node_t.size(); ++i) {
        const double a = node_v[i];
        const double b = node_v[i + 1];
        if (!inside && a <= threshold && b > threshold) {
            begin = a == threshold ? node_t[i]
                                   : node_t[i] + (threshold - a) / (b - a) * (node_t[i + 1] - node_t[i]);
            begin_clipped = false;
            inside = true;
        } else if (inside && b <= threshold) {
            const double end = b == threshold
                                   ? node_t[i + 1]
                                   : node_t[i] + (threshold - a) / (b - a) * (node_t[i + 1] - node_t[i]);
            if (end > begin)
                set.intervals.push_back({begin, end, begin_clipped, false});
            inside = false;
        }
    }
    if (inside && t > begin) set.intervals.push_back({begin, t, begin_clipped, true});
    return set;
}

ExcursionSet extract_excursions(const TrajectoryRecord& traj, double alpha, double s, double t) {
    ExcursionSet set = extract_excursions(traj.times, traj.rho, excursion_threshold(alpha), s, t);
    set.alpha = alpha;
    return set;
}

double measure(const ExcursionSet& set) { return set.total_measure(); }

LimsupResult limsup_excursions(const std::vector<ExcursionSet>& sets, const std::vector<double>& times,
                               const std::vector<double>& rho) {
    if (sets.empty()) throw std::invalid_argument("limsup_excursions needs at least one set");
    const double tol = 1e-12;
    for (const auto& set : sets) {
        const bool alpha_ok = (std::isnan(set.alpha) && std::isnan(sets.front().alpha)) ||
                              std::abs(set.alpha - sets.front().alpha) <= tol;
        if (!alpha_ok || std::abs(set.threshold - sets.front().threshold) > tol ||
            std::abs(set.window_begin - sets.front().window_begin) > 1e-9 ||
            std::abs(set.window_end - sets.front().window_end) > 1e-9)
            throw std::invalid_argument("limsup_excursions: sets disagree on alpha or window");
    }

    // finite-family stand-in for the tail intersection: points in every set
    std::vector<ExcursionInterval> acc = sets.front().intervals;
    for (std::size_t si = 1; si < sets.size() && !acc.empty(); ++si) {
        const auto& other = sets[si].intervals;
        std::vector<ExcursionInterval> next;
        std::size_t i = 0, j = 0;
        while (i < acc.size() && j < other.size()) {
            const double lo = std::max(acc[i].begin, other[j].begin);
            const double hi = std::min(acc[i].end, other[j].end);
            if (hi > lo)
                next.push_back({lo, hi, acc[i].clipped_left && other[j].clipped_left,
                                acc[i].clipped_right && other[j].clipped_right});
            if (acc[i].end < other[j].end)
                ++i;
            else
                ++j;
        }
        acc = std::move(next);
    }

    LimsupResult out;
    out.intervals = std::move(acc);
    for (const auto& iv : out.intervals) out.measure += iv.length();

    out.indicator.reserve(times.size());
    for (double t : times) {
        bool in = false;
        for (const auto& iv : out.intervals)
            if (t > iv.begin && t < iv.end) {
                in = true;
                break;
            }
        out.indicator.push_back(in ? 1 : 0);
    }

    if (!rho.empty()) {
        if (rho.size() != times.size())
            throw std::invalid_argument("limsup_excursions: rho series length mismatch");
        std::vector<double> abs_rho(rho.size());
        for (std::size_t i = 0; i < rho.size(); ++i) abs_rho[i] = std::abs(rho[i]);
        // || rho ||_1 over the shared window
        const double s = sets.front().window_begin;
        const double t = sets.front().window_end;
        double l1 = 0.0;
        for (std::size_t i = 0; i + 1 < times.size(); ++i) {
            const double lo = std::max(times[i], s);
            const double hi = std::min(times[i + 1], t);
            if (hi <= lo) continue;
            const double va = interp_segment(times[i], abs_rho[i], times[i + 1], abs_rho[i + 1], lo);
            const double vb = interp_segment(times[i], abs_rho[i], times[i + 1], abs_rho[i + 1], hi);
            l1 += 0.5 * (va + vb) * (hi - lo);
        }
        out.bound = l1 / sets.front().threshold;
        out.bound_available = true;
    }
    return out;
}

void write_excursion_csv(const ExcursionSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open excursion file for writing: " + path.string());
    out << "alpha,s_h,t_h,clipped_left,clipped_right\n";
    char buf[128];
    for (const auto& iv : set.intervals) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d,%d\n", set.alpha, iv.begin, iv.end,
                      iv.clipped_left ? 1 : 0, iv.clipped_right ? 1 : 0);
        out << buf;
    }
    if (!out) throw std::runtime_error("failed writing excursion file: " + path.string());
}

}  // namespace nslab
