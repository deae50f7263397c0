#include "nslab/energy_budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "nslab/weight.hpp"

namespace nslab {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("defect parameter alpha must lie in (0, 1)");
}

struct Window {
    std::size_t a = 0;
    std::size_t b = 0;
    double s = 0.0;
    double t = 0.0;
};

Window resolve_window(const TrajectoryRecord& traj, double s, double t) {
    if (traj.size() < 3) throw std::invalid_argument("analysis window needs a record with >= 3 samples");
    if (!(s < t)) throw std::invalid_argument("analysis window needs s < t");
    Window w;
    w.a = traj.sample_index(s);
    w.b = traj.sample_index(t);
    w.s = traj.times[w.a];
    w.t = traj.times[w.b];
    if (traj.truncated && traj.truncation_time < t)
        throw std::runtime_error("truncated trajectory overlaps the analysis window (truncated at t = " +
                                 std::to_string(traj.truncation_time) + ")");
    return w;
}

/// Window nodes: the samples of [s, t] with every excursion endpoint
/// inserted, all series linearly interpolated at the inserted nodes;
/// rho_dot is the centered-difference derivative of the full record,
/// interpolated like the rest. Each inter-node segment lies entirely
/// inside or outside J(alpha).
struct NodeGrid {
    std::vector<double> t, E, rho, rho_dot, F;
    std::vector<char> seg_in_J;
    std::vector<std::pair<std::size_t, std::size_t>> interval_nodes;  // (begin, end) node index per interval
};

NodeGrid build_grid(const TrajectoryRecord& traj, const Window& w, const ExcursionSet& set) {
    NodeGrid g;
    const std::vector<double> rho_dot_full = time_derivative(traj.times, traj.rho);

    std::vector<double> extra;
    for (const auto& iv : set.intervals) {
        extra.push_back(iv.begin);
        extra.push_back(iv.end);
    }
    std::sort(extra.begin(), extra.end());

    const double tol = 1e-12 * std::max(1.0, std::abs(w.t));
    std::size_t e = 0;
    auto push_node = [&](double time, std::size_t sample, bool interpolated) {
        g.t.push_back(time);
        if (!interpolated) {
            g.E.push_back(traj.energy[sample]);
            g.rho.push_back(traj.rho[sample]);
            g.rho_dot.push_back(rho_dot_full[sample]);
            g.F.push_back(traj.fwork[sample]);
        } else {
            g.E.push_back(interp_linear(traj.times, traj.energy, time));
            g.rho.push_back(interp_linear(traj.times, traj.rho, time));
            g.rho_dot.push_back(interp_linear(traj.times, rho_dot_full, time));
            g.F.push_back(interp_linear(traj.times, traj.fwork, time));
        }
    };

    for (std::size_t i = w.a; i <= w.b; ++i) {
        const double ts = traj.times[i];
        while (e < extra.size() && extra[e] < ts - tol) {
            if (g.t.empty() || extra[e] > g.t.back() + tol) push_node(extra[e], 0, true);
            ++e;
        }
        while (e < extra.size() && std::abs(extra[e] - ts) <= tol) ++e;  // crossing on a sample
        push_node(ts, i, false);
    }

    g.seg_in_J.resize(g.t.empty() ? 0 : g.t.size() - 1, 0);
    for (std::size_t i = 0; i + 1 < g.t.size(); ++i) {
        const double mid = 0.5 * (g.t[i] + g.t[i + 1]);
        g.seg_in_J[i] = set.contains(mid) ? 1 : 0;
    }

    g.interval_nodes.reserve(set.intervals.size());
    auto node_at = [&](double time) {
        auto it = std::lower_bound(g.t.begin(), g.t.end(), time - tol);
        if (it == g.t.end() || std::abs(*it - time) > 2.0 * tol + 1e-12)
            throw std::logic_error("excursion endpoint missing from the node grid");
        return static_cast<std::size_t>(it - g.t.begin());
    };
    for (const auto& iv : set.intervals) g.interval_nodes.emplace_back(node_at(iv.begin), node_at(iv.end));
    return g;
}

template <typename Fn>
double integrate(const NodeGrid& g, bool only_J, Fn&& value) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < g.t.size(); ++i) {
        if (only_J && !g.seg_in_J[i]) continue;
        sum += 0.5 * (value(i) + value(i + 1)) * (g.t[i + 1] - g.t[i]);
    }
    return sum;
}

/// All alpha-dependent budget quantities computed from one extraction.
struct BudgetContext {
    const TrajectoryRecord& traj;
    double alpha;
    Window w;
    ExcursionSet set;
    NodeGrid grid;
    double theta;
    double scale;  // 2 / ((1 - alpha) pi)
    double nu;

    BudgetContext(const TrajectoryRecord& tr, double a, double s, double t)
        : traj(tr), alpha(a), w(resolve_window(tr, s, t)), set(extract_excursions(tr, a, w.s, w.t)),
          grid(build_grid(tr, w, set)), theta(excursion_threshold(a)),
          scale(2.0 / ((1.0 - a) * pi)), nu(tr.meta.nu) {
        check_alpha(a);
    }

    double direct_unscaled() const {
        return integrate(grid, true, [&](std::size_t i) {
            return grid.E[i] * grid.rho_dot[i] / (1.0 + grid.rho[i] * grid.rho[i]);
        });
    }

    double jump_sum_unscaled() const {
        double sum = 0.0;
        for (const auto& [b, e] : grid.interval_nodes) sum += grid.E[e] - grid.E[b];
        return sum;
    }

    double dissipation_integral() const {
        return integrate(grid, true, [&](std::size_t i) { return grid.rho[i]; });
    }

    double force_on_J() const {
        return integrate(grid, true, [&](std::size_t i) { return grid.F[i]; });
    }

    DefectCorrections corrections() const {
        DefectCorrections c;
        c.rho2 = scale * integrate(grid, true, [&](std::size_t i) {
                     const double r2 = grid.rho[i] * grid.rho[i];
                     return 2.0 * r2 / (1.0 + r2);
                 });
        c.force = scale * integrate(grid, true, [&](std::size_t i) {
                      return grid.rho[i] * grid.F[i] / (1.0 + grid.rho[i] * grid.rho[i]);
                  });
        c.second_order = scale * integrate(grid, true, [&](std::size_t i) {
                             const double d = 1.0 + grid.rho[i] * grid.rho[i];
                             return 2.0 * grid.E[i] * grid.rho_dot[i] / (d * d);
                         });
        return c;
    }

    double weighted_residual() const {
        const double p_s = weight(alpha, grid.rho.front());
        const double p_t = weight(alpha, grid.rho.back());
        const double weighted_dissipation =
            integrate(grid, false, [&](std::size_t i) { return weight(alpha, grid.rho[i]) * grid.rho[i]; });
        const double weighted_force =
            integrate(grid, false, [&](std::size_t i) { return weight(alpha, grid.rho[i]) * grid.F[i]; });
        return p_t * grid.E.back() - p_s * grid.E.front() + 2.0 * nu * weighted_dissipation +
               scale * direct_unscaled() - weighted_force;
    }
};

}  // namespace

double weighted_energy_identity_residual(const TrajectoryRecord& traj, double alpha, double s, double t) {
    return BudgetContext(traj, alpha, s, t).weighted_residual();
}

double defect_direct(const TrajectoryRecord& traj, double alpha, double s, double t) {
    BudgetContext ctx(traj, alpha, s, t);
    return ctx.scale * ctx.direct_unscaled();
}

double defect_jump_sum_unscaled(const TrajectoryRecord& traj, double alpha, double s, double t) {
    return BudgetContext(traj, alpha, s, t).jump_sum_unscaled();
}

double defect_jump_sum(const TrajectoryRecord& traj, double alpha, double s, double t) {
    BudgetContext ctx(traj, alpha, s, t);
    const double prefactor = ctx.theta / (1.0 + ctx.theta * ctx.theta);
    return ctx.scale * prefactor * ctx.jump_sum_unscaled();
}

double defect_dissipation(const TrajectoryRecord& traj, double alpha, double s, double t) {
    BudgetContext ctx(traj, alpha, s, t);
    return -2.0 * ctx.nu * ctx.dissipation_integral();
}

double force_on_excursions(const TrajectoryRecord& traj, double alpha, double s, double t) {
    return BudgetContext(traj, alpha, s, t).force_on_J();
}

double relation_residual(const TrajectoryRecord& traj, double s, double t) {
    const Window w = resolve_window(traj, s, t);
    const double dissipation = trapezoid(traj.times, traj.rho, w.a, w.b);
    const double fw = trapezoid(traj.times, traj.fwork, w.a, w.b);
    return traj.energy[w.b] + 2.0 * traj.meta.nu * dissipation - traj.energy[w.a] - fw;
}

DefectCorrections defect_corrections(const TrajectoryRecord& traj, double alpha, double s, double t) {
    return BudgetContext(traj, alpha, s, t).corrections();
}

std::vector<IntervalBudget> interval_budgets(const TrajectoryRecord& traj, double alpha, double s,
                                             double t) {
    BudgetContext ctx(traj, alpha, s, t);
    std::vector<IntervalBudget> out;
    out.reserve(ctx.grid.interval_nodes.size());
    for (const auto& [b, e] : ctx.grid.interval_nodes) {
        IntervalBudget ib;
        ib.begin = ctx.grid.t[b];
        ib.end = ctx.grid.t[e];
        ib.jump = ctx.grid.E[e] - ctx.grid.E[b];
        for (std::size_t i = b; i < e; ++i) {
            const double dt = ctx.grid.t[i + 1] - ctx.grid.t[i];
            ib.dissipation += -2.0 * ctx.nu * 0.5 * (ctx.grid.rho[i] + ctx.grid.rho[i + 1]) * dt;
            ib.force += 0.5 * (ctx.grid.F[i] + ctx.grid.F[i + 1]) * dt;
        }
        out.push_back(ib);
    }
    return out;
}

MeasureBoundsReport measure_bounds(const TrajectoryRecord& traj, double alpha, double s, double t) {
    BudgetContext ctx(traj, alpha, s, t);
    MeasureBoundsReport r;
    r.alpha = alpha;
    r.threshold = ctx.theta;
    r.measure = ctx.set.total_measure();
    r.lhs = r.measure * ctx.theta;
    r.dissipation_integral = ctx.dissipation_integral();
    // int_J rho <= int nu rho / nu = (E(s)/2 - E(t)/2 + int fwork / 2) / nu
    const double force_window = trapezoid(traj.times, traj.fwork, ctx.w.a, ctx.w.b);
    r.rhs = (0.5 * traj.energy[ctx.w.a] + 0.5 * force_window) / ctx.nu;
    r.satisfied = r.measure == 0.0 ? r.lhs <= r.rhs : r.lhs < r.rhs;
    r.lmj_ratio = r.measure / (1.0 - alpha);
    const double force_from_origin = trapezoid(traj.times, traj.fwork, 0, ctx.w.b);
    r.lmj_rhs = (traj.energy.front() + force_from_origin) / (pi * ctx.nu);
    r.ld_value = (1.0 - alpha) * ctx.theta;
    return r;
}

VanishingTermsReport vanishing_terms(const TrajectoryRecord& traj, double alpha, double s, double t) {
    BudgetContext ctx(traj, alpha, s, t);
    VanishingTermsReport r;
    r.alpha = alpha;
    r.scaled = ctx.corrections();
    return r;
}

DefectEstimate build_defect_estimate(const std::vector<TrajectoryRecord>& trajs, const std::vector<int>& ms,
                                     const std::vector<double>& alphas, double s, double t,
                                     int s_zero_count) {
    if (trajs.empty() || ms.empty()) throw std::invalid_argument("build_defect_estimate: empty m list");
    if (trajs.size() != ms.size())
        throw std::invalid_argument("build_defect_estimate: one trajectory per m entry required");
    if (alphas.empty()) throw std::invalid_argument("build_defect_estimate: empty alpha list");
    for (double a : alphas) check_alpha(a);

    DefectEstimate est;
    est.window = {s, t};
    est.ms = ms;
    est.alphas = alphas;

    for (const auto& traj : trajs) {
        // consistent windows across the family
        try {
            resolve_window(traj, s, t);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("inconsistent windows across the m sweep: ") + e.what());
        }
    }

    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        const auto& traj = trajs[mi];
        const double rel = relation_residual(traj, s, t);
        for (double alpha : alphas) {
            BudgetContext ctx(traj, alpha, s, t);
            DefectCell cell;
            cell.m = ms[mi];
            cell.alpha = alpha;
            cell.direct = ctx.scale * ctx.direct_unscaled();
            cell.jump_sum = ctx.scale * (ctx.theta / (1.0 + ctx.theta * ctx.theta)) * ctx.jump_sum_unscaled();
            cell.dissipation = -2.0 * ctx.nu * ctx.dissipation_integral();
            cell.relation_residual = rel;
            cell.measure = ctx.set.total_measure();
            cell.corrections = ctx.corrections();
            est.cells.push_back(cell);
        }
    }

    const std::size_t na = alphas.size();
    for (std::size_t ai = 0; ai < na; ++ai) {
        DefectEstimate::TrendRow row;
        row.alpha = alphas[ai];
        const DefectCell& last = est.cells[(ms.size() - 1) * na + ai];
        row.direct = last.direct;
        row.jump_sum = last.jump_sum;
        row.dissipation = last.dissipation;
        row.relation_residual = last.relation_residual;
        row.measure = last.measure;
        row.direct_sup_m = last.direct;
        for (std::size_t mi = 0; mi < ms.size(); ++mi)
            row.direct_sup_m = std::max(row.direct_sup_m, est.cells[mi * na + ai].direct);
        est.alpha_trend.push_back(row);
    }

    // s = 0 window: the relation along a decreasing sequence of sample
    // instants s_k -> 0 at the corner (largest m, largest alpha)
    const auto& corner_traj = trajs.back();
    const bool s_is_origin = std::abs(s - corner_traj.times.front()) <= 1e-12;
    if (s_is_origin && s_zero_count > 0) {
        const std::size_t b = corner_traj.sample_index(t);
        std::vector<std::size_t> idx;
        std::size_t i = 1;
        for (int k = 0; k < s_zero_count && i < b; ++k, i *= 2) idx.push_back(i);
        std::sort(idx.rbegin(), idx.rend());
        const double alpha = alphas.back();
        for (std::size_t id : idx) {
            const double sk = corner_traj.times[id];
            DefectEstimate::SZeroRow row;
            row.s_k = sk;
            row.relation_residual = relation_residual(corner_traj, sk, t);
            BudgetContext ctx(corner_traj, alpha, sk, t);
            row.direct = ctx.scale * ctx.direct_unscaled();
            row.jump_sum = ctx.scale * (ctx.theta / (1.0 + ctx.theta * ctx.theta)) * ctx.jump_sum_unscaled();
            row.dissipation = -2.0 * ctx.nu * ctx.dissipation_integral();
            est.s_sequence.push_back(row);
        }
    }
    return est;
}

std::string defect_estimate_to_json(const DefectEstimate& est) {
    nlohmann::json j;
    j["window"] = {{"s", est.window.s}, {"t", est.window.t}};
    j["cells"] = nlohmann::json::array();
    for (const auto& c : est.cells) {
        j["cells"].push_back({{"m", c.m},
                              {"alpha", c.alpha},
                              {"direct", c.direct},
                              {"jump_sum", c.jump_sum},
                              {"dissipation", c.dissipation},
                              {"relation_residual", c.relation_residual},
                              {"measure", c.measure},
                              {"corrections",
                               {{"rho2", c.corrections.rho2},
                                {"force", c.corrections.force},
                                {"second_order", c.corrections.second_order}}}});
    }
    nlohmann::json trend;
    trend["alpha_to_1"] = nlohmann::json::array();
    for (const auto& r : est.alpha_trend) {
        trend["alpha_to_1"].push_back({{"alpha", r.alpha},
                                       {"direct", r.direct},
                                       {"direct_sup_m", r.direct_sup_m},
                                       {"jump_sum", r.jump_sum},
                                       {"dissipation", r.dissipation},
                                       {"relation_residual", r.relation_residual},
                                       {"measure", r.measure}});
    }
    if (!est.s_sequence.empty()) {
        trend["s_to_0"] = nlohmann::json::array();
        for (const auto& r : est.s_sequence) {
            trend["s_to_0"].push_back({{"s_k", r.s_k},
                                       {"relation_residual", r.relation_residual},
                                       {"direct", r.direct},
                                       {"jump_sum", r.jump_sum},
                                       {"dissipation", r.dissipation}});
        }
    }
    j["trend"] = trend;
    return j.dump(2);
}

}  // namespace nslab
