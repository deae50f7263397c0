// nslab - command-line front end for the periodic-torus energy-gap laboratory.
//
// Subcommands: run, sweep, analyze, lemmas, report. Exit codes: 0 success,
// 1 usage/config error, 2 numerical failure (blow-up), 3 suite failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nslab/config_io.hpp"
#include "nslab/energy_budget.hpp"
#include "nslab/excursion.hpp"
#include "nslab/identities.hpp"
#include "nslab/lemma_harness.hpp"
#include "nslab/snapshot_io.hpp"
#include "nslab/solver.hpp"
#include "nslab/weight.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_suite = 3;

fs::path output_root(const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("NSLAB_OUT"); env && *env) return env;
    return ".";
}

fs::path prepare_out(const std::string& cli_out) {
    const fs::path out = output_root(cli_out);
    fs::create_directories(out);
    return out;
}

std::string snapshot_name(long long step) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "snapshot_%08lld.nslf", step);
    return buf;
}

int report_truncation(const nslab::TrajectoryRecord& traj) {
    std::cerr << "numerical failure: " << traj.truncation_reason << "\n"
              << "trajectory truncated at t = " << traj.truncation_time << " (" << traj.size()
              << " samples kept)\n";
    return exit_numerical;
}

// ---------------------------------------------------------------- run ----

int cmd_run(const std::string& config_path, const std::string& out_dir, long long seed_override,
            bool has_seed) {
    nslab::RunConfig cfg = nslab::parse_run_config(config_path);
    if (has_seed) cfg.seed = static_cast<std::uint64_t>(seed_override);
    const fs::path out = prepare_out(out_dir);

    nslab::LeraySolver solver(cfg);
    nslab::LeraySolver::SnapshotSink sink;
    if (cfg.snapshot_every > 0)
        sink = [&out](long long step, double, const nslab::SpectralField& field) {
            nslab::write_snapshot(field, out / snapshot_name(step));
        };
    const nslab::TrajectoryRecord traj = solver.run(sink);

    const fs::path csv = out / "trajectory.csv";
    nslab::write_trajectory_csv(traj, csv);
    std::cout << "wrote " << csv.string() << " (" << traj.size() << " samples)\n";
    if (traj.truncated) return report_truncation(traj);
    return exit_ok;
}

// -------------------------------------------------------------- sweep ----

int cmd_sweep(const std::string& plan_path, const std::string& out_dir, int jobs) {
    const nslab::ExperimentPlan plan = nslab::parse_experiment_plan(plan_path);
    const fs::path out = prepare_out(!out_dir.empty() ? out_dir : plan.out_dir);
    if (jobs < 1) jobs = 1;

    std::vector<nslab::TrajectoryRecord> trajs(plan.m_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < plan.m_list.size(); i = next.fetch_add(1)) {
            nslab::RunConfig cfg = plan.base;
            cfg.mollifier.m = plan.m_list[i];
            trajs[i] = nslab::run(cfg);
        }
    };
    std::vector<std::future<void>> pool;
    const int workers = std::min<int>(jobs, static_cast<int>(plan.m_list.size()));
    for (int w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    bool any_truncated = false;
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof(name), "trajectory_m%03d.csv", plan.m_list[i]);
        nslab::write_trajectory_csv(trajs[i], out / name);
        if (trajs[i].truncated) {
            std::cerr << "run m = " << plan.m_list[i] << " truncated: " << trajs[i].truncation_reason
                      << "\n";
            any_truncated = true;
        }
    }
    if (any_truncated) {
        std::cerr << "partial results written to " << out.string()
                  << "; defect report skipped (truncated runs overlap the window)\n";
        return exit_numerical;
    }

    const nslab::DefectEstimate est = nslab::build_defect_estimate(
        trajs, plan.m_list, plan.alpha_list, plan.window.s, plan.window.t, plan.s_zero ? plan.s_k_count : 0);
    const fs::path report = out / "defect_report.json";
    std::ofstream(report) << nslab::defect_estimate_to_json(est) << "\n";
    std::cout << "wrote " << report.string() << " (" << est.cells.size() << " cells)\n";
    return exit_ok;
}

// ------------------------------------------------------------ analyze ----

int cmd_analyze(const std::string& traj_path, double alpha, const std::string& window, double nu,
                const std::string& out_dir) {
    nslab::TrajectoryRecord traj = nslab::read_trajectory_csv(traj_path);
    traj.meta.nu = nu;

    double s = 0.0, t = 0.0;
    if (std::sscanf(window.c_str(), "%lf,%lf", &s, &t) != 2)
        throw std::invalid_argument("--window must be `s,t`");

    const fs::path out = prepare_out(out_dir);
    const nslab::ExcursionSet set = nslab::extract_excursions(traj, alpha, s, t);
    nslab::write_excursion_csv(set, out / "excursions.csv");

    const auto bounds = nslab::measure_bounds(traj, alpha, s, t);
    const auto vanishing = nslab::vanishing_terms(traj, alpha, s, t);

    json j;
    j["alpha"] = alpha;
    j["window"] = {{"s", s}, {"t", t}};
    j["threshold"] = set.threshold;
    j["measure"] = set.total_measure();
    j["excursions"] = json::array();
    for (const auto& iv : set.intervals)
        j["excursions"].push_back({{"s_h", iv.begin},
                                   {"t_h", iv.end},
                                   {"clipped_left", iv.clipped_left},
                                   {"clipped_right", iv.clipped_right}});
    j["defects"] = {{"direct", nslab::defect_direct(traj, alpha, s, t)},
                    {"jump_sum", nslab::defect_jump_sum(traj, alpha, s, t)},
                    {"jump_sum_unscaled", nslab::defect_jump_sum_unscaled(traj, alpha, s, t)},
                    {"dissipation", nslab::defect_dissipation(traj, alpha, s, t)},
                    {"relation_residual", nslab::relation_residual(traj, s, t)},
                    {"weighted_identity_residual",
                     nslab::weighted_energy_identity_residual(traj, alpha, s, t)}};
    j["corrections"] = {{"rho2", vanishing.scaled.rho2},
                        {"force", vanishing.scaled.force},
                        {"second_order", vanishing.scaled.second_order}};
    j["measure_bounds"] = {{"lhs", bounds.lhs},
                           {"dissipation_integral", bounds.dissipation_integral},
                           {"rhs", bounds.rhs},
                           {"satisfied", bounds.satisfied},
                           {"lmj_ratio", bounds.lmj_ratio},
                           {"lmj_rhs", bounds.lmj_rhs},
                           {"ld_value", bounds.ld_value}};
    const fs::path report = out / "budget_report.json";
    std::ofstream(report) << j.dump(2) << "\n";
    std::cout << "wrote " << (out / "excursions.csv").string() << " and " << report.string() << "\n";
    return exit_ok;
}

// ------------------------------------------------------------- lemmas ----

json lemmas_wc() {
    json j;
    const double t_end = 1.0;
    const std::vector<double> alphas{0.9, 0.99, 0.999};
    const std::vector<int> ms{8, 64, 256, 1024};
    const auto g = [](double a) { return nslab::excursion_threshold(a); };
    const auto p = [](double a, double rho) { return nslab::weight(a, rho); };

    const auto spike = nslab::shrinking_spike_family(0.5, 1.0, t_end);
    const auto table = nslab::wc_weighted_limit(spike, g, p, alphas, ms, t_end, 1e-3);
    j["family"] = spike.description;
    j["alphas"] = alphas;
    j["ms"] = ms;
    j["limit_integral"] = table.limit_integral;
    j["weighted"] = table.weighted;
    j["plain"] = table.plain;
    j["corner_distance"] = table.corner_distance;
    j["plain_offset_at_corner"] = std::abs(table.plain.back().back() - table.limit_integral);
    j["diagonal_monotone"] = table.diagonal_monotone;

    const auto constant = nslab::constant_family(0.75, t_end);
    const auto ctable = nslab::wc_weighted_limit(constant, g, p, alphas, ms, t_end, 1e-6);
    j["constant_family_pass"] = ctable.pass;

    j["pass"] = table.pass && ctable.pass;
    return j;
}

json lemmas_cl() {
    json j;
    nslab::RunConfig cfg;
    cfg.grid.dim = 2;
    cfg.grid.n = 32;
    cfg.ic = nslab::InitialCondition::RandomDivFree;
    cfg.seed = 7;
    cfg.slope = -3.0;
    cfg.amplitude = 2.0;
    cfg.t_end = 0.5;
    cfg.dt = 1e-3;

    const std::vector<int> ms{8, 16, 32};
    double sup = 0.0, inf = 0.0;
    json rows = json::array();
    for (int m : ms) {
        nslab::RunConfig run_cfg = cfg;
        run_cfg.mollifier.m = m;
        const auto traj = nslab::run(run_cfg);
        const auto cl = nslab::cl_functional(traj);
        const auto er = nslab::energy_identity_residual(traj);
        const auto en = nslab::enstrophy_identity_residual(traj);
        rows.push_back({{"m", m},
                        {"cl_primary", cl.primary},
                        {"cl_companion", cl.companion},
                        {"energy_residual_max", er.max_abs},
                        {"enstrophy_residual_max", en.max_abs}});
        sup = std::max(sup, cl.primary);
        inf = inf == 0.0 ? cl.primary : std::min(inf, cl.primary);
    }
    j["seed"] = cfg.seed;
    j["rows"] = rows;
    j["sup_over_m"] = sup;
    j["relative_variation"] = sup > 0.0 ? (sup - inf) / sup : 0.0;
    j["pass"] = std::isfinite(sup) && (sup == 0.0 || (sup - inf) / sup <= 0.2);
    return j;
}

json lemmas_interp() {
    json j;
    const double a = nslab::interpolation_exponent(std::numeric_limits<double>::infinity(), 6.0, 3);
    j["exponent_r_inf_q_6_dim_3"] = a;
    const auto base =
        nslab::interpolation_campaign(1000, 32, std::numeric_limits<double>::infinity(), 6.0, 11);
    const auto doubled =
        nslab::interpolation_campaign(150, 64, std::numeric_limits<double>::infinity(), 6.0, 11);
    j["seed"] = 11;
    j["samples_n32"] = 1000;
    j["samples_n64"] = 150;
    j["max_ratio_n32"] = base.max_ratio;
    j["max_ratio_n64"] = doubled.max_ratio;
    j["mean_ratio_n32"] = base.mean_ratio;
    const bool finite = std::isfinite(base.max_ratio) && std::isfinite(doubled.max_ratio);
    j["pass"] = finite && std::abs(a - 0.5) < 1e-12;
    return j;
}

json lemmas_ld() {
    json j;
    const std::vector<double> alphas{0.9, 0.99, 0.999};
    const auto rows = nslab::ld_limit(alphas);
    json table = json::array();
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.push_back({{"alpha", rows[i].alpha}, {"value", rows[i].value}, {"distance", rows[i].distance}});
        if (i > 0 && !(rows[i].distance < rows[i - 1].distance)) monotone = false;
    }
    j["table"] = table;
    j["monotone"] = monotone;
    j["pass"] = monotone && rows.back().distance <= 1e-3;
    return j;
}

int cmd_lemmas(const std::string& suite, const std::string& out_dir) {
    json report;
    bool pass = true;
    auto add = [&](const std::string& name, json suite_report) {
        pass = pass && suite_report.at("pass").get<bool>();
        report["suites"][name] = std::move(suite_report);
    };

    if (suite == "wc" || suite == "all") add("wc", lemmas_wc());
    if (suite == "cl" || suite == "all") add("cl", lemmas_cl());
    if (suite == "interp" || suite == "all") add("interp", lemmas_interp());
    if (suite == "ld" || suite == "all") add("ld", lemmas_ld());
    if (report.empty())
        throw std::invalid_argument("unknown lemma suite `" + suite + "` (expected wc|cl|interp|ld|all)");

    report["pass"] = pass;
    const fs::path out = prepare_out(out_dir);
    const fs::path path = out / "harness_report.json";
    std::ofstream(path) << report.dump(2) << "\n";

    for (const auto& [name, suite_report] : report["suites"].items())
        std::cout << (suite_report.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ") << name << "\n";
    std::cout << "wrote " << path.string() << "\n";
    return pass ? exit_ok : exit_suite;
}

// ------------------------------------------------------------- report ----

int cmd_report(const std::string& input, const std::string& format) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open report file: " + input);
    json j;
    in >> j;

    if (format == "csv") {
        std::cout << "m,alpha,direct,jump_sum,dissipation,relation_residual,measure,corr_rho2,corr_force,"
                     "corr_second_order\n";
        for (const auto& c : j.at("cells")) {
            std::printf("%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                        c.at("m").get<int>(), c.at("alpha").get<double>(), c.at("direct").get<double>(),
                        c.at("jump_sum").get<double>(), c.at("dissipation").get<double>(),
                        c.at("relation_residual").get<double>(), c.at("measure").get<double>(),
                        c.at("corrections").at("rho2").get<double>(),
                        c.at("corrections").at("force").get<double>(),
                        c.at("corrections").at("second_order").get<double>());
        }
        return exit_ok;
    }

    const auto& w = j.at("window");
    std::printf("defect report, window [%g, %g]\n", w.at("s").get<double>(), w.at("t").get<double>());
    std::printf("%6s %8s %13s %13s %13s %13s %10s\n", "m", "alpha", "direct", "jump_sum", "dissip",
                "relation", "measure");
    for (const auto& c : j.at("cells"))
        std::printf("%6d %8.4f %13.4e %13.4e %13.4e %13.4e %10.4e\n", c.at("m").get<int>(),
                    c.at("alpha").get<double>(), c.at("direct").get<double>(),
                    c.at("jump_sum").get<double>(), c.at("dissipation").get<double>(),
                    c.at("relation_residual").get<double>(), c.at("measure").get<double>());
    if (j.contains("trend") && j.at("trend").contains("s_to_0")) {
        std::printf("s_k -> 0 sequence (corner cell):\n");
        for (const auto& r : j["trend"]["s_to_0"])
            std::printf("  s_k = %-12.6g relation_residual = %.4e\n", r.at("s_k").get<double>(),
                        r.at("relation_residual").get<double>());
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nslab: mollified Navier-Stokes energy-gap laboratory on the periodic torus"};
    app.require_subcommand(1);

    std::string config_path, plan_path, traj_path, window = "0,1", out_dir, suite = "all";
    std::string report_input, report_format = "text";
    double alpha = 0.9, nu = 1.0;
    long long seed = 0;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "integrate one configuration and write the trajectory CSV");
    run->add_option("--config", config_path, "run config file")->required();
    run->add_option("--out", out_dir, "output directory (default $NSLAB_OUT or .)");
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");

    auto* sweep = app.add_subcommand("sweep", "run an m-sweep plan and write the defect report");
    sweep->add_option("--plan", plan_path, "experiment plan file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--jobs", jobs, "max concurrent runs")->check(CLI::PositiveNumber);

    auto* analyze = app.add_subcommand("analyze", "extract excursions and defects from a trajectory CSV");
    analyze->add_option("--trajectory", traj_path, "trajectory CSV")->required();
    analyze->add_option("--alpha", alpha, "weight parameter in (0,1)")->required();
    analyze->add_option("--window", window, "analysis window `s,t`")->required();
    analyze->add_option("--nu", nu, "viscosity used when the CSV was produced (default 1)");
    analyze->add_option("--out", out_dir, "output directory");

    auto* lemmas = app.add_subcommand("lemmas", "run the lemma verification suites");
    lemmas->add_option("--suite", suite, "wc|cl|interp|ld|all")->capture_default_str();
    lemmas->add_option("--out", out_dir, "output directory");

    auto* report = app.add_subcommand("report", "render a defect report JSON");
    report->add_option("--input", report_input, "defect_report.json path")->required();
    report->add_option("--format", report_format, "text|csv")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, seed, !seed_opt->empty());
        if (sweep->parsed()) return cmd_sweep(plan_path, out_dir, jobs);
        if (analyze->parsed()) return cmd_analyze(traj_path, alpha, window, nu, out_dir);
        if (lemmas->parsed()) return cmd_lemmas(suite, out_dir);
        if (report->parsed()) return cmd_report(report_input, report_format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
