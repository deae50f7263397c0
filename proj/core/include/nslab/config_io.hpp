#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nslab/energy_budget.hpp"
#include "nslab/run_config.hpp"

namespace nslab {

/// Parameter sweep over the mollifier index and the weight parameter,
/// realizing the theorem's (m, alpha) quantifiers as finite lists.
struct ExperimentPlan {
    RunConfig base;
    std::vector<int> m_list;        // strictly increasing
    std::vector<double> alpha_list; // strictly increasing, all in (0,1)
    WindowSpec window{};            // window.s == 0 triggers the s_k sequence
    bool s_zero = false;
    int s_k_count = 5;
    std::string out_dir;
    double tolerance = 1e-6;        // echoed into reports

    void validate() const;
};

/// Flat `key = value` config text; `#` starts a comment. Keys mirror the
/// RunConfig field names (grid flattened to dim/n/dealias). Unknown keys
/// and missing required keys (dim, n, m, t_end, dt, ic) raise
/// std::invalid_argument naming the key.
RunConfig parse_run_config(const std::filesystem::path& path);
RunConfig parse_run_config_text(const std::string& text);

/// Same format plus m_list, alpha_list, window (= "s,t"), s_zero,
/// s_k_count, out_dir, tolerance.
ExperimentPlan parse_experiment_plan(const std::filesystem::path& path);
ExperimentPlan parse_experiment_plan_text(const std::string& text);

}  // namespace nslab
