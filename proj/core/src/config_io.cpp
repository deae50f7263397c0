#include "nslab/config_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nslab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_flat(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " is not of the form `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + " has an empty key");
        if (kv.count(key)) throw std::invalid_argument("config key `" + key + "` appears twice");
        kv[key] = value;
    }
    return kv;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key `" + key + "` has a non-numeric value `" + value + "`");
    }
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key `" + key + "` has a non-integer value `" + value + "`");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key `" + key + "` has a non-boolean value `" + value + "`");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (!cell.empty()) out.push_back(cell);
    }
    return out;
}

const std::set<std::string> run_keys = {
    "dim",  "n",     "dealias",   "m",          "mollifier",      "nu",         "t_end",
    "dt",   "ic",    "seed",      "slope",      "amplitude",      "force",      "force_snapshot",
    "force_rate", "sample_every", "snapshot_every"};

const std::set<std::string> plan_only_keys = {"m_list", "alpha_list", "window", "s_zero",
                                              "s_k_count", "out_dir", "tolerance"};

RunConfig run_config_from(const KeyValues& kv, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : kv)
        if (!allowed.count(key)) throw std::invalid_argument("unknown config key `" + key + "`");

    for (const char* req : {"dim", "n", "m", "t_end", "dt", "ic"})
        if (!kv.count(req)) throw std::invalid_argument("config is missing required key `" + std::string(req) + "`");

    RunConfig cfg;
    cfg.grid.dim = static_cast<int>(to_int("dim", kv.at("dim")));
    cfg.grid.n = static_cast<int>(to_int("n", kv.at("n")));
    if (kv.count("dealias")) cfg.grid.dealias = to_double("dealias", kv.at("dealias"));
    cfg.mollifier.m = static_cast<int>(to_int("m", kv.at("m")));
    if (kv.count("mollifier")) {
        const std::string& kind = kv.at("mollifier");
        if (kind == "sharp")
            cfg.mollifier.kind = MollifierSpec::Kind::Sharp;
        else if (kind == "gaussian")
            cfg.mollifier.kind = MollifierSpec::Kind::Gaussian;
        else
            throw std::invalid_argument("config key `mollifier` must be `sharp` or `gaussian`");
    }
    if (kv.count("nu")) cfg.nu = to_double("nu", kv.at("nu"));
    cfg.t_end = to_double("t_end", kv.at("t_end"));
    cfg.dt = to_double("dt", kv.at("dt"));
    cfg.ic = parse_initial_condition(kv.at("ic"));
    if (kv.count("seed")) cfg.seed = static_cast<std::uint64_t>(to_int("seed", kv.at("seed")));
    if (kv.count("slope")) cfg.slope = to_double("slope", kv.at("slope"));
    if (kv.count("amplitude")) cfg.amplitude = to_double("amplitude", kv.at("amplitude"));
    if (kv.count("force")) cfg.force = parse_force_kind(kv.at("force"));
    if (kv.count("force_snapshot")) cfg.force_snapshot = kv.at("force_snapshot");
    if (kv.count("force_rate")) cfg.force_rate = to_double("force_rate", kv.at("force_rate"));
    if (kv.count("sample_every")) cfg.sample_every = static_cast<int>(to_int("sample_every", kv.at("sample_every")));
    if (kv.count("snapshot_every"))
        cfg.snapshot_every = static_cast<int>(to_int("snapshot_every", kv.at("snapshot_every")));
    cfg.validate();
    return cfg;
}

}  // namespace

void ExperimentPlan::validate() const {
    base.validate();
    if (m_list.empty()) throw std::invalid_argument("plan field `m_list` must not be empty");
    for (std::size_t i = 0; i + 1 < m_list.size(); ++i)
        if (!(m_list[i] < m_list[i + 1]))
            throw std::invalid_argument("plan field `m_list` must be strictly increasing");
    if (m_list.front() < 1) throw std::invalid_argument("plan field `m_list` entries must be >= 1");
    if (alpha_list.empty()) throw std::invalid_argument("plan field `alpha_list` must not be empty");
    for (std::size_t i = 0; i + 1 < alpha_list.size(); ++i)
        if (!(alpha_list[i] < alpha_list[i + 1]))
            throw std::invalid_argument("plan field `alpha_list` must be strictly increasing");
    if (!(alpha_list.front() > 0.0 && alpha_list.back() < 1.0))
        throw std::invalid_argument("plan field `alpha_list` entries must lie in (0, 1)");
    if (!s_zero && !(window.s < window.t))
        throw std::invalid_argument("plan field `window` needs s < t");
    if (window.t > base.t_end + 1e-12)
        throw std::invalid_argument("plan field `window` must lie within the run horizon t_end");
    if (s_k_count < 1) throw std::invalid_argument("plan field `s_k_count` must be >= 1");
}

RunConfig parse_run_config_text(const std::string& text) { return run_config_from(parse_flat(text), run_keys); }

RunConfig parse_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config_text(ss.str());
}

ExperimentPlan parse_experiment_plan_text(const std::string& text) {
    const KeyValues kv = parse_flat(text);
    std::set<std::string> allowed = run_keys;
    allowed.insert(plan_only_keys.begin(), plan_only_keys.end());

    KeyValues run_kv;
    for (const auto& [key, value] : kv) {
        if (!allowed.count(key)) throw std::invalid_argument("unknown config key `" + key + "`");
        if (run_keys.count(key)) run_kv[key] = value;
    }

    ExperimentPlan plan;
    plan.base = run_config_from(run_kv, run_keys);

    if (!kv.count("m_list")) throw std::invalid_argument("config is missing required key `m_list`");
    for (const auto& cell : split_list(kv.at("m_list")))
        plan.m_list.push_back(static_cast<int>(to_int("m_list", cell)));

    if (!kv.count("alpha_list")) throw std::invalid_argument("config is missing required key `alpha_list`");
    for (const auto& cell : split_list(kv.at("alpha_list")))
        plan.alpha_list.push_back(to_double("alpha_list", cell));

    if (kv.count("s_zero")) plan.s_zero = to_bool("s_zero", kv.at("s_zero"));
    if (kv.count("window")) {
        const auto cells = split_list(kv.at("window"));
        if (cells.size() != 2) throw std::invalid_argument("config key `window` must be `s,t`");
        plan.window.s = to_double("window", cells[0]);
        plan.window.t = to_double("window", cells[1]);
    } else if (plan.s_zero) {
        plan.window.s = 0.0;
        plan.window.t = plan.base.t_end;
    } else {
        throw std::invalid_argument("config is missing required key `window` (or set `s_zero = true`)");
    }
    if (plan.s_zero) plan.window.s = 0.0;
    if (kv.count("s_k_count")) plan.s_k_count = static_cast<int>(to_int("s_k_count", kv.at("s_k_count")));
    if (kv.count("out_dir")) plan.out_dir = kv.at("out_dir");
    if (kv.count("tolerance")) plan.tolerance = to_double("tolerance", kv.at("tolerance"));
    plan.validate();
    return plan;
}

ExperimentPlan parse_experiment_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_plan_text(ss.str());
}

}  // namespace nslab
