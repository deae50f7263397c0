#include "doctest.h"
#include "nslab/config_io.hpp"

using namespace nslab;

namespace {

const char* minimal =
    "dim = 2\n"
    "n = 32\n"
    "m = 8\n"
    "t_end = 1.0\n"
    "dt = 1e-3\n"
    "ic = taylor-green\n";

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const RunConfig cfg = parse_run_config_text(minimal);
    CHECK(cfg.grid.dim == 2);
    CHECK(cfg.grid.n == 32);
    CHECK(cfg.grid.dealias == doctest::Approx(2.0 / 3.0));
    CHECK(cfg.mollifier.m == 8);
    CHECK(cfg.nu == 1.0);
    CHECK(cfg.ic == InitialCondition::TaylorGreen);
    CHECK(cfg.force == ForceKind::Zero);
    CHECK(cfg.sample_every == 1);
}

TEST_CASE("full config with comments and every optional key") {
    const std::string text =
        "# full config\n"
        "dim = 3\n"
        "n = 16\n"
        "dealias = 0.5   # tighter cutoff\n"
        "m = 4\n"
        "mollifier = gaussian\n"
        "nu = 0.25\n"
        "t_end = 0.5\n"
        "dt = 5e-4\n"
        "ic = random-divfree\n"
        "seed = 42\n"
        "slope = -4\n"
        "amplitude = 1.5\n"
        "force = zero\n"
        "sample_every = 10\n"
        "snapshot_every = 100\n";
    const RunConfig cfg = parse_run_config_text(text);
    CHECK(cfg.grid.dim == 3);
    CHECK(cfg.mollifier.kind == MollifierSpec::Kind::Gaussian);
    CHECK(cfg.nu == 0.25);
    CHECK(cfg.seed == 42);
    CHECK(cfg.snapshot_every == 100);
}

TEST_CASE("missing required keys are named") {
    const std::string no_dt =
        "dim = 2\nn = 32\nm = 8\nt_end = 1.0\nic = taylor-green\n";
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(no_dt), doctest::Contains("`dt`"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(""), doctest::Contains("`dim`"),
                         std::invalid_argument);
}

TEST_CASE("unknown keys are named and rejected") {
    const std::string text = std::string(minimal) + "tyypo = 3\n";
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(text), doctest::Contains("`tyypo`"),
                         std::invalid_argument);
}

TEST_CASE("bad values are rejected with the key named") {
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(std::string(minimal) + "nu = fast\n"),
                         doctest::Contains("`nu`"), std::invalid_argument);
    const std::string bad_ic =
        "dim = 2\nn = 32\nm = 8\nt_end = 1.0\ndt = 1e-3\nic = vortex-soup\n";
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(bad_ic), doctest::Contains("`ic`"),
                         std::invalid_argument);
    CHECK_THROWS_AS((void)parse_run_config_text(std::string(minimal) + "m = 8\n"),
                    std::invalid_argument);  // duplicate key
}

TEST_CASE("semantic validation: grid, presets, force requirements") {
    const std::string odd_n = "dim = 2\nn = 31\nm = 8\nt_end = 1\ndt = 1e-3\nic = zero\n";
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(odd_n), doctest::Contains("`n`"),
                         std::invalid_argument);
    const std::string abc_2d = "dim = 2\nn = 16\nm = 8\nt_end = 1\ndt = 1e-3\nic = abc-flow\n";
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(abc_2d), doctest::Contains("abc-flow"),
                         std::invalid_argument);
    const std::string forced = "dim = 2\nn = 16\nm = 8\nt_end = 1\ndt = 1e-3\nic = zero\nforce = fixed-field\n";
    CHECK_THROWS_WITH_AS((void)parse_run_config_text(forced), doctest::Contains("force_snapshot"),
                         std::invalid_argument);
}

TEST_CASE("experiment plan: full parse") {
    const std::string text = std::string(minimal) +
                             "m_list = 4, 8, 16\n"
                             "alpha_list = 0.9, 0.99\n"
                             "window = 0.1, 0.9\n"
                             "s_k_count = 4\n"
                             "tolerance = 1e-5\n"
                             "out_dir = /tmp/sweep\n";
    const ExperimentPlan plan = parse_experiment_plan_text(text);
    CHECK(plan.m_list == std::vector<int>{4, 8, 16});
    CHECK(plan.alpha_list.size() == 2);
    CHECK(plan.window.s == 0.1);
    CHECK(plan.window.t == 0.9);
    CHECK_FALSE(plan.s_zero);
    CHECK(plan.s_k_count == 4);
    CHECK(plan.out_dir == "/tmp/sweep");
}

TEST_CASE("experiment plan: s_zero flag and validation") {
    const std::string text = std::string(minimal) +
                             "m_list = 4, 8\n"
                             "alpha_list = 0.9, 0.99\n"
                             "s_zero = true\n";
    const ExperimentPlan plan = parse_experiment_plan_text(text);
    CHECK(plan.s_zero);
    CHECK(plan.window.s == 0.0);
    CHECK(plan.window.t == doctest::Approx(1.0));

    const std::string unsorted = std::string(minimal) + "m_list = 8, 4\nalpha_list = 0.9\ns_zero = true\n";
    CHECK_THROWS_WITH_AS((void)parse_experiment_plan_text(unsorted),
                         doctest::Contains("strictly increasing"), std::invalid_argument);
    const std::string no_window = std::string(minimal) + "m_list = 4, 8\nalpha_list = 0.9\n";
    CHECK_THROWS_WITH_AS((void)parse_experiment_plan_text(no_window), doctest::Contains("window"),
                         std::invalid_argument);
    const std::string wide = std::string(minimal) + "m_list = 4\nalpha_list = 0.9\nwindow = 0, 2\n";
    CHECK_THROWS_WITH_AS((void)parse_experiment_plan_text(wide), doctest::Contains("horizon"),
                         std::invalid_argument);
}
