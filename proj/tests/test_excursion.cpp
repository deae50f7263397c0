#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "nslab/excursion.hpp"

using namespace nslab;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
    t.back() = b;
    return t;
}

/// Random piecewise-smooth trig series, folded to stay non-negative.
std::vector<double> random_rho(const std::vector<double>& times, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    double a[6], p[6];
    for (int j = 0; j < 6; ++j) {
        a[j] = amp(engine);
        p[j] = phase(engine);
    }
    std::vector<double> rho(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        double v = 0.6 * a[0];
        for (int j = 1; j < 6; ++j) v += a[j] * std::sin(j * times[i] + p[j]) / j;
        rho[i] = std::abs(v) + 0.05;
    }
    return rho;
}

/// Brute-force oracle: sample membership by direct threshold comparison.
void check_membership_against_scan(const std::vector<double>& times, const std::vector<double>& rho,
                                   const ExcursionSet& set, double threshold) {
    const double eps = 1e-9 * (1.0 + threshold);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= set.window_begin || times[i] >= set.window_end) continue;
        if (std::abs(rho[i] - threshold) <= eps) continue;  // boundary sample, either side is fine
        CHECK(set.contains(times[i]) == (rho[i] > threshold));
    }
}

}  // namespace

TEST_CASE("sin^2 excursion: the (pi/4, 3pi/4) oracle") {
    const auto times = linspace(0.0, M_PI, 2001);
    std::vector<double> rho(times.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::sin(times[i]) * std::sin(times[i]);

    const ExcursionSet set = extract_excursions(times, rho, 0.5, 0.0, M_PI);
    REQUIRE(set.intervals.size() == 1);
    CHECK(set.intervals[0].begin == doctest::Approx(M_PI / 4).epsilon(1e-5));
    CHECK(set.intervals[0].end == doctest::Approx(3 * M_PI / 4).epsilon(1e-5));
    CHECK_FALSE(set.intervals[0].clipped_left);
    CHECK_FALSE(set.intervals[0].clipped_right);
    CHECK(measure(set) == doctest::Approx(M_PI / 2).epsilon(1e-5));

    // refined endpoints sit on the interpolant's crossing
    for (const auto& iv : set.intervals) {
        for (double endpoint : {iv.begin, iv.end}) {
            const double v = interp_linear(times, rho, endpoint);
            CHECK(std::abs(v - 0.5) <= 1e-9 * (1.0 + 0.5));
        }
    }
}

TEST_CASE("constant series below threshold yields the empty set") {
    const auto times = linspace(0.0, 1.0, 101);
    const std::vector<double> rho(times.size(), 0.3);
    const ExcursionSet set = extract_excursions(times, rho, 1.0, 0.0, 1.0);
    CHECK(set.intervals.empty());
    CHECK(measure(set) == 0.0);
}

TEST_CASE("two separated bumps give two disjoint intervals") {
    const auto times = linspace(0.0, 10.0, 4001);
    std::vector<double> rho(times.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double t = times[i];
        rho[i] = std::exp(-8.0 * (t - 2.5) * (t - 2.5)) + std::exp(-8.0 * (t - 7.5) * (t - 7.5));
    }
    const ExcursionSet set = extract_excursions(times, rho, 0.5, 0.0, 10.0);
    REQUIRE(set.intervals.size() == 2);
    CHECK(set.intervals[0].end < set.intervals[1].begin);
    check_membership_against_scan(times, rho, set, 0.5);
}

TEST_CASE("grazing contact at the threshold produces no interval") {
    // peak value exactly at the threshold
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> rho{0.2, 0.5, 1.0, 0.5, 0.2};
    const ExcursionSet set = extract_excursions(times, rho, 1.0, 0.0, 4.0);
    CHECK(set.intervals.empty());
}

TEST_CASE("a threshold-exact sample between two above-threshold samples splits the excursion") {
    const std::vector<double> times{0.0, 1.0, 2.0, 3.0, 4.0};
    const std::vector<double> rho{0.0, 2.0, 1.0, 2.0, 0.0};
    const ExcursionSet set = extract_excursions(times, rho, 1.0, 0.0, 4.0);
    REQUIRE(set.intervals.size() == 2);
    CHECK(set.intervals[0].end == doctest::Approx(2.0));
    CHECK(set.intervals[1].begin == doctest::Approx(2.0));
}

TEST_CASE("clipped intervals are flagged and count their full length") {
    const auto times = linspace(0.0, 1.0, 101);
    std::vector<double> rho(times.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = 2.0 * std::exp(-times[i]);
    const ExcursionSet set = extract_excursions(times, rho, 1.0, 0.0, 1.0);
    REQUIRE(set.intervals.size() == 1);
    CHECK(set.intervals[0].clipped_left);
    CHECK_FALSE(set.intervals[0].clipped_right);
    CHECK(set.intervals[0].begin == 0.0);
    CHECK(measure(set) == doctest::Approx(std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("window and axis validation") {
    const auto times = linspace(0.0, 1.0, 11);
    const std::vector<double> rho(times.size(), 0.5);
    CHECK_THROWS_WITH_AS((void)extract_excursions(times, rho, 1.0, -0.5, 0.5),
                         doctest::Contains("outside"), std::invalid_argument);
    std::vector<double> bad_times = times;
    std::swap(bad_times[3], bad_times[4]);
    CHECK_THROWS_WITH_AS((void)extract_excursions(bad_times, rho, 1.0, 0.0, 1.0),
                         doctest::Contains("non-monotone"), std::invalid_argument);
    std::vector<double> with_nan = rho;
    with_nan[5] = std::nan("");
    CHECK_THROWS_WITH_AS((void)extract_excursions(times, with_nan, 1.0, 0.0, 1.0),
                         doctest::Contains("NaN"), std::invalid_argument);
}

TEST_CASE("property: brute-force membership scan over 100 random series") {
    const auto times = linspace(0.0, 2.0 * M_PI, 1501);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto rho = random_rho(times, seed);
        const double peak = *std::max_element(rho.begin(), rho.end());
        const double threshold = 0.55 * peak;
        const ExcursionSet set = extract_excursions(times, rho, threshold, 0.0, 2.0 * M_PI);
        check_membership_against_scan(times, rho, set, threshold);
        for (const auto& iv : set.intervals) {
            if (!iv.clipped_left)
                CHECK(std::abs(interp_linear(times, rho, iv.begin) - threshold) <=
                      1e-9 * (1.0 + threshold));
            if (!iv.clipped_right)
                CHECK(std::abs(interp_linear(times, rho, iv.end) - threshold) <= 1e-9 * (1.0 + threshold));
        }
    }
}

TEST_CASE("property: excursion sets are nested in alpha") {
    const auto times = linspace(0.0, 2.0 * M_PI, 1001);
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        auto rho = random_rho(times, seed);
        for (auto& v : rho) v *= 4.0;  // push into the tan(alpha pi/2) range
        const ExcursionSet lo = extract_excursions(times, rho, excursion_threshold(0.5), 0.0, 2.0 * M_PI);
        const ExcursionSet hi = extract_excursions(times, rho, excursion_threshold(0.7), 0.0, 2.0 * M_PI);
        for (double t : times)
            if (hi.contains(t)) CHECK(lo.contains(t));
    }
}

TEST_CASE("limsup of identical sets is the set itself") {
    const auto times = linspace(0.0, M_PI, 501);
    std::vector<double> rho(times.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::sin(times[i]) * std::sin(times[i]);
    const ExcursionSet set = extract_excursions(times, rho, 0.5, 0.0, M_PI);
    const LimsupResult lim = limsup_excursions({set, set, set}, times);
    REQUIRE(lim.intervals.size() == set.intervals.size());
    CHECK(lim.measure == doctest::Approx(set.total_measure()));
}

TEST_CASE("limsup of alternating disjoint sets is empty") {
    ExcursionSet a, b;
    a.threshold = b.threshold = 1.0;
    a.window_begin = b.window_begin = 0.0;
    a.window_end = b.window_end = 10.0;
    a.intervals = {{1.0, 2.0, false, false}};
    b.intervals = {{3.0, 4.0, false, false}};
    const auto times = linspace(0.0, 10.0, 101);
    const LimsupResult lim = limsup_excursions({a, b, a, b}, times);
    CHECK(lim.intervals.empty());
    CHECK(lim.measure == 0.0);
}

TEST_CASE("limsup agrees with the brute-force sample-grid oracle") {
    const auto times = linspace(0.0, 2.0 * M_PI, 1201);
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        std::vector<ExcursionSet> sets;
        std::vector<std::vector<double>> rhos;
        for (int m = 0; m < 4; ++m) {
            auto rho = random_rho(times, seed * 10 + m);
            rhos.push_back(rho);
            sets.push_back(extract_excursions(times, rho, 0.5, 0.0, 2.0 * M_PI));
        }
        const LimsupResult lim = limsup_excursions(sets, times, rhos.back());
        REQUIRE(lim.indicator.size() == times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            bool all = true;
            for (const auto& s : sets) all = all && s.contains(times[i]);
            // skip samples that sit exactly on an interval boundary
            bool boundary = false;
            for (const auto& s : sets)
                for (const auto& iv : s.intervals)
                    if (times[i] == iv.begin || times[i] == iv.end) boundary = true;
            for (const auto& iv : lim.intervals)
                if (times[i] == iv.begin || times[i] == iv.end) boundary = true;
            if (!boundary) CHECK(static_cast<bool>(lim.indicator[i]) == all);
        }
        // measure bound from the supplied rho series
        REQUIRE(lim.bound_available);
        CHECK(lim.measure <= lim.bound * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("limsup rejects mismatched windows") {
    ExcursionSet a, b;
    a.threshold = b.threshold = 1.0;
    a.window_begin = 0.0;
    a.window_end = 1.0;
    b.window_begin = 0.0;
    b.window_end = 2.0;
    CHECK_THROWS_AS((void)limsup_excursions({a, b}, {}), std::invalid_argument);
}

TEST_CASE("excursion csv dump") {
    const auto path = std::filesystem::temp_directory_path() / "nslab_test_excursions.csv";
    ExcursionSet set;
    set.alpha = 0.5;
    set.threshold = 1.0;
    set.window_begin = 0.0;
    set.window_end = 2.0;
    set.intervals = {{0.25, 0.75, false, false}, {1.0, 2.0, false, true}};
    write_excursion_csv(set, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "alpha,s_h,t_h,clipped_left,clipped_right");
    std::string row;
    int rows = 0;
    while (std::getline(in, row))
        if (!row.empty()) ++rows;
    CHECK(rows == 2);
    std::filesystem::remove(path);
}
