#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "doctest.h"
#include "nslab/fourier.hpp"
#include "nslab/run_config.hpp"
#include "nslab/snapshot_io.hpp"
#include "nslab/spectral_field.hpp"

using namespace nslab;

namespace {

constexpr double two_pi = GridSpec::box;

GridSpec grid2(int n) { return GridSpec{2, n, 2.0 / 3.0}; }
GridSpec grid3(int n) { return GridSpec{3, n, 2.0 / 3.0}; }

SpectralField random_field(const GridSpec& grid, std::uint64_t seed) {
    // generic real field, not divergence-free
    SpectralField u(grid);
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < u.modes_per_component(); ++i) {
        if (!grid.retained(u.wavevector(i))) continue;
        for (int c = 0; c < grid.dim; ++c)
            u.component(c)[i] = SpectralField::Complex{gauss(engine), gauss(engine)};
    }
    enforce_conjugate_symmetry(u);
    return u;
}

double max_coeff_distance(const SpectralField& a, const SpectralField& b) {
    double mx = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) mx = std::max(mx, std::abs(a.raw()[i] - b.raw()[i]));
    return mx;
}

}  // namespace

TEST_CASE("grid validation names the offending field") {
    GridSpec g = grid2(32);
    CHECK_NOTHROW(g.validate());
    g.n = 7;
    CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("`n`"), std::invalid_argument);
    g = grid2(32);
    g.dim = 4;
    CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("`dim`"), std::invalid_argument);
    g = grid2(32);
    g.dealias = 0.0;
    CHECK_THROWS_WITH_AS(g.validate(), doctest::Contains("`dealias`"), std::invalid_argument);
}

TEST_CASE("dealias cutoff never retains the Nyquist mode") {
    GridSpec g = grid2(16);
    g.dealias = 1.0;
    CHECK(g.max_mode() == 7);
    g.dealias = 2.0 / 3.0;
    CHECK(g.max_mode() == 5);
}

TEST_CASE("fourier round trip fixes the normalization") {
    for (int dim = 2; dim <= 3; ++dim) {
        const GridSpec g = dim == 2 ? grid2(16) : grid3(12);
        const SpectralField u = random_field(g, 42);
        const SpectralField back = to_spectral(to_physical(u));
        CHECK(max_coeff_distance(u, back) < 1e-12);
    }
}

TEST_CASE("parseval: single mode in 2D") {
    SpectralField u(grid2(16));
    const std::complex<double> a{0.3, -0.7};
    u.at(0, {2, 1, 0}) = a;
    u.at(0, {-2, -1, 0}) = std::conj(a);
    const double expected = two_pi * two_pi * 2.0 * std::norm(a);
    CHECK(l2_norm(u) * l2_norm(u) == doctest::Approx(expected).epsilon(1e-12));

    // physical-space quadrature agrees with the spectral value
    CHECK(lq_norm(u, 2.0) == doctest::Approx(l2_norm(u)).epsilon(1e-10));
}

TEST_CASE("parseval quadrature consistency on random fields") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SpectralField u = random_field(grid2(20), seed);
        CHECK(lq_norm(u, 2.0) == doctest::Approx(l2_norm(u)).epsilon(1e-10));
    }
    const SpectralField w = random_field(grid3(12), 4);
    CHECK(lq_norm(w, 2.0) == doctest::Approx(l2_norm(w)).epsilon(1e-10));
}

TEST_CASE("projector: hand-applied single mode") {
    SpectralField u(grid2(16));
    u.at(0, {1, 0, 0}) = {1.0, 0.0};
    u.at(1, {1, 0, 0}) = {1.0, 0.0};
    u.at(0, {-1, 0, 0}) = {1.0, 0.0};
    u.at(1, {-1, 0, 0}) = {1.0, 0.0};
    const SpectralField p = project_div_free(u);
    CHECK(std::abs(p.at(0, {1, 0, 0})) < 1e-15);
    CHECK(std::abs(p.at(1, {1, 0, 0}) - std::complex<double>{1.0, 0.0}) < 1e-15);
}

TEST_CASE("projector annihilates gradient fields") {
    const GridSpec g = grid2(16);
    SpectralField phi(g);  // scalar potential in component 0
    std::mt19937_64 engine(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField grad(g);
    for (std::size_t i = 0; i < grad.modes_per_component(); ++i) {
        const WaveVector k = grad.wavevector(i);
        if (!g.retained(k)) continue;
        const std::complex<double> p{gauss(engine), gauss(engine)};
        for (int c = 0; c < g.dim; ++c)
            grad.component(c)[i] = std::complex<double>{0.0, static_cast<double>(k[c])} * p;
    }
    enforce_conjugate_symmetry(grad);
    const SpectralField projected = project_div_free(grad);
    CHECK(l2_norm(projected) < 1e-12 * std::max(1.0, l2_norm(grad)));
}

TEST_CASE("projector is idempotent, non-expanding, and exactly solenoidal") {
    const SpectralField u = random_field(grid3(12), 11);
    const SpectralField p = project_div_free(u);
    CHECK(divergence_sup(p) < 1e-12);
    CHECK(l2_norm(p) <= l2_norm(u) * (1.0 + 1e-14));
    const SpectralField pp = project_div_free(p);
    CHECK(max_coeff_distance(p, pp) < 1e-14);
    // already divergence-free fields pass through unchanged
    const SpectralField v = random_div_free_field(grid2(16), 5, -2.0, 1.0);
    CHECK(max_coeff_distance(v, project_div_free(v)) < 1e-14);
}

TEST_CASE("mollifier: cutoff, idempotence, identity regimes") {
    const GridSpec g = grid2(16);
    SpectralField u(g);
    u.at(0, {3, 4, 0}) = {1.0, 0.0};  // |k| = 5
    u.at(0, {-3, -4, 0}) = {1.0, 0.0};
    CHECK(l2_norm(mollify(u, {4, MollifierSpec::Kind::Sharp})) == 0.0);
    CHECK(l2_norm(mollify(u, {5, MollifierSpec::Kind::Sharp})) == doctest::Approx(l2_norm(u)));

    const SpectralField r = random_field(g, 13);
    const MollifierSpec m3{3, MollifierSpec::Kind::Sharp};
    const SpectralField once = mollify(r, m3);
    CHECK(max_coeff_distance(once, mollify(once, m3)) == 0.0);           // idempotent
    CHECK(l2_norm(once) <= l2_norm(r) * (1.0 + 1e-14));                  // orthogonal projection
    CHECK(max_coeff_distance(r, mollify(r, {g.n / 2, MollifierSpec::Kind::Sharp})) == 0.0);  // 2D identity
}

TEST_CASE("gaussian mollifier is norm-nonincreasing but not idempotent") {
    const SpectralField r = random_field(grid2(16), 17);
    const MollifierSpec mg{3, MollifierSpec::Kind::Gaussian};
    const SpectralField once = mollify(r, mg);
    CHECK(l2_norm(once) < l2_norm(r));
    CHECK(max_coeff_distance(once, mollify(once, mg)) > 1e-6);
}

TEST_CASE("mollifier commutes with laplacian and projector") {
    const SpectralField r = random_field(grid3(12), 19);
    const MollifierSpec m{2, MollifierSpec::Kind::Sharp};
    CHECK(max_coeff_distance(mollify(laplacian(r), m), laplacian(mollify(r, m))) < 1e-13);
    CHECK(max_coeff_distance(mollify(project_div_free(r), m), project_div_free(mollify(r, m))) < 1e-13);
}

TEST_CASE("laplacian multiplies modes by -|k|^2") {
    SpectralField u(grid2(16));
    u.at(0, {2, 1, 0}) = {1.0, 1.0};
    u.at(0, {-2, -1, 0}) = {1.0, -1.0};
    const SpectralField lap = laplacian(u);
    CHECK(lap.at(0, {2, 1, 0}) == std::complex<double>{-5.0, -5.0});
}

TEST_CASE("inner(u, u) equals the squared norm") {
    const SpectralField u = random_field(grid2(20), 23);
    CHECK(inner(u, u) == doctest::Approx(l2_norm(u) * l2_norm(u)).epsilon(1e-13));
    const SpectralField w = random_field(grid2(16), 29);
    CHECK_THROWS_AS((void)inner(u, w), std::invalid_argument);  // grid mismatch
}

TEST_CASE("lq norms: constant field, grid max, and exponent domain") {
    SpectralField u(grid2(16));
    u.at(0, {0, 0, 0}) = {1.5, 0.0};  // constant field (1.5, 0)
    CHECK(lq_norm(u, 2.0) == doctest::Approx(1.5 * two_pi).epsilon(1e-12));

    SpectralField s(grid2(16));
    s.at(0, {1, 0, 0}) = {0.0, -0.5};  // sin(x)
    s.at(0, {-1, 0, 0}) = {0.0, 0.5};
    CHECK(lq_norm(s, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)lq_norm(u, 0.5), std::invalid_argument);
}

TEST_CASE("nonlinear term: zero advecting field and constant transported field") {
    const GridSpec g = grid2(16);
    const SpectralField zero(g);
    const SpectralField u = random_field(g, 31);
    CHECK(l2_norm(nonlinear_term(zero, u)) < 1e-14);

    SpectralField konst(g);
    konst.at(0, {0, 0, 0}) = {2.0, 0.0};
    konst.at(1, {0, 0, 0}) = {-1.0, 0.0};
    const SpectralField v = random_div_free_field(g, 37, -2.0, 1.0);
    CHECK(l2_norm(nonlinear_term(v, konst)) < 1e-13);
}

TEST_CASE("taylor-green nonlinearity is a pure gradient") {
    RunConfig cfg;
    cfg.grid = grid2(32);
    cfg.ic = InitialCondition::TaylorGreen;
    const SpectralField u = ic_preset_field(cfg);
    const SpectralField nl = nonlinear_term(u, u);
    CHECK(l2_norm(project_div_free(nl)) < 1e-10);
    CHECK(l2_norm(nl) > 1e-3);  // the unprojected term itself is not zero
}

TEST_CASE("advection is energy-neutral on divergence-free fields") {
    for (std::uint64_t seed : {3ull, 5ull, 8ull}) {
        const SpectralField u = random_div_free_field(grid2(20), seed, -2.0, 1.0);
        const double neutrality = std::abs(inner(nonlinear_term(u, u), u));
        CHECK(neutrality < 1e-10);
    }
    const SpectralField w = random_div_free_field(grid3(16), 9, -2.5, 1.0);
    CHECK(std::abs(inner(nonlinear_term(w, w), w)) < 1e-10);
}

TEST_CASE("random divergence-free fields are reproducible and normalized") {
    const GridSpec g = grid2(24);
    const SpectralField a = random_div_free_field(g, 123, -3.0, 0.7);
    const SpectralField b = random_div_free_field(g, 123, -3.0, 0.7);
    CHECK(max_coeff_distance(a, b) == 0.0);
    CHECK(l2_norm(a) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(divergence_sup(a) < 1e-12);
    const SpectralField c = random_div_free_field(g, 124, -3.0, 0.7);
    CHECK(max_coeff_distance(a, c) > 1e-3);
}

TEST_CASE("snapshot files round-trip bit-exactly") {
    const auto path = std::filesystem::temp_directory_path() / "nslab_test_snapshot.nslf";
    const SpectralField u = random_div_free_field(grid3(12), 77, -2.0, 1.3);
    write_snapshot(u, path);
    const SpectralField back = read_snapshot(path);
    REQUIRE(back.same_grid(u));
    CHECK(max_coeff_distance(u, back) == 0.0);
    std::filesystem::remove(path);
}

TEST_CASE("snapshot reader rejects garbage") {
    const auto path = std::filesystem::temp_directory_path() / "nslab_test_garbage.nslf";
    {
        std::ofstream out(path, std::ios::binary);
        out << "not a snapshot";
    }
    CHECK_THROWS_WITH_AS((void)read_snapshot(path), doctest::Contains("magic"), std::runtime_error);
    std::filesystem::remove(path);
}
