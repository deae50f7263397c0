#include "nslab/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nslab/fourier.hpp"

namespace nslab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!a.same_grid(b)) throw std::invalid_argument("grid mismatch between spectral fields");
}

constexpr double two_pi = GridSpec::box;

double domain_volume_factor(int dim) {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= two_pi;
    return v;
}

}  // namespace

void GridSpec::validate() const {
    require(dim == 2 || dim == 3, "grid field `dim` must be 2 or 3");
    require(n >= 8, "grid field `n` must be >= 8");
    require(n % 2 == 0, "grid field `n` must be even");
    require(dealias > 0.0 && dealias <= 1.0, "grid field `dealias` must lie in (0, 1]");
}

std::size_t GridSpec::point_count() const {
    std::size_t c = 1;
    for (int d = 0; d < dim; ++d) c *= static_cast<std::size_t>(n);
    return c;
}

int GridSpec::max_mode() const {
    int from_fraction = static_cast<int>(std::floor(dealias * (n / 2) + 1e-12));
    return std::min(from_fraction, n / 2 - 1);
}

bool GridSpec::retained(const WaveVector& k) const {
    const int kmax = max_mode();
    for (int d = 0; d < dim; ++d)
        if (std::abs(k[d]) > kmax) return false;
    return true;
}

void MollifierSpec::validate() const { require(m >= 1, "mollifier field `m` must be a positive integer"); }

double MollifierSpec::factor(const WaveVector& k) const {
    const long long k2 = squared_norm(k);
    if (kind == Kind::Sharp) return k2 <= static_cast<long long>(m) * m ? 1.0 : 0.0;
    return std::exp(-0.5 * static_cast<double>(k2) / (static_cast<double>(m) * m));
}

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    coeffs_.assign(static_cast<std::size_t>(grid_.dim) * grid_.point_count(), Complex{0.0, 0.0});
}

std::size_t SpectralField::flat_index(const WaveVector& k) const {
    const int n = grid_.n;
    for (int d = 0; d < grid_.dim; ++d)
        if (k[d] < -n / 2 || k[d] >= n - n / 2)
            throw std::out_of_range("wavevector component " + std::to_string(k[d]) +
                                    " outside the representable range for n = " + std::to_string(n));
    std::size_t idx = static_cast<std::size_t>(mode_index(k[0], n));
    idx = idx * n + static_cast<std::size_t>(mode_index(k[1], n));
    if (grid_.dim == 3) idx = idx * n + static_cast<std::size_t>(mode_index(k[2], n));
    return idx;
}

WaveVector SpectralField::wavevector(std::size_t flat) const {
    const int n = grid_.n;
    WaveVector k{0, 0, 0};
    if (grid_.dim == 3) {
        k[2] = wavenumber(static_cast<int>(flat % n), n);
        flat /= n;
    }
    k[1] = wavenumber(static_cast<int>(flat % n), n);
    k[0] = wavenumber(static_cast<int>(flat / n), n);
    return k;
}

SpectralField::Complex& SpectralField::at(int comp, const WaveVector& k) {
    return component(comp)[flat_index(k)];
}

const SpectralField::Complex& SpectralField::at(int comp, const WaveVector& k) const {
    return component(comp)[flat_index(k)];
}

std::span<SpectralField::Complex> SpectralField::component(int comp) {
    const std::size_t m = modes_per_component();
    return {coeffs_.data() + static_cast<std::size_t>(comp) * m, m};
}

std::span<const SpectralField::Complex> SpectralField::component(int comp) const {
    const std::size_t m = modes_per_component();
    return {coeffs_.data() + static_cast<std::size_t>(comp) * m, m};
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField project_div_free(const SpectralField& u) {
    SpectralField out = u;
    const std::size_t m = out.modes_per_component();
    const int dim = out.components();
    for (std::size_t i = 0; i < m; ++i) {
        const WaveVector k = out.wavevector(i);
        const long long k2 = squared_norm(k);
        if (k2 == 0) continue;
        SpectralField::Complex kdotv{0.0, 0.0};
        for (int c = 0; c < dim; ++c) kdotv += static_cast<double>(k[c]) * out.component(c)[i];
        kdotv /= static_cast<double>(k2);
        for (int c = 0; c < dim; ++c) out.component(c)[i] -= static_cast<double>(k[c]) * kdotv;
    }
    return out;
}

SpectralField mollify(const SpectralField& u, const MollifierSpec& m) {
    m.validate();
    SpectralField out = u;
    const std::size_t modes = out.modes_per_component();
    for (std::size_t i = 0; i < modes; ++i) {
        const double f = m.factor(out.wavevector(i));
        if (f == 1.0) continue;
        for (int c = 0; c < out.components(); ++c) out.component(c)[i] *= f;
    }
    return out;
}

SpectralField laplacian(const SpectralField& u) {
    SpectralField out = u;
    const std::size_t modes = out.modes_per_component();
    for (std::size_t i = 0; i < modes; ++i) {
        const double k2 = static_cast<double>(squared_norm(out.wavevector(i)));
        for (int c = 0; c < out.components(); ++c) out.component(c)[i] *= -k2;
    }
    return out;
}

void dealias_in_place(SpectralField& u) {
    const std::size_t modes = u.modes_per_component();
    for (std::size_t i = 0; i < modes; ++i) {
        if (u.grid().retained(u.wavevector(i))) continue;
        for (int c = 0; c < u.components(); ++c) u.component(c)[i] = {0.0, 0.0};
    }
}

void zero_mean_in_place(SpectralField& u) {
    for (int c = 0; c < u.components(); ++c) u.component(c)[0] = {0.0, 0.0};
}

void enforce_conjugate_symmetry(SpectralField& u) {
    const std::size_t modes = u.modes_per_component();
    const int n = u.grid().n;
    for (std::size_t i = 0; i < modes; ++i) {
        const WaveVector k = u.wavevector(i);
        // Nyquist rows have no representable conjugate partner; zero them
        // (they are never retained by the dealias cutoff either)
        if (k[0] == -n / 2 || k[1] == -n / 2 || k[2] == -n / 2) {
            for (int c = 0; c < u.components(); ++c) u.component(c)[i] = {0.0, 0.0};
            continue;
        }
        // canonical half-space: first nonzero component positive
        const bool canonical = k[0] > 0 || (k[0] == 0 && (k[1] > 0 || (k[1] == 0 && k[2] >= 0)));
        if (canonical) continue;
        const WaveVector mk{-k[0], -k[1], -k[2]};
        for (int c = 0; c < u.components(); ++c) u.component(c)[i] = std::conj(u.at(c, mk));
    }
    for (int c = 0; c < u.components(); ++c) {
        auto& mean = u.component(c)[0];
        mean = {mean.real(), 0.0};
    }
}

double l2_norm(const SpectralField& u) {
    double sum = 0.0;
    for (const auto& c : u.raw()) sum += std::norm(c);
    return std::sqrt(domain_volume_factor(u.grid().dim) * sum);
}

double grad_norm_sq(const SpectralField& u) {
    double sum = 0.0;
    const std::size_t modes = u.modes_per_component();
    for (std::size_t i = 0; i < modes; ++i) {
        const double k2 = static_cast<double>(squared_norm(u.wavevector(i)));
        if (k2 == 0.0) continue;
        for (int c = 0; c < u.components(); ++c) sum += k2 * std::norm(u.component(c)[i]);
    }
    return domain_volume_factor(u.grid().dim) * sum;
}

double inner(const SpectralField& u, const SpectralField& w) {
    require_same_grid(u, w);
    double sum = 0.0;
    const auto cu = u.raw();
    const auto cw = w.raw();
    for (std::size_t i = 0; i < cu.size(); ++i)
        sum += cu[i].real() * cw[i].real() + cu[i].imag() * cw[i].imag();
    return domain_volume_factor(u.grid().dim) * sum;
}

double lq_norm(const SpectralField& u, double q) {
    require(q >= 1.0, "lq_norm exponent q must satisfy q >= 1");
    const PhysicalField phys = to_physical(u);
    const std::size_t pts = u.grid().point_count();
    const int dim = u.grid().dim;

    if (std::isinf(q)) {
        double mx = 0.0;
        for (std::size_t i = 0; i < pts; ++i) {
            double mag2 = 0.0;
            for (int c = 0; c < dim; ++c) {
                const double v = phys.component(c)[i];
                mag2 += v * v;
            }
            mx = std::max(mx, mag2);
        }
        return std::sqrt(mx);
    }

    const double cell = std::pow(two_pi / u.grid().n, dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < pts; ++i) {
        double mag2 = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double v = phys.component(c)[i];
            mag2 += v * v;
        }
        sum += std::pow(mag2, 0.5 * q);
    }
    return std::pow(cell * sum, 1.0 / q);
}

double divergence_sup(const SpectralField& u) {
    double max_div = 0.0;
    double max_coeff = 0.0;
    const std::size_t modes = u.modes_per_component();
    for (std::size_t i = 0; i < modes; ++i) {
        const WaveVector k = u.wavevector(i);
        SpectralField::Complex kdotv{0.0, 0.0};
        for (int c = 0; c < u.components(); ++c) {
            const auto& v = u.component(c)[i];
            kdotv += static_cast<double>(k[c]) * v;
            max_coeff = std::max(max_coeff, std::abs(v));
        }
        max_div = std::max(max_div, std::abs(kdotv));
    }
    return max_div / std::max(1.0, max_coeff);
}

double max_abs_coeff(const SpectralField& u) {
    double mx = 0.0;
    for (const auto& c : u.raw()) mx = std::max(mx, std::abs(c));
    return mx;
}

SpectralField nonlinear_term(const SpectralField& u_adv, const SpectralField& u) {
    require_same_grid(u_adv, u);
    const GridSpec& grid = u.grid();
    const int dim = grid.dim;
    const std::size_t pts = grid.point_count();

    std::vector<std::vector<double>> adv(dim);
    for (int a = 0; a < dim; ++a) synthesize_component(u_adv, a, adv[a]);

    // derivative field d_a u_j in spectral space, synthesized per (a, j)
    SpectralField deriv(grid);
    std::vector<double> deriv_phys;
    std::vector<std::vector<double>> result(dim, std::vector<double>(pts, 0.0));
    const std::size_t modes = u.modes_per_component();

    for (int a = 0; a < dim; ++a) {
        for (int j = 0; j < dim; ++j) {
            auto dst = deriv.component(0);
            const auto src = u.component(j);
            for (std::size_t i = 0; i < modes; ++i) {
                const double ka = static_cast<double>(deriv.wavevector(i)[a]);
                dst[i] = SpectralField::Complex{0.0, ka} * src[i];
            }
            synthesize_component(deriv, 0, deriv_phys);
            for (std::size_t i = 0; i < pts; ++i) result[j][i] += adv[a][i] * deriv_phys[i];
        }
    }

    SpectralField out(grid);
    for (int j = 0; j < dim; ++j) analyze_component(grid, result[j], out, j);
    dealias_in_place(out);
    return out;
}

}  // namespace nslab
