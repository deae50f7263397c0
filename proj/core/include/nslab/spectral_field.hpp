#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nslab/grid.hpp"

namespace nslab {

/// Sharp Fourier cutoff at radius m (the default Leray regularizer) or a
/// Gaussian roll-off exp(-|k|^2/(2m^2)) at the same scale. The sharp cutoff
/// is idempotent and commutes with every modewise-diagonal operator.
struct MollifierSpec {
    enum class Kind { Sharp, Gaussian };
    int m = 1;
    Kind kind = Kind::Sharp;

    void validate() const;
    double factor(const WaveVector& k) const;
};

/// Divergence-free-capable vector field on the periodic torus, stored as
/// truncated Fourier coefficients in FFT index order, component-major.
///
/// Stored values are Fourier-series amplitudes: u(x) = sum_k c_k e^{i k.x}.
/// Real fields satisfy c(-k) = conj(c(k)). Parseval then reads
/// ||u||_2^2 = (2pi)^dim sum_{comp,k} |c_k|^2, which every norm below uses.
class SpectralField {
  public:
    using Complex = std::complex<double>;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int components() const { return grid_.dim; }
    std::size_t modes_per_component() const { return grid_.point_count(); }

    /// Coefficient addressed by signed wavevector (|k_i| < n - n/2 wraps).
    Complex& at(int comp, const WaveVector& k);
    const Complex& at(int comp, const WaveVector& k) const;

    std::span<Complex> component(int comp);
    std::span<const Complex> component(int comp) const;

    std::span<const Complex> raw() const { return coeffs_; }
    std::span<Complex> raw() { return coeffs_; }

    /// Flat storage index of a wavevector within one component.
    std::size_t flat_index(const WaveVector& k) const;
    /// Inverse of flat_index: storage offset -> signed wavevector.
    WaveVector wavevector(std::size_t flat) const;

    bool same_grid(const SpectralField& other) const { return grid_ == other.grid_; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);

  private:
    GridSpec grid_{};
    std::vector<Complex> coeffs_;  // components * n^dim
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

// -- modewise operators -------------------------------------------------

/// Leray projection: c_k - k (k.c_k)/|k|^2 per mode; k = 0 passes through
/// (constants are divergence-free). Eliminates the pressure gradient.
SpectralField project_div_free(const SpectralField& u);

/// Zero every coefficient with mollifier factor applied (sharp: |k| > m).
SpectralField mollify(const SpectralField& u, const MollifierSpec& m);

/// Multiply each mode by -|k|^2.
SpectralField laplacian(const SpectralField& u);

/// Zero all modes outside the grid's dealias cutoff.
void dealias_in_place(SpectralField& u);

/// Zero the k = 0 coefficient of every component (velocity convention).
void zero_mean_in_place(SpectralField& u);

/// Overwrite c(-k) with conj(c(k)) from the canonical half-space; used by
/// generators that fill coefficients directly.
void enforce_conjugate_symmetry(SpectralField& u);

// -- norms and pairings --------------------------------------------------

/// ||u||_2 = sqrt((2pi)^dim sum |c|^2), exact from coefficients.
double l2_norm(const SpectralField& u);

/// ||grad u||_2^2 = (2pi)^dim sum |k|^2 |c|^2 (the rho diagnostic).
double grad_norm_sq(const SpectralField& u);

/// L^2 pairing (u, w) = (2pi)^dim Re sum c_u conj(c_w); grids must match.
double inner(const SpectralField& u, const SpectralField& w);

/// L^q norm of the pointwise Euclidean magnitude, by rectangle quadrature
/// on the collocation grid (q < inf) or the grid max (q = inf). Exact for
/// q = 2 on Nyquist-free fields, spectrally accurate otherwise. q >= 1.
double lq_norm(const SpectralField& u, double q);

/// max_k |k.c_k| / max(1, max_k |c_k|): divergence-free check metric.
double divergence_sup(const SpectralField& u);

/// max over modes and components of |c_k| (blow-up detection helper).
double max_abs_coeff(const SpectralField& u);

// -- nonlinear term -------------------------------------------------------

/// (u_adv . grad) u evaluated pseudo-spectrally with the grid's dealias
/// cutoff applied to the result. Not projected; callers project.
SpectralField nonlinear_term(const SpectralField& u_adv, const SpectralField& u);

}  // namespace nslab
