#pragma once

#include <array>
#include <cstddef>

namespace nslab {

/// Wavevector with up to three integer components; unused axes stay zero.
using WaveVector = std::array<int, 3>;

/// Uniform collocation grid for the 2pi-periodic torus, dim = 2 or 3,
/// n modes per axis (even, >= 8). `dealias` is the fraction of |k_i| <= n/2
/// retained per axis; the default 2/3 gives the classical dealiasing rule
/// for quadratic products.
struct GridSpec {
    int dim = 2;
    int n = 32;
    double dealias = 2.0 / 3.0;

    static constexpr double box = 6.283185307179586476925286766559;  // 2*pi

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// Collocation points / stored modes per component: n^dim.
    std::size_t point_count() const;

    /// Largest |k_i| kept per axis: min(floor(dealias*n/2), n/2-1).
    /// The Nyquist mode -n/2 is never retained (it has no conjugate partner).
    int max_mode() const;

    /// True when every |k_i| <= max_mode().
    bool retained(const WaveVector& k) const;

    bool operator==(const GridSpec&) const = default;
};

/// FFT storage index -> signed wavenumber for an axis of size n.
inline int wavenumber(int index, int n) { return index < n - n / 2 ? index : index - n; }

/// Signed wavenumber -> FFT storage index for an axis of size n.
inline int mode_index(int k, int n) { return k >= 0 ? k : k + n; }

inline long long squared_norm(const WaveVector& k) {
    return static_cast<long long>(k[0]) * k[0] + static_cast<long long>(k[1]) * k[1] +
           static_cast<long long>(k[2]) * k[2];
}

}  // namespace nslab
