#pragma once

#include <filesystem>

#include "nslab/spectral_field.hpp"

namespace nslab {

/// Field snapshot file, little-endian binary:
///   bytes 0-3   magic "NSLF"
///   uint32      format version (1)
///   int32       dim
///   int32       n
///   float64     dealias fraction
///   float64[2 * dim * n^dim]  coefficients, component-major, FFT index
///                             order, (re, im) pairs
/// Round-trips bit-exactly.
void write_snapshot(const SpectralField& field, const std::filesystem::path& path);
SpectralField read_snapshot(const std::filesystem::path& path);

}  // namespace nslab
