#pragma once

#include <string>

#include "nsc/field.hpp"

namespace nsc {

// Binary field snapshot: 64-byte little-endian header
//   bytes 0..3   magic "NSCF"
//   bytes 4..7   version (u32, = 1)
//   bytes 8..11  n_per_axis (u32)
//   bytes 12..15 n_components (u32)
//   bytes 16..23 box_length (f64)
//   bytes 24..63 reserved (zero)
// followed by the coefficients as interleaved (re, im) f64 pairs in
// row-major (component, k1, k2, k3) order, k axes in FFT storage order.
void save_field(const std::string& path, const SpectralField& f);
SpectralField load_field(const std::string& path);

} // namespace nsc
