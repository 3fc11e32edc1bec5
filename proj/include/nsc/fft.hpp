#pragma once

#include "nsc/field.hpp"

namespace nsc {

// Discrete transforms carrying the physical volume element:
//   forward:  u_hat(xi) = (L/n)^3 * DFT(u)
//   inverse:  u(x) = (1/L^3) * IDFT(u_hat)  (unnormalized FFTW backward)
// so inverse(forward(u)) == u and Parseval reads
//   integral |u|^2 dx = (1/L^3) * sum |u_hat|^2.
SpectralField forward_transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& f);

// In-place workspace variants used by the solver hot loops.
void forward_transform_into(const PhysicalField& f, SpectralField& out);
void inverse_transform_into(const SpectralField& f, PhysicalField& out);

// 2D complex-to-complex backward DFT (unnormalized), n x n row-major.
// Used by the continuum slice evaluator.
void ifft2_inplace(cplx* data, int n);

} // namespace nsc
