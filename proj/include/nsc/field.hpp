#pragma once

#include <complex>
#include <vector>

#include "nsc/exec.hpp"
#include "nsc/grid.hpp"

namespace nsc {

using cplx = std::complex<double>;

// Fourier coefficients of a scalar (1-component) or vector (3-component)
// field, row-major (component, k1, k2, k3), k axes in FFT storage order.
// Convention: u_hat(xi) = (L/n)^3 * sum_x u(x) exp(-i x.xi), the Riemann
// approximation of the whole-space transform on one period.
struct SpectralField {
    Grid3 grid;
    int n_components = 1;
    bool mean_zero = false;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    SpectralField(const Grid3& g, int ncomp, bool zero_mean = false);

    std::size_t modes() const { return grid.points(); }
    std::size_t size() const { return coeffs.size(); }

    cplx& at(int c, std::size_t mode) { return coeffs[c * modes() + mode]; }
    const cplx& at(int c, std::size_t mode) const { return coeffs[c * modes() + mode]; }
    cplx& at(int c, int i1, int i2, int i3);
    const cplx& at(int c, int i1, int i2, int i3) const;

    void set_zero();
    void enforce_zero_mode();          // kill k = 0 and mark mean_zero
    double l2() const;                         // Parseval L2 norm
    double max_hermitian_defect() const;       // |c(-k) - conj(c(k))| max
    double divergence_residual() const;        // ||xi.u|| / ||(|xi| |u|)||, L2 sense

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// axpy: y += a*x
void add_scaled(SpectralField& y, double a, const SpectralField& x);

double l2_distance(const SpectralField& a, const SpectralField& b);
// L2 inner product Re <a, b> with the physical volume normalization
double l2_inner(const SpectralField& a, const SpectralField& b);

// Real-valued samples on the grid, row-major (component, x1, x2, x3).
struct PhysicalField {
    Grid3 grid;
    int n_components = 1;
    std::vector<double> values;

    PhysicalField() = default;
    PhysicalField(const Grid3& g, int ncomp);

    std::size_t points() const { return grid.points(); }
    double& at(int c, std::size_t p) { return values[c * points() + p]; }
    const double& at(int c, std::size_t p) const { return values[c * points() + p]; }
};

} // namespace nsc
