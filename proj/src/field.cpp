#include "nsc/field.hpp"

#include <cmath>
#include <stdexcept>

namespace nsc {

SpectralField::SpectralField(const Grid3& g, int ncomp, bool zero_mean)
    : grid(g), n_components(ncomp), mean_zero(zero_mean),
      coeffs(static_cast<std::size_t>(ncomp) * g.points(), cplx(0.0, 0.0))
{
    if (ncomp != 1 && ncomp != 3)
        throw std::invalid_argument("SpectralField: n_components must be 1 or 3");
}

cplx& SpectralField::at(int c, int i1, int i2, int i3)
{
    const int n = grid.n;
    return coeffs[((static_cast<std::size_t>(c) * n + i1) * n + i2) * n + i3];
}

const cplx& SpectralField::at(int c, int i1, int i2, int i3) const
{
    const int n = grid.n;
    return coeffs[((static_cast<std::size_t>(c) * n + i1) * n + i2) * n + i3];
}

void SpectralField::set_zero()
{
    std::fill(coeffs.begin(), coeffs.end(), cplx(0.0, 0.0));
}

void SpectralField::enforce_zero_mode()
{
    for (int c = 0; c < n_components; ++c) at(c, std::size_t(0)) = 0.0;
    mean_zero = true;
}

double SpectralField::l2() const
{
    const double s = par_sum(coeffs.size(), default_exec(),
                             [this](std::size_t i) { return std::norm(coeffs[i]); });
    return std::sqrt(s / grid.volume());
}

double SpectralField::max_hermitian_defect() const
{
    const int n = grid.n;
    double worst = 0.0;
    for (int c = 0; c < n_components; ++c)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3) {
                    const int j1 = (n - i1) % n, j2 = (n - i2) % n, j3 = (n - i3) % n;
                    const cplx d = at(c, i1, i2, i3) - std::conj(at(c, j1, j2, j3));
                    worst = std::max(worst, std::abs(d));
                }
    return worst;
}

double SpectralField::divergence_residual() const
{
    if (n_components != 3) return 0.0;
    const int n = grid.n;
    const auto& xi = grid.xi();
    const std::size_t m = modes();
    const cplx* u1 = coeffs.data();
    const cplx* u2 = coeffs.data() + m;
    const cplx* u3 = coeffs.data() + 2 * m;
    double num = par_sum(m, default_exec(), [&](std::size_t p) {
        const int i3 = static_cast<int>(p % n);
        const int i2 = static_cast<int>((p / n) % n);
        const int i1 = static_cast<int>(p / (static_cast<std::size_t>(n) * n));
        const cplx div = xi[i1] * u1[p] + xi[i2] * u2[p] + xi[i3] * u3[p];
        return std::norm(div);
    });
    double den = par_sum(m, default_exec(), [&](std::size_t p) {
        const int i3 = static_cast<int>(p % n);
        const int i2 = static_cast<int>((p / n) % n);
        const int i1 = static_cast<int>(p / (static_cast<std::size_t>(n) * n));
        const double x2 = xi[i1] * xi[i1] + xi[i2] * xi[i2] + xi[i3] * xi[i3];
        return x2 * (std::norm(u1[p]) + std::norm(u2[p]) + std::norm(u3[p]));
    });
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

SpectralField& SpectralField::operator+=(const SpectralField& o)
{
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o)
{
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a)
{
    for (auto& c : coeffs) c *= a;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { a += b; return a; }
SpectralField operator-(SpectralField a, const SpectralField& b) { a -= b; return a; }
SpectralField operator*(double a, SpectralField f) { f *= a; return f; }

void add_scaled(SpectralField& y, double a, const SpectralField& x)
{
    for (std::size_t i = 0; i < y.coeffs.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
}

double l2_distance(const SpectralField& a, const SpectralField& b)
{
    const double s = par_sum(a.coeffs.size(), default_exec(), [&](std::size_t i) {
        return std::norm(a.coeffs[i] - b.coeffs[i]);
    });
    return std::sqrt(s / a.grid.volume());
}

double l2_inner(const SpectralField& a, const SpectralField& b)
{
    const double s = par_sum(a.coeffs.size(), default_exec(), [&](std::size_t i) {
        return a.coeffs[i].real() * b.coeffs[i].real() + a.coeffs[i].imag() * b.coeffs[i].imag();
    });
    return s / a.grid.volume();
}

PhysicalField::PhysicalField(const Grid3& g, int ncomp)
    : grid(g), n_components(ncomp),
      values(static_cast<std::size_t>(ncomp) * g.points(), 0.0)
{
    if (ncomp != 1 && ncomp != 3)
        throw std::invalid_argument("PhysicalField: n_components must be 1 or 3");
}

} // namespace nsc
