#include "nsc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nsc {

namespace {

// Plans are created with FFTW_ESTIMATE: MEASURE tunes by timing and may pick
// different butterflies between runs, which would break byte-identical
// reruns. Cached per (n, direction); executed via the new-array interface.
struct PlanCache {
    std::mutex mu;
    std::map<std::pair<int, int>, fftw_plan> plans; // (n, sign) -> plan 3D
    std::map<std::pair<int, int>, fftw_plan> plans2d;

    fftw_plan get(int n, int sign, bool two_d)
    {
        std::lock_guard<std::mutex> lock(mu);
        auto& table = two_d ? plans2d : plans;
        auto it = table.find({n, sign});
        if (it != table.end()) return it->second;
        std::size_t total = two_d ? static_cast<std::size_t>(n) * n
                                  : static_cast<std::size_t>(n) * n * n;
        std::vector<cplx> buf(total);
        fftw_complex* p = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan plan = two_d
            ? fftw_plan_dft_2d(n, n, p, p, sign, FFTW_ESTIMATE)
            : fftw_plan_dft_3d(n, n, n, p, p, sign, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        table[{n, sign}] = plan;
        return plan;
    }
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

} // namespace

void forward_transform_into(const PhysicalField& f, SpectralField& out)
{
    const int n = f.grid.n;
    const std::size_t m = f.points();
    if (out.grid != f.grid || out.n_components != f.n_components)
        out = SpectralField(f.grid, f.n_components);
    fftw_plan plan = cache().get(n, FFTW_FORWARD, false);
    const double scale = f.grid.cell_volume();
    for (int c = 0; c < f.n_components; ++c) {
        cplx* dst = out.coeffs.data() + c * m;
        const double* src = f.values.data() + c * m;
        for (std::size_t i = 0; i < m; ++i) dst[i] = cplx(src[i], 0.0);
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(dst),
                         reinterpret_cast<fftw_complex*>(dst));
        for (std::size_t i = 0; i < m; ++i) dst[i] *= scale;
    }
    out.mean_zero = false;
}

SpectralField forward_transform(const PhysicalField& f)
{
    SpectralField out(f.grid, f.n_components);
    forward_transform_into(f, out);
    return out;
}

void inverse_transform_into(const SpectralField& f, PhysicalField& out)
{
    const int n = f.grid.n;
    const std::size_t m = f.modes();
    if (out.grid != f.grid || out.n_components != f.n_components)
        out = PhysicalField(f.grid, f.n_components);
    fftw_plan plan = cache().get(n, FFTW_BACKWARD, false);
    const double scale = 1.0 / f.grid.volume();
    std::vector<cplx> buf(m);
    for (int c = 0; c < f.n_components; ++c) {
        std::copy(f.coeffs.begin() + c * m, f.coeffs.begin() + (c + 1) * m, buf.begin());
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                         reinterpret_cast<fftw_complex*>(buf.data()));
        double* dst = out.values.data() + c * m;
        for (std::size_t i = 0; i < m; ++i) dst[i] = buf[i].real() * scale;
    }
}

PhysicalField inverse_transform(const SpectralField& f)
{
    PhysicalField out(f.grid, f.n_components);
    inverse_transform_into(f, out);
    return out;
}

void ifft2_inplace(cplx* data, int n)
{
    fftw_plan plan = cache().get(n, FFTW_BACKWARD, true);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

} // namespace nsc
