#include "nsc/continuum.hpp"

#include <cmath>
#include <stdexcept>

#include "nsc/dyadic.hpp"
#include "nsc/exec.hpp"
#include "nsc/fft.hpp"

namespace nsc {

namespace {

// 12-point Gauss-Legendre on [-1, 1]
constexpr int gl_n = 12;
constexpr double gl_x[gl_n] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double gl_w[gl_n] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

template <class F>
void gl_panels(double lo, double hi, int panels, F&& accumulate)
{
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * h;
        const double mid = a + 0.5 * h, half = 0.5 * h;
        for (int g = 0; g < gl_n; ++g) accumulate(mid + half * gl_x[g], half * gl_w[g]);
    }
}

int wrap_index(int k, int n) { return k >= 0 ? k : k + n; }

struct SliceGrid {
    double box = 0.0;
    int n = 0;
    double dxi() const { return 2.0 * M_PI / box; }
    double dx() const { return box / n; }
};

SliceGrid make_grid(double box, double dx_target, int max_points)
{
    SliceGrid g;
    g.box = box;
    int n = static_cast<int>(std::ceil(box / dx_target));
    n = ((n + 15) / 16) * 16;
    if (n > max_points)
        throw std::invalid_argument("continuum: slice grid exceeds max_points (box too large)");
    g.n = n;
    return g;
}

// xi2-segments of the annulus section at fixed (xi1, xi3):
// rho in [a, b] <=> xi2 in +-[sqrt(max(a^2-r13^2,0)), sqrt(b^2-r13^2)]
struct Segments {
    double lo = 0.0, hi = 0.0;
    bool split = false; // true: two segments +-[lo,hi]; false: one [-hi,hi]
    bool empty = true;
};

Segments annulus_segments(double r13sq, double a, double b)
{
    Segments s;
    if (r13sq >= b * b) return s;
    s.empty = false;
    s.hi = std::sqrt(b * b - r13sq);
    if (r13sq < a * a) {
        s.lo = std::sqrt(a * a - r13sq);
        s.split = true;
    }
    return s;
}

int panel_count(double omega_t_xi3, double rho_lo, double rho_hi, double seg_len, double feature)
{
    const double dphi = std::abs(omega_t_xi3) * (1.0 / rho_lo - 1.0 / rho_hi);
    int n = 1 + static_cast<int>(dphi / 6.0) + static_cast<int>(seg_len / feature);
    return n < 1 ? 1 : n;
}

} // namespace

double kernel_t0_oracle()
{
    double s = 0.0;
    gl_panels(0.5, 2.0, 24, [&](double r, double w) { s += w * r * r * dyadic_profile(r); });
    return 4.0 * M_PI * s;
}

namespace {

// sup_x |K(t, x)| on a box of the given pad factor
double kernel_sup(double t, double pad, int resolution, int sign, int max_points)
{
    const double box = std::max(pad * (1.0 + t), 64.0); // annulus-resolution floor
    if (resolution > 0 && resolution % 2 != 0)
        throw std::invalid_argument("oscillatory_kernel: resolution must be even");
    SliceGrid g = resolution > 0 ? SliceGrid{box, resolution}
                                 : make_grid(box, 0.35, max_points);
    if (g.box / g.n > 0.5)
        throw std::invalid_argument("oscillatory_kernel: resolution insufficient for requested pad");
    const double dxi = g.dxi();
    const int n = g.n;
    const int kb = static_cast<int>(std::floor(2.0 / dxi));
    if (2 * kb + 1 < 24)
        throw std::invalid_argument("oscillatory_kernel: annulus under-resolved");

    std::vector<cplx> buf(static_cast<std::size_t>(n) * n, cplx(0.0));
    const double sg = sign >= 0 ? 1.0 : -1.0;

    par_for(static_cast<std::size_t>(2 * kb + 1), default_exec(), [&](std::size_t row) {
        const int k1 = static_cast<int>(row) - kb;
        const double xi1 = k1 * dxi;
        for (int k3 = -kb; k3 <= kb; ++k3) {
            const double xi3 = k3 * dxi;
            const double r13sq = xi1 * xi1 + xi3 * xi3;
            const Segments seg = annulus_segments(r13sq, 0.5, 2.0);
            if (seg.empty) continue;
            cplx acc(0.0);
            auto eval = [&](double xi2, double w) {
                const double rho = std::sqrt(r13sq + xi2 * xi2);
                const double amp = dyadic_profile(rho);
                if (amp == 0.0) return;
                const double phase = sg * t * xi3 / rho;
                acc += w * amp * cplx(std::cos(phase), std::sin(phase));
            };
            if (seg.split) {
                const double rlo = std::sqrt(r13sq + seg.lo * seg.lo);
                const int np = panel_count(t * xi3, rlo, 2.0, seg.hi - seg.lo, 0.2);
                gl_panels(seg.lo, seg.hi, np, eval);
                gl_panels(-seg.hi, -seg.lo, np, eval);
            } else {
                const double rlo = std::sqrt(r13sq);
                const int np = panel_count(t * xi3, std::max(rlo, 0.5), 2.0, 2.0 * seg.hi, 0.2);
                gl_panels(-seg.hi, seg.hi, 2 * np, eval);
            }
            buf[static_cast<std::size_t>(wrap_index(k1, n)) * n + wrap_index(k3, n)] = acc;
        }
    });

    ifft2_inplace(buf.data(), n);
    const double scale = dxi * dxi;
    return scale * std::sqrt(par_max(buf.size(), default_exec(),
                                     [&](std::size_t i) { return std::norm(buf[i]); }));
}

} // namespace

std::vector<KernelPoint> oscillatory_kernel(const KernelQuery& q, int sign,
                                            const std::vector<double>& check_pad_at)
{
    if (q.pad_factor < 4.0)
        throw std::invalid_argument("oscillatory_kernel: pad_factor must be >= 4");
    std::vector<KernelPoint> out;
    out.reserve(q.times.size());
    for (double t : q.times) {
        KernelPoint pt;
        pt.t = t;
        pt.sup = kernel_sup(t, q.pad_factor, q.resolution, sign, 16384);
        for (double tc : check_pad_at) {
            if (std::abs(tc - t) <= 1e-12 * (1.0 + std::abs(t))) {
                const double sup2 = kernel_sup(t, 2.0 * q.pad_factor, 0, sign, 16384);
                pt.pad_change = std::abs(sup2 - pt.sup) / std::max(sup2, 1e-300);
            }
        }
        out.push_back(pt);
    }
    return out;
}

double shell_block_l2(const ShellSpec& shell, int block, double t)
{
    const double sj = std::pow(2.0, -shell.scale);
    const double sk = std::pow(2.0, -block);
    const double a = std::pow(2.0, shell.scale - 1);
    const double b = std::pow(2.0, shell.scale + 1);
    double s = 0.0;
    gl_panels(a, b, 48, [&](double rho, double w) {
        const double amp = dyadic_profile(sj * rho) * dyadic_profile(sk * rho);
        if (amp == 0.0) return;
        const double heat = std::exp(-rho * rho * t);
        s += w * rho * rho * amp * amp * heat * heat;
    });
    // |f_hat|^2 carries (1 - mu^2); integral over mu gives 4/3
    const double integral = 2.0 * M_PI * (4.0 / 3.0) * s;
    return std::sqrt(integral / std::pow(2.0 * M_PI, 3));
}

ShellBlockLp shell_block_lp(const ShellSpec& shell, double omega, double t,
                            const std::vector<double>& ps, const SliceParams& par)
{
    const int j = shell.scale;
    const double scale = std::pow(2.0, j);
    const double a = 0.5 * scale, b = 2.0 * scale;
    const double vmax = 1.0 / a; // max |grad (xi3/|xi|)| on the shell
    const double box = std::max(par.pad * (1.0 + vmax * std::abs(omega) * t),
                                par.box_floor / scale);
    SliceGrid g = make_grid(box, par.dx / scale, par.max_points);
    const double dxi = g.dxi();
    const int n = g.n;
    const int kb = static_cast<int>(std::floor(b / dxi));

    ShellBlockLp out;
    out.blocks = {j - 1, j, j + 1};
    out.box = g.box;
    out.points = n;

    // xi2-marginals for all 3 blocks x 3 components in one pass
    struct NodeVal {
        int k1, k3;
        cplx m[3][3]; // [block][component]
    };
    const int rows = 2 * kb + 1;
    std::vector<std::vector<NodeVal>> per_row(rows);

    par_for(static_cast<std::size_t>(rows), default_exec(), [&](std::size_t row) {
        const int k1 = static_cast<int>(row) - kb;
        const double xi1 = k1 * dxi;
        auto& list = per_row[row];
        for (int k3 = -kb; k3 <= kb; ++k3) {
            const double xi3 = k3 * dxi;
            const double r13sq = xi1 * xi1 + xi3 * xi3;
            const Segments seg = annulus_segments(r13sq, a, b);
            if (seg.empty) continue;
            NodeVal nv;
            nv.k1 = k1;
            nv.k3 = k3;
            for (auto& mb : nv.m)
                for (auto& mc : mb) mc = 0.0;
            auto eval = [&](double xi2, double w) {
                const double rho2 = r13sq + xi2 * xi2;
                const double rho = std::sqrt(rho2);
                const double prof = dyadic_profile(rho / scale);
                if (prof == 0.0) return;
                const double heat = std::exp(-rho2 * t);
                const double alpha = omega * t * xi3 / rho;
                const double co = std::cos(alpha), si = std::sin(alpha);
                const double amp = w * heat * prof / rho;
                // cos(a) A - sin(a) B with A = (xi2,-xi1,0),
                // B = xi_hat x A = (xi3 xi1, xi3 xi2, -(xi1^2+xi2^2))/rho
                const double hsq = xi1 * xi1 + xi2 * xi2;
                const double v1 = amp * (co * xi2 - si * xi3 * xi1 / rho);
                const double v2 = amp * (co * (-xi1) - si * xi3 * xi2 / rho);
                const double v3 = amp * (si * hsq / rho);
                for (int bi = 0; bi < 3; ++bi) {
                    const double wk = dyadic_profile(std::pow(2.0, -(j - 1 + bi)) * rho);
                    if (wk == 0.0) continue;
                    nv.m[bi][0] += cplx(0.0, wk * v1);
                    nv.m[bi][1] += cplx(0.0, wk * v2);
                    nv.m[bi][2] += cplx(0.0, wk * v3);
                }
            };
            const double otx = omega * t * xi3;
            if (seg.split) {
                const double rlo = std::sqrt(r13sq + seg.lo * seg.lo);
                const int np = panel_count(otx, rlo, b, seg.hi - seg.lo, 0.2 * scale);
                gl_panels(seg.lo, seg.hi, np, eval);
                gl_panels(-seg.hi, -seg.lo, np, eval);
            } else {
                const int np = panel_count(otx, std::max(std::sqrt(r13sq), a), b,
                                           2.0 * seg.hi, 0.2 * scale);
                gl_panels(-seg.hi, seg.hi, 2 * np, eval);
            }
            list.push_back(nv);
        }
    });

    // per block: 3 component FFTs, accumulate |u|^2, then weighted quadrature
    const std::size_t npts = static_cast<std::size_t>(n) * n;
    std::vector<cplx> buf(npts);
    std::vector<double> mag2(npts);
    const double fld_scale = dxi * dxi / std::pow(2.0 * M_PI, 3);
    const double dx = g.dx();

    for (double p : ps) out.lp[p] = std::vector<double>(3, 0.0);

    for (int bi = 0; bi < 3; ++bi) {
        std::fill(mag2.begin(), mag2.end(), 0.0);
        for (int c = 0; c < 3; ++c) {
            std::fill(buf.begin(), buf.end(), cplx(0.0));
            for (const auto& list : per_row)
                for (const auto& nv : list)
                    buf[static_cast<std::size_t>(wrap_index(nv.k1, n)) * n +
                        wrap_index(nv.k3, n)] = nv.m[bi][c];
            ifft2_inplace(buf.data(), n);
            par_for(npts, default_exec(), [&](std::size_t i) {
                mag2[i] += std::norm(fld_scale * buf[i]);
            });
        }
        for (double p : ps) {
            double val;
            if (std::isinf(p)) {
                val = std::sqrt(par_max(npts, default_exec(),
                                        [&](std::size_t i) { return mag2[i]; }));
            } else {
                const double hp = 0.5 * p;
                const double s = par_sum(npts, default_exec(), [&](std::size_t i) {
                    if (mag2[i] == 0.0) return 0.0;
                    const int i1 = static_cast<int>(i / n);
                    const int w1 = i1 < n / 2 ? i1 : i1 - n;
                    return std::abs(w1) * dx * std::pow(mag2[i], hp);
                });
                val = std::pow(M_PI * s * dx * dx, 1.0 / p);
            }
            out.lp[p][bi] = val;
        }
    }
    return out;
}

} // namespace nsc
