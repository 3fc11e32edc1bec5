#pragma once

#include <array>
#include <map>
#include <string>

#include "nsc/continuum.hpp"
#include "nsc/fit.hpp"

namespace nsc {

// Time table of the continuum shell norms: block L^p values of
// T_{omega'}(t) f_0 (f_0 = scale-0 swirl shell) on a log-spaced grid.
struct ShellNormTable {
    double omega_prime = 0.0;
    std::vector<double> ts;
    // p -> per-block (scale-1, scale, scale+1) series over ts
    std::map<double, std::array<std::vector<double>, 3>> block_lp;
};

ShellNormTable build_shell_table(int scale, double omega, const std::vector<double>& ps,
                                 double horizon, int samples, const SliceParams& par);

// L^theta(0,horizon; B^s_{p,q}) assembled from a table (blocks carry the
// absolute dyadic index scale-1..scale+1)
double table_mixed_norm(const ShellNormTable& tab, int scale, double s, double p, double q,
                        double theta);

// ||f_scale||_{B^s_{2,q}} (1D radial quadrature)
double shell_besov_b2q(int scale, double s, double q);

// process-wide cache of scale-0 tables keyed by omega'
struct TableKey {
    long long omega_q;  // round(2^20 * log2(1+omega'))
    int samples;
    long long pad_q, dx_q, horizon_q;
    bool operator<(const TableKey& o) const;
};
const ShellNormTable& cached_table(double omega_prime, const std::vector<double>& ps,
                                   double horizon, int samples, const SliceParams& par);

// ---- Strichartz sweep ---------------------------------------------------

struct SweepSpec {
    std::vector<double> omegas; // strictly increasing, positive
    std::vector<int> scales;    // dyadic data family f_j
    double s = 0.6, p = 4.0, q = 2.0, theta = 2.2;
    double horizon = 16.0;
    int time_samples = 32;
    SliceParams slice;
    double omega_cap = 16.0;   // largest omega' evaluated directly
    bool spot_check = true;
    bool pad_check = true;
    std::vector<double> extra_lp; // tabulate extra L^p exponents for reuse
};

// empty <=> spec satisfies the admissibility constraints
// 0 <= s < 3/p, 2 < p < 6, 3/4 - 3/(2p) <= 1/theta < min{1/2, 1-2/p, 1/q}
std::vector<std::string> validate_strichartz(const SweepSpec& spec);

struct StrichartzRow {
    double omega = 0.0;
    double value = 0.0; // max over the scale family of the normalized norm
    int winner_scale = 0;
    bool extrapolated = false; // winner relied on an extrapolated table entry
};

struct StrichartzResult {
    std::vector<StrichartzRow> rows;
    FitResult fit;
    double predicted_exponent = 0.0; // -1/theta + 3/4 - 3/(2p)
    std::map<double, double> n0;     // measured scale-0 curve (omega' -> norm)
    double spot_direct = -1.0, spot_assembled = -1.0;
    double pad_change = -1.0;
};

StrichartzResult strichartz_sweep(const SweepSpec& spec);

// ---- critical vanishing -------------------------------------------------

struct VanishingResult {
    std::vector<std::pair<double, double>> series; // (omega, L4(0,T;B^{1/2}_{3,q}))
    double final_over_first = 0.0;
    bool monotone_tail = false;
    bool consistent = false; // final < 10% of first and eventually monotone
};

// ||T_Om(.) f_scale||_{L^4(0,horizon; B^{1/2}_{3,q})} along the omega sweep;
// q < 4 required. amplitude scales the datum (0 gives the zero series).
VanishingResult vanishing_limit_check(int scale, double q, const std::vector<double>& omegas,
                                      double horizon, int samples, const SliceParams& par,
                                      double omega_cap, double amplitude = 1.0);

} // namespace nsc
