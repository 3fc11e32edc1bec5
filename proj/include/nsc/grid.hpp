#pragma once

#include <cstddef>
#include <vector>

namespace nsc {

// Periodic cubic grid. Wavevector of integer index k is (2*pi/L)*k with
// k components in [-n/2, n/2), stored in FFT order (0..n/2-1, -n/2..-1).
struct Grid3 {
    int n = 0;       // points per axis, even, >= 8
    double length = 0.0; // physical period L

    Grid3() = default;
    Grid3(int n_per_axis, double box_length);

    std::size_t points() const { return static_cast<std::size_t>(n) * n * n; }
    double cell() const { return length / n; }           // grid spacing
    double cell_volume() const { double h = cell(); return h * h * h; }
    double volume() const { return length * length * length; }
    double dxi() const;                                  // 2*pi/L

    // signed integer frequency for storage index i
    int k_of(int i) const { return i < n / 2 ? i : i - n; }
    double xi_of(int i) const { return dxi() * k_of(i); }

    // per-axis wavevector table in storage order
    const std::vector<double>& xi() const { return xi_table; }
    double xi_max() const; // largest resolved |xi| (corner mode)
    double xi_min() const; // smallest nonzero |xi|

    bool operator==(const Grid3& o) const { return n == o.n && length == o.length; }
    bool operator!=(const Grid3& o) const { return !(*this == o); }

private:
    std::vector<double> xi_table;
};

} // namespace nsc
