#include "nsc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nsc {

Grid3::Grid3(int n_per_axis, double box_length)
    : n(n_per_axis), length(box_length)
{
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("Grid3: n_per_axis must be even and >= 8");
    if (!(length > 0.0))
        throw std::invalid_argument("Grid3: box_length must be positive");
    xi_table.resize(n);
    for (int i = 0; i < n; ++i) xi_table[i] = xi_of(i);
}

double Grid3::dxi() const { return 2.0 * M_PI / length; }

double Grid3::xi_max() const
{
    const double m = dxi() * (n / 2); // -n/2 mode has the largest magnitude
    return std::sqrt(3.0) * m;
}

double Grid3::xi_min() const { return dxi(); }

} // namespace nsc
