#pragma once

#include <vector>

#include "nsc/field.hpp"

namespace nsc {

// Time samples of a spectral field, all on the same grid, increasing times
// starting at 0.
struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> fields;
    double omega = 0.0;

    std::size_t size() const { return times.size(); }
    double horizon() const { return times.empty() ? 0.0 : times.back(); }
    void push(double t, SpectralField f)
    {
        times.push_back(t);
        fields.push_back(std::move(f));
    }
};

} // namespace nsc
