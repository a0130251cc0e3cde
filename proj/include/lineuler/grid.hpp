#pragma once

#include <array>
#include <vector>

#include "lineuler/errors.hpp"

namespace lineuler {

/// A rectangular sampling grid over a cube [lo, hi]^3. The default covers one
/// period of the unit-wavenumber scenarios.
struct GridSpec {
    std::array<int, 3> n{21, 21, 21};
    double lo = -6.283185307179586;
    double hi = 6.283185307179586;

    void validate() const;

    /// Inclusive sample coordinates along one axis; a single point sits at the
    /// interval midpoint.
    std::vector<double> axis(int dim) const;

    struct Point {
        double x, y, z;
    };
    std::vector<Point> points() const;
};

} // namespace lineuler
