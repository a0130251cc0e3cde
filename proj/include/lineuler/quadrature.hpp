#pragma once

#include <functional>

#include "lineuler/errors.hpp"

namespace lineuler {

/// Error control for the adaptive integration of the Duhamel integrals.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 10000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod (7, 15) integration of f over [a, b].
/// The worst panel is bisected until the accumulated error estimate meets the
/// tolerances. `initial_panels` pre-splits the interval, which oscillatory
/// integrands need so no oscillation is skipped by the coarse first pass.
/// Throws IntegrationFailure (carrying the worst subinterval) when the panel
/// budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec = {},
                                    int initial_panels = 1);

} // namespace lineuler
