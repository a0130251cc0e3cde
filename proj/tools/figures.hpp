#pragma once

#include <string>

#include "lineuler/model.hpp"

namespace lineuler::cli {

/// One of the reproducible illustration data sets: time series of vx or p at
/// a point of a plane (1a-1c, 2a-2c), or (t, x) sweeps along the Ox axis
/// (3a/3b unstable case, 4a/4b compact-support case).
struct FigureSpec {
    std::string id;        // 1a 1b 1c 2a 2b 2c 3a 3b 4a 4b
    double t_max = 0.0;    // 0 -> per-figure default (3600 for 1/2, 600 for 3/4)
    double dt = 0.0;       // 0 -> per-figure default (0.01 for 1/2, 1.0 for 3/4)
    double x_lo = -20.0;   // Ox range for figures 3/4
    double x_hi = 20.0;
    double dx = 0.1;

    void validate() const;
};

/// The resonant plane-wave scenario the illustrations are built on:
/// U0 = 80 m/s, c0 = 345 m/s, rho0 = 1.20 kg/m^3, all modes (1,1,1),
/// branch-1 sin amplitude, omega_f = U0 - c0 sqrt(3).
Scenario illustration_scenario(bool compact_support);

/// Writes figure_<id>.csv (and optionally figure_<id>.svg) into out_dir;
/// returns the CSV path.
std::string write_figure(const FigureSpec& spec, const std::string& out_dir, bool svg);

} // namespace lineuler::cli
