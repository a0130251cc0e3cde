#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lineuler/grid.hpp"
#include "lineuler/model.hpp"

namespace lineuler {

/// The constants tying the profile space to the data space for a fixed mode
/// system: the representation determinant delta, the forward bound m, the
/// inversion bound M and (for compact supports on [a, b]) the forced-solution
/// bound m_prime.
struct RepresentationConstants {
    double delta = 0.0;
    double m = 0.0;
    std::optional<double> M;
    std::optional<double> m_prime;
};

/// A sampled/analytic bracket of a sup norm: `lower` is the max over a sample
/// grid (sound for violating claimed upper bounds), `upper` a triangle
/// inequality bound from profile sups (sound for hypotheses).
struct NormEstimate {
    double lower = 0.0;
    SupBound upper;
};

enum class RateFlag {
    Finite,
    PlusInfinity,  // divergence detected
    MinusInfinity, // identically zero field: log of zero
};

struct GrowthRateResult {
    double nu = 0.0;
    RateFlag flag = RateFlag::Finite;
    std::vector<double> window_slopes; // slopes of the winning component, widest window first
    bool diverged = false;
};

/// Representation determinant of the mode system,
///   delta = (c0 rho0 / (k3 k4)) [ |a1| (k2 k3 k4 + k3 m2 m4 + k4 l2 l3)
///                               + |a2| (k1 k3 k4 + k3 m1 m4 + k4 l1 l3) ].
double compute_delta(const std::array<WaveMode, 4>& modes, const GasParameters& gas);

/// Forward sup bound: data built from profiles below eps stays below eps * m.
double compute_m(const std::array<WaveMode, 4>& modes, const GasParameters& gas);

/// Inversion sup bound: profiles recovered from data below eps stay below
/// eps * M. Throws DegenerateRepresentation when delta vanishes.
double compute_M(const std::array<WaveMode, 4>& modes, const GasParameters& gas);

/// Forced-solution sup bound for amplitudes whose profiles are supported in
/// [a, b]. Throws ResonantMode when a characteristic denominator vanishes.
double compute_m_prime(const std::array<WaveMode, 4>& modes, const GasParameters& gas,
                       double a, double b);

using DataEvaluator = std::function<std::array<double, 4>(double x, double y, double z)>;
using FieldEvaluator = std::function<FieldSample(double x, double y, double z, double t)>;

/// Recovers the unique profile system generating the sampled data under the
/// fixed mode system, by solving the 4x4 representation at points of the Ox
/// axis (branch i samples the data at x = xi / k_i). Requires every k_i != 0
/// and a nonvanishing determinant; returns tabulated profiles over the
/// requested abscissae.
std::array<Profile, 4> invert_representation(const std::array<WaveMode, 4>& modes,
                                             const GasParameters& gas,
                                             const DataEvaluator& data,
                                             std::span<const double> xi_samples);

/// Sup-norm bracket of the scenario's field over the grid at the given times.
/// With times = {0} this is the bracket of the initial data itself. The upper
/// bound combines the branch coefficients with the profile sups and is flagged
/// unbounded as soon as an active branch has an unbounded profile.
NormEstimate sup_norm_estimate(const Scenario& s, const GridSpec& grid,
                               std::span<const double> times);

/// Estimates the exponential growth rate: per component the log of the grid
/// sup is fitted over nested trailing windows of the time schedule, and the
/// rate is the latest-window slope maximized over components. Divergence is
/// flagged when the window slopes keep growing by more than 10% each, or when
/// the field overflows to infinity inside the trailing half. An identically
/// zero field reports MinusInfinity.
///
/// The estimate is sample-based by necessity: the profile systems feeding the
/// evaluators carry a sup-convergence structure rather than a norm, and no a
/// priori bound ties small data to small rates (data of any size admits
/// solutions of any rate). Whatever the schedule and grid resolve is what is
/// reported.
GrowthRateResult growth_rate_estimate(const FieldEvaluator& field, const GridSpec& grid,
                                      std::span<const double> t_schedule);

} // namespace lineuler
