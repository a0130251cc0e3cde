#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "lineuler/model.hpp"

namespace lineuler {

using Complex = std::complex<double>;
using ComplexVec4 = std::array<Complex, 4>;

/// A coefficient 4-vector (F_hat, G_hat, H_hat, P_hat) at one wavenumber
/// alpha = (k, l, m).
struct SpectralCoefficients {
    std::array<double, 3> alpha{};
    ComplexVec4 values{};

    double norm() const {
        return std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
    }
};

/// The 4x4 coefficient propagator at fixed (alpha, t). Its spectrum is
/// exp(-i k U0 t) twice and exp(-i (k U0 -+ c0 |alpha|) t), all on the unit
/// circle.
struct PropagatorMatrix {
    std::array<ComplexVec4, 4> rows{};

    ComplexVec4 apply(const ComplexVec4& v) const;
    const Complex& operator()(int i, int j) const {
        return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

struct EigenPair {
    Complex lambda;
    ComplexVec4 vector;
};

/// Builds the propagator. alpha = 0 is excluded: the formula divides by
/// |alpha| and the zero coefficient evolves trivially anyway.
PropagatorMatrix propagator_matrix(const std::array<double, 3>& alpha,
                                   const GasParameters& gas, double t);

/// The four analytic eigenpairs of the propagator: two transverse velocity
/// modes riding the mean flow and the two acoustic modes (alpha/|alpha|,
/// +- rho0 c0).
std::array<EigenPair, 4> propagator_eigenpairs(const std::array<double, 3>& alpha,
                                               const GasParameters& gas, double t);

/// Evolves an initial coefficient vector to time t.
ComplexVec4 propagate(const SpectralCoefficients& coeffs, const GasParameters& gas, double t);

/// Evolves the forced coefficient problem with source h(t) exp(i omega_f t) A:
/// each propagator carrier exp(-i beta t) becomes the Duhamel factor
/// (exp(i omega_f t) - exp(-i beta t)) / (i (omega_f + beta)), with a series
/// limit t exp(i omega_f t) (1 - i d t / 2 - (d t)^2 / 6) substituted when a
/// denominator d falls below 1e-8. Zero for t <= 0.
ComplexVec4 propagate_forced(const SpectralCoefficients& amplitude, const GasParameters& gas,
                             double omega_f, double t);

using SpectralTrajectory = std::function<ComplexVec4(double t)>;

/// Central-difference check of the coefficient ODEs along a trajectory:
/// returns the max component magnitude of d/dt traj minus the right side
/// (plus the harmonic source when omega_f is supplied; coeffs then carries
/// the amplitude). Requires t - h > 0.
double ode_residual(const SpectralTrajectory& traj, const SpectralCoefficients& coeffs,
                    const GasParameters& gas, std::optional<double> omega_f, double t, double h);

struct ResonanceRoot {
    enum class Branch { Advective, Minus, Plus };
    Branch branch;
    double radius = 0.0;    // positive root along the ray, 0 when whole_ray
    bool whole_ray = false; // the denominator vanishes identically on the ray
};

/// Solves each forced-propagator denominator for zero along alpha = r *
/// direction, r > 0. Returns the real positive roots per branch; a ray on
/// which a denominator vanishes identically is flagged whole_ray.
std::vector<ResonanceRoot> resonance_locus(const GasParameters& gas, double omega_f,
                                           const std::array<double, 3>& direction);

/// Empirical sweep of the 16 propagator multiplier functions along rays in
/// wavenumber space: magnitudes and radial finite-difference gradients at
/// each radius, extrapolated small-radius limits per ray, and flags for
/// cross-ray limit disagreement (> 1e-6) or a monotone unbounded magnitude
/// trend toward large radii.
struct MultiplierProbeReport {
    struct Sample {
        double radius = 0.0;
        double magnitude = 0.0;
        double gradient = 0.0;
    };
    struct RayTrace {
        std::vector<Sample> samples; // ascending radius
        Complex limit{};             // extrapolated value at radius -> 0
    };
    struct Entry {
        int row = 0;
        int col = 0;
        std::vector<RayTrace> per_ray;
        bool limit_disagreement = false;
        bool unbounded_trend = false;
    };

    double t = 0.0;
    std::vector<std::array<double, 3>> rays;
    std::vector<double> radii;
    std::vector<Entry> entries; // all 16, row-major
    bool any_limit_disagreement = false;
    bool any_unbounded_trend = false;
};

MultiplierProbeReport multiplier_probe(const GasParameters& gas, double t,
                                       const std::vector<std::array<double, 3>>& rays,
                                       std::vector<double> radii);

} // namespace lineuler
