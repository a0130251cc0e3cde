#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "lineuler/errors.hpp"

namespace lineuler {

/// Background state of the uniform mean flow the Euler system is linearized at.
/// U0, rho0 and c0 are required. The thermodynamic extras are optional and are
/// only checked for mutual consistency when supplied (c0^2 = p0/rho0 and
/// R = cp - cv, both within 1e-10 relative).
struct GasParameters {
    double U0 = 0.0;   // mean-flow speed along Ox [m/s], > 0
    double rho0 = 0.0; // density [kg/m^3], > 0
    double c0 = 0.0;   // isentropic sound speed [m/s], > 0
    std::optional<double> p0; // pressure [Pa]
    std::optional<double> T0; // temperature [K]
    std::optional<double> R;  // specific gas constant [J/(kg K)]
    std::optional<double> cp;
    std::optional<double> cv;

    void validate() const;

    double c0_rho0() const { return c0 * rho0; }
};

/// One (k, l, m) wavenumber triple. The branch index (1..4) identifies which
/// profile f_i the mode drives; branches 3 and 4 require k != 0.
struct WaveMode {
    double k = 0.0;
    double l = 0.0;
    double m = 0.0;
    int branch = 1;

    double wavenorm() const { return std::sqrt(k * k + l * l + m * m); }
    void validate() const;
};

/// Sup of |f| over the real line; `unbounded` set when the sup is +infinity.
struct SupBound {
    double value = 0.0;
    bool unbounded = false;
};

/// Support descriptor: a compact interval [lo, hi] or the whole line.
struct Support {
    bool compact = false;
    double lo = 0.0;
    double hi = 0.0;
};

/// A 1D scalar profile from a closed-form catalog, or tabulated data with
/// linear interpolation. Every variant reports pointwise value, derivative
/// (where defined), an exact sup over R (or an unbounded flag) and a support
/// descriptor. All variants carry a scalar factor so amplitudes like
/// delta * sin(xi) stay inside the catalog.
class Profile {
public:
    enum class Kind {
        Zero,
        Sin,
        Cos,
        Exp,          // exp(a * xi)
        SquareExp,    // exp(xi^2)
        SmoothBump,   // mollifier: 1 on |xi| <= r, 0 on |xi| >= r + 1, smooth between
        TruncatedSin, // sin(xi) restricted to [a, b]; not C^1 at the cut points
        Tabulated,    // sorted (xi, value) knots, linear interpolation, zero outside
    };

    Profile() : kind_(Kind::Zero) {}

    static Profile zero();
    static Profile sine(double scale = 1.0);
    static Profile cosine(double scale = 1.0);
    static Profile exponential(double a, double scale = 1.0);
    static Profile square_exponential(double scale = 1.0);
    static Profile smooth_bump(double r, double scale = 1.0);
    static Profile truncated_sin(double a, double b, double scale = 1.0);
    static Profile tabulated(std::vector<std::pair<double, double>> knots, double scale = 1.0);

    double value(double xi) const;

    /// Pointwise derivative. Throws NonDifferentiable at the TruncatedSin cut
    /// points; for Tabulated the one-sided slope of the right segment is used
    /// at interior knots.
    double derivative(double xi) const;

    SupBound sup() const;
    Support support() const;

    /// False for TruncatedSin and Tabulated, which break the continuous
    /// differentiability hypothesis of the explicit solution family.
    bool continuously_differentiable() const;

    /// Abscissae where the profile is not smooth (cut points, knots).
    std::vector<double> kink_points() const;

    bool is_zero() const { return kind_ == Kind::Zero || scale_ == 0.0; }

    Kind kind() const { return kind_; }
    double scale() const { return scale_; }
    double exp_rate() const { return a_; }
    double bump_radius() const { return r_; }
    double cut_lo() const { return a_; }
    double cut_hi() const { return b_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

private:
    Kind kind_;
    double scale_ = 1.0;
    double a_ = 0.0; // Exp rate, or TruncatedSin left cut
    double b_ = 0.0; // TruncatedSin right cut
    double r_ = 0.0; // SmoothBump plateau radius
    std::vector<std::pair<double, double>> knots_;
};

struct Forcing {
    double omega_f = 0.0; // angular frequency of the time harmonic source [rad/s]
};

/// The unit of input for all evaluators: gas state, four modes (branches 1..4
/// in order), four profiles and an optional forcing frequency.
struct Scenario {
    GasParameters gas;
    std::array<WaveMode, 4> modes{};
    std::array<Profile, 4> profiles{};
    std::optional<Forcing> forcing;

    void validate() const;
    bool forced() const { return forcing.has_value(); }

    const WaveMode& mode(int branch) const { return modes[static_cast<std::size_t>(branch - 1)]; }
    const Profile& profile(int branch) const { return profiles[static_cast<std::size_t>(branch - 1)]; }

    /// True when the branch contributes anything to the field.
    bool branch_active(int branch) const { return !profile(branch).is_zero(); }
};

/// Velocity and pressure perturbations at one space-time point.
struct FieldSample {
    double vx = 0.0;
    double vy = 0.0;
    double vz = 0.0;
    double p = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;

    double max_abs() const;
};

/// The four propagation speeds appearing in the solution arguments:
///   c1 = k1 U0 - c0 |alpha1|,  c2 = k2 U0 + c0 |alpha2|,
///   c3 = k3 U0,                c4 = k4 U0.
std::array<double, 4> characteristic_speeds(const Scenario& s);

} // namespace lineuler
