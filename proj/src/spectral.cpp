#include "lineuler/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace lineuler {

ComplexVec4 PropagatorMatrix::apply(const ComplexVec4& v) const {
    ComplexVec4 out{};
    for (int i = 0; i < 4; ++i) {
        Complex acc = 0.0;
        for (int j = 0; j < 4; ++j)
            acc += rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

namespace {

constexpr Complex I{0.0, 1.0};

void require_nonzero_alpha(const std::array<double, 3>& alpha) {
    if (alpha[0] == 0.0 && alpha[1] == 0.0 && alpha[2] == 0.0)
        fail(ErrorCode::ExcludedWavenumber,
             "alpha = 0 is excluded from the propagator domain");
}

// The three carrier phases beta of the propagator: advective k U0, and the
// acoustic pair k U0 -+ c0 |alpha|.
struct Carriers {
    Complex adv, minus, plus;
};

// Assembles the propagator entries from the three carriers. Written so that
// carriers identically 1 (t = 0) gives the exact identity and carriers 0
// (forced problem at t = 0) gives the exact zero matrix.
PropagatorMatrix assemble(const std::array<double, 3>& alpha, const GasParameters& gas,
                          const Carriers& c) {
    const double n2 = alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2];
    const double n = std::sqrt(n2);
    const std::array<double, 3> d = {alpha[0] / n, alpha[1] / n, alpha[2] / n};
    const double cr = gas.c0_rho0();

    const Complex avg = 0.5 * (c.minus + c.plus);
    const Complex dif = 0.5 * (c.plus - c.minus);

    PropagatorMatrix M;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double dd = d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)];
            Complex entry = dd * (avg - c.adv);
            if (i == j) entry += c.adv;
            M.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry;
        }
        M.rows[static_cast<std::size_t>(i)][3] = d[static_cast<std::size_t>(i)] * dif / cr;
        M.rows[3][static_cast<std::size_t>(i)] = cr * d[static_cast<std::size_t>(i)] * dif;
    }
    M.rows[3][3] = avg;
    return M;
}

Carriers evolution_carriers(const std::array<double, 3>& alpha, const GasParameters& gas,
                            double t) {
    const double n = std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
    const double adv = alpha[0] * gas.U0;
    return {
        std::exp(-I * (adv * t)),
        std::exp(-I * ((adv - gas.c0 * n) * t)),
        std::exp(-I * ((adv + gas.c0 * n) * t)),
    };
}

// Duhamel factor (exp(i w t) - exp(-i beta t)) / (i (w + beta)); near the
// removable singularity d = w + beta -> 0 a second-order series in d is used.
// The direct branch is evaluated in the factored form
//   exp(i w t) (1 - exp(-i d t)) / (i d),
// whose small phase d t avoids the cancellation of the two large-phase
// exponentials that otherwise dominates the error near the singularity.
Complex duhamel_factor(double beta, double omega_f, double t) {
    const double d = omega_f + beta;
    const Complex harmonic = std::exp(I * (omega_f * t));
    const double u = d * t;
    if (std::abs(d) < 1e-8)
        return t * harmonic * Complex{1.0 - u * u / 6.0, -0.5 * u};
    const double half = std::sin(0.5 * u);
    const Complex one_minus_exp{2.0 * half * half, std::sin(u)}; // 1 - e^{-iut}
    return harmonic * one_minus_exp / (I * d);
}

} // namespace

PropagatorMatrix propagator_matrix(const std::array<double, 3>& alpha,
                                   const GasParameters& gas, double t) {
    require_nonzero_alpha(alpha);
    return assemble(alpha, gas, evolution_carriers(alpha, gas, t));
}

std::array<EigenPair, 4> propagator_eigenpairs(const std::array<double, 3>& alpha,
                                               const GasParameters& gas, double t) {
    require_nonzero_alpha(alpha);
    const Carriers c = evolution_carriers(alpha, gas, t);
    const double n = std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
    const std::array<double, 3> d = {alpha[0] / n, alpha[1] / n, alpha[2] / n};

    // two real unit vectors orthogonal to d
    std::array<double, 3> seed = std::abs(d[0]) < 0.9 ? std::array<double, 3>{1.0, 0.0, 0.0}
                                                      : std::array<double, 3>{0.0, 1.0, 0.0};
    std::array<double, 3> u1 = {d[1] * seed[2] - d[2] * seed[1],
                                d[2] * seed[0] - d[0] * seed[2],
                                d[0] * seed[1] - d[1] * seed[0]};
    const double u1n = std::sqrt(u1[0] * u1[0] + u1[1] * u1[1] + u1[2] * u1[2]);
    for (double& v : u1) v /= u1n;
    const std::array<double, 3> u2 = {d[1] * u1[2] - d[2] * u1[1],
                                      d[2] * u1[0] - d[0] * u1[2],
                                      d[0] * u1[1] - d[1] * u1[0]};

    const double cr = gas.c0_rho0();
    return {
        EigenPair{c.adv, {u1[0], u1[1], u1[2], 0.0}},
        EigenPair{c.adv, {u2[0], u2[1], u2[2], 0.0}},
        EigenPair{c.plus, {d[0], d[1], d[2], cr}},
        EigenPair{c.minus, {d[0], d[1], d[2], -cr}},
    };
}

ComplexVec4 propagate(const SpectralCoefficients& coeffs, const GasParameters& gas, double t) {
    return propagator_matrix(coeffs.alpha, gas, t).apply(coeffs.values);
}

ComplexVec4 propagate_forced(const SpectralCoefficients& amplitude, const GasParameters& gas,
                             double omega_f, double t) {
    require_nonzero_alpha(amplitude.alpha);
    if (t <= 0.0) return ComplexVec4{};
    const double n = amplitude.norm();
    const double adv = amplitude.alpha[0] * gas.U0;
    const Carriers c = {
        duhamel_factor(adv, omega_f, t),
        duhamel_factor(adv - gas.c0 * n, omega_f, t),
        duhamel_factor(adv + gas.c0 * n, omega_f, t),
    };
    return assemble(amplitude.alpha, gas, c).apply(amplitude.values);
}

double ode_residual(const SpectralTrajectory& traj, const SpectralCoefficients& coeffs,
                    const GasParameters& gas, std::optional<double> omega_f, double t, double h) {
    if (!(h > 0.0)) fail(ErrorCode::Precondition, "ode residual requires h > 0");
    if (!(t - h > 0.0)) fail(ErrorCode::Precondition, "ode residual requires t - h > 0");

    const ComplexVec4 fw = traj(t + h);
    const ComplexVec4 bw = traj(t - h);
    const ComplexVec4 mid = traj(t);

    const double k = coeffs.alpha[0];
    const double l = coeffs.alpha[1];
    const double m = coeffs.alpha[2];
    const double cr2 = gas.rho0 * gas.c0 * gas.c0;

    ComplexVec4 rhs = {
        -I * (k * gas.U0) * mid[0] - I * (k / gas.rho0) * mid[3],
        -I * (k * gas.U0) * mid[1] - I * (l / gas.rho0) * mid[3],
        -I * (k * gas.U0) * mid[2] - I * (m / gas.rho0) * mid[3],
        -I * cr2 * (k * mid[0] + l * mid[1] + m * mid[2]) - I * (k * gas.U0) * mid[3],
    };
    if (omega_f) {
        const Complex src = std::exp(I * (*omega_f * t));
        for (int i = 0; i < 4; ++i)
            rhs[static_cast<std::size_t>(i)] += src * coeffs.values[static_cast<std::size_t>(i)];
    }

    double res = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Complex dt = (fw[static_cast<std::size_t>(i)] - bw[static_cast<std::size_t>(i)]) /
                           (2.0 * h);
        res = std::max(res, std::abs(dt - rhs[static_cast<std::size_t>(i)]));
    }
    return res;
}

std::vector<ResonanceRoot> resonance_locus(const GasParameters& gas, double omega_f,
                                           const std::array<double, 3>& direction) {
    const double dn = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                direction[2] * direction[2]);
    if (std::abs(dn - 1.0) > 1e-6)
        fail(ErrorCode::Precondition, "resonance locus direction must be a unit vector");

    // along alpha = r * direction the denominators are omega_f + r * g with
    // g in { d1 U0, d1 U0 - c0, d1 U0 + c0 }
    const std::array<std::pair<ResonanceRoot::Branch, double>, 3> gens = {{
        {ResonanceRoot::Branch::Advective, direction[0] * gas.U0},
        {ResonanceRoot::Branch::Minus, direction[0] * gas.U0 - gas.c0},
        {ResonanceRoot::Branch::Plus, direction[0] * gas.U0 + gas.c0},
    }};

    std::vector<ResonanceRoot> roots;
    for (const auto& [branch, g] : gens) {
        if (g == 0.0) {
            if (omega_f == 0.0) roots.push_back({branch, 0.0, true});
            continue;
        }
        const double r = -omega_f / g;
        if (r > 0.0) roots.push_back({branch, r, false});
    }
    return roots;
}

MultiplierProbeReport multiplier_probe(const GasParameters& gas, double t,
                                       const std::vector<std::array<double, 3>>& rays,
                                       std::vector<double> radii) {
    if (rays.empty()) fail(ErrorCode::InvalidInput, "multiplier probe needs at least one ray");
    for (double r : radii)
        if (!(r > 0.0)) fail(ErrorCode::Precondition, "probe radii must be positive");
    std::sort(radii.begin(), radii.end());
    if (radii.size() < 2)
        fail(ErrorCode::Precondition, "multiplier probe needs at least two radii");

    MultiplierProbeReport report;
    report.t = t;
    report.rays = rays;
    report.radii = radii;
    report.entries.resize(16);

    auto matrix_at = [&](const std::array<double, 3>& ray, double r) {
        return propagator_matrix({r * ray[0], r * ray[1], r * ray[2]}, gas, t);
    };

    for (int e = 0; e < 16; ++e) {
        auto& entry = report.entries[static_cast<std::size_t>(e)];
        entry.row = e / 4;
        entry.col = e % 4;
        entry.per_ray.resize(rays.size());
    }

    for (std::size_t ri = 0; ri < rays.size(); ++ri) {
        std::vector<PropagatorMatrix> mats;
        mats.reserve(radii.size());
        for (double r : radii) mats.push_back(matrix_at(rays[ri], r));

        for (int e = 0; e < 16; ++e) {
            auto& trace = report.entries[static_cast<std::size_t>(e)].per_ray[ri];
            trace.samples.reserve(radii.size());
            for (std::size_t j = 0; j < radii.size(); ++j) {
                const double r = radii[j];
                const double eps = 1e-6 * r;
                const Complex up = matrix_at(rays[ri], r + eps)(e / 4, e % 4);
                const Complex dn = matrix_at(rays[ri], r - eps)(e / 4, e % 4);
                trace.samples.push_back({r, std::abs(mats[j](e / 4, e % 4)),
                                         std::abs(up - dn) / (2.0 * eps)});
            }
            // polynomial extrapolation to r = 0 through the smallest radii
            // kills the low-order phase terms of the limit estimate
            if (radii.size() >= 3) {
                Complex limit = 0.0;
                for (int i = 0; i < 3; ++i) {
                    double weight = 1.0;
                    for (int j = 0; j < 3; ++j)
                        if (j != i) weight *= radii[static_cast<std::size_t>(j)] /
                                              (radii[static_cast<std::size_t>(j)] -
                                               radii[static_cast<std::size_t>(i)]);
                    limit += weight * mats[static_cast<std::size_t>(i)](e / 4, e % 4);
                }
                trace.limit = limit;
            } else {
                const Complex v1 = mats[0](e / 4, e % 4);
                const Complex v2 = mats[1](e / 4, e % 4);
                trace.limit = v1 + (v1 - v2) * (radii[0] / (radii[1] - radii[0]));
            }
        }
    }

    for (auto& entry : report.entries) {
        for (std::size_t a = 0; a < entry.per_ray.size(); ++a)
            for (std::size_t b = a + 1; b < entry.per_ray.size(); ++b)
                if (std::abs(entry.per_ray[a].limit - entry.per_ray[b].limit) > 1e-6)
                    entry.limit_disagreement = true;
        for (const auto& trace : entry.per_ray) {
            const std::size_t nr = trace.samples.size();
            if (nr < 4) continue;
            const double top = trace.samples[nr - 1].magnitude;
            const bool increasing = top > trace.samples[nr - 2].magnitude &&
                                    trace.samples[nr - 2].magnitude >
                                        trace.samples[nr - 3].magnitude;
            if (increasing && top > 10.0 * (1.0 + trace.samples[nr / 2].magnitude))
                entry.unbounded_trend = true;
        }
        report.any_limit_disagreement |= entry.limit_disagreement;
        report.any_unbounded_trend |= entry.unbounded_trend;
    }
    return report;
}

} // namespace lineuler
