#pragma once

#include <array>

#include "lineuler/model.hpp"
#include "lineuler/quadrature.hpp"

namespace lineuler {

/// Which route produced a branch's Duhamel integral.
enum class BranchPath {
    Inactive,   // zero profile, no contribution
    ClosedForm, // analytic antiderivative
    Quadrature, // adaptive integration
};

/// Metadata attached to one forced evaluation: per-branch dispatch route and
/// whether any active profile violates the C^1 hypothesis of the explicit
/// solution family (TruncatedSin, Tabulated).
struct ForcedEvalInfo {
    std::array<BranchPath, 4> path{BranchPath::Inactive, BranchPath::Inactive,
                                   BranchPath::Inactive, BranchPath::Inactive};
    bool non_c1_profile = false;
};

/// The initial data (F, G, H, P) induced by a scenario at one point:
///   F = k1 f1(s1) + k2 f2(s2) + (l3/k3) f3(s3) + (m4/k4) f4(s4)
///   G = l1 f1(s1) + l2 f2(s2) - f3(s3)
///   H = m1 f1(s1) + m2 f2(s2) - f4(s4)
///   P = -c0 rho0 |a1| f1(s1) + c0 rho0 |a2| f2(s2)
/// with s_i = k_i x + l_i y + m_i z. P carries units of Pa.
std::array<double, 4> initial_data(const Scenario& s, double x, double y, double z);

/// The explicit instantaneous solution: each branch translated along its
/// characteristic, s_i - c_i t, with the same coefficients as the initial
/// data. At t = 0 this reproduces initial_data through the identical
/// arithmetic path.
FieldSample evaluate_instant(const Scenario& s, double x, double y, double z, double t);

/// The forced (Duhamel) solution driven by the time harmonic source
/// h(t) A sin(omega_f t), identically zero for t <= 0. Branches with Sin,
/// Cos, Exp or TruncatedSin profiles use analytic antiderivatives; the rest
/// fall back to adaptive quadrature restricted to the support window. The
/// optional info records which route each branch took.
FieldSample evaluate_forced(const Scenario& s, double x, double y, double z, double t,
                            const QuadratureSpec& quad = {},
                            ForcedEvalInfo* info = nullptr);

/// The resonant single-branch plane wave closed form: requires a scenario
/// whose only active branch is 1 with a Sin profile and omega_f equal to the
/// branch-1 characteristic speed. The common factor is
///   (1/2) cos(s - w t) [t - sin(2 w t)/(2 w)] + sin(s - w t) sin^2(w t)/(2 w).
FieldSample closed_form_resonant(const Scenario& s, double x, double y, double z, double t);

/// The exponentially modulated forced closed form: requires a scenario whose
/// only active branch is 3 with an Exp profile. With mu = -a k3 U0 the time
/// factor is exp(mu t) * [w - exp(-mu t)(mu sin(w t) + w cos(w t))] / (mu^2 + w^2).
FieldSample closed_form_exponential_forced(const Scenario& s, double x, double y, double z,
                                           double t);

/// One branch's Duhamel integral, integral of f(s - c (t - tau)) sin(w tau)
/// over [0, t], by adaptive quadrature only (support-clipped, never a closed
/// form). This is the ground-truth route the closed forms are checked against.
double branch_integral_quadrature(const Profile& f, double s, double c, double omega_f,
                                  double t, const QuadratureSpec& quad);

/// Per-branch phase arguments and field coefficients of the explicit family.
struct BranchTerm {
    double s = 0.0;                 // k x + l y + m z
    double c = 0.0;                 // characteristic speed
    std::array<double, 4> coeff{};  // contribution to (vx, vy, vz, p)
};

std::array<BranchTerm, 4> branch_terms(const Scenario& s, double x, double y, double z);

} // namespace lineuler
