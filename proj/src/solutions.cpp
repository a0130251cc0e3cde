#include "lineuler/solutions.hpp"

#include <algorithm>
#include <cmath>

namespace lineuler {

std::array<BranchTerm, 4> branch_terms(const Scenario& s, double x, double y, double z) {
    const auto speeds = characteristic_speeds(s);
    const double cr = s.gas.c0_rho0();
    std::array<BranchTerm, 4> terms;
    for (int i = 0; i < 4; ++i) {
        const WaveMode& mode = s.modes[static_cast<std::size_t>(i)];
        terms[static_cast<std::size_t>(i)].s = mode.k * x + mode.l * y + mode.m * z;
        terms[static_cast<std::size_t>(i)].c = speeds[static_cast<std::size_t>(i)];
    }
    terms[0].coeff = {s.modes[0].k, s.modes[0].l, s.modes[0].m, -cr * s.modes[0].wavenorm()};
    terms[1].coeff = {s.modes[1].k, s.modes[1].l, s.modes[1].m, cr * s.modes[1].wavenorm()};
    terms[2].coeff = {s.modes[2].l / s.modes[2].k, -1.0, 0.0, 0.0};
    terms[3].coeff = {s.modes[3].m / s.modes[3].k, 0.0, -1.0, 0.0};
    return terms;
}

std::array<double, 4> initial_data(const Scenario& s, double x, double y, double z) {
    const FieldSample f = evaluate_instant(s, x, y, z, 0.0);
    return {f.vx, f.vy, f.vz, f.p};
}

FieldSample evaluate_instant(const Scenario& s, double x, double y, double z, double t) {
    const auto terms = branch_terms(s, x, y, z);
    FieldSample out;
    out.x = x;
    out.y = y;
    out.z = z;
    out.t = t;
    for (int i = 0; i < 4; ++i) {
        const Profile& f = s.profiles[static_cast<std::size_t>(i)];
        if (f.is_zero()) continue;
        const BranchTerm& bt = terms[static_cast<std::size_t>(i)];
        const double v = f.value(bt.s - bt.c * t);
        out.vx += bt.coeff[0] * v;
        out.vy += bt.coeff[1] * v;
        out.vz += bt.coeff[2] * v;
        out.p += bt.coeff[3] * v;
    }
    return out;
}

namespace {

// integral of cos(phi + b tau) over [t0, t1], in the cancellation-free
// product form; exact limit at b = 0.
double int_cos(double phi, double b, double t0, double t1) {
    if (b == 0.0) return (t1 - t0) * std::cos(phi);
    return 2.0 / b * std::cos(phi + 0.5 * b * (t0 + t1)) * std::sin(0.5 * b * (t1 - t0));
}

double int_sin(double phi, double b, double t0, double t1) {
    if (b == 0.0) return (t1 - t0) * std::sin(phi);
    return 2.0 / b * std::sin(phi + 0.5 * b * (t0 + t1)) * std::sin(0.5 * b * (t1 - t0));
}

// antiderivative at tau of exp(g tau) sin(w tau), anchored at 0.
double int_exp_sin(double g, double w, double tau) {
    const double denom = g * g + w * w;
    if (denom == 0.0) return 0.0;
    return (w - std::exp(g * tau) * (w * std::cos(w * tau) - g * std::sin(w * tau))) / denom;
}

// tau-window inside [0, t] where the branch argument phi + c tau stays inside
// the profile support. Exact: the profile vanishes outside the window.
bool support_window(const Profile& f, double phi, double c, double t,
                    double& t0, double& t1) {
    t0 = 0.0;
    t1 = t;
    const Support sup = f.support();
    if (!sup.compact || c == 0.0) return t1 > t0;
    double w0 = (sup.lo - phi) / c;
    double w1 = (sup.hi - phi) / c;
    if (w0 > w1) std::swap(w0, w1);
    t0 = std::max(t0, w0);
    t1 = std::min(t1, w1);
    return t1 > t0;
}

// integral of f(phi + c tau) sin(w tau) over [t0, t1] for the profile kinds
// with analytic antiderivatives.
double closed_branch_integral(const Profile& f, double phi, double c, double w,
                              double t0, double t1) {
    switch (f.kind()) {
        case Profile::Kind::Sin:
        case Profile::Kind::TruncatedSin:
            // sin(A) sin(B) = (cos(A - B) - cos(A + B)) / 2
            return 0.5 * f.scale() *
                   (int_cos(phi, c - w, t0, t1) - int_cos(phi, c + w, t0, t1));
        case Profile::Kind::Cos:
            // cos(A) sin(B) = (sin(A + B) - sin(A - B)) / 2
            return 0.5 * f.scale() *
                   (int_sin(phi, c + w, t0, t1) - int_sin(phi, c - w, t0, t1));
        case Profile::Kind::Exp: {
            const double g = f.exp_rate() * c;
            return f.scale() * std::exp(f.exp_rate() * phi) *
                   (int_exp_sin(g, w, t1) - int_exp_sin(g, w, t0));
        }
        default:
            fail(ErrorCode::UnsupportedClosedForm, "no closed-form antiderivative for profile");
    }
}

double quadrature_branch_integral(const Profile& f, double phi, double c, double w,
                                  double t0, double t1, const QuadratureSpec& quad) {
    const double span = t1 - t0;
    const int panels = static_cast<int>(
        std::min(std::ceil(span * (std::abs(w) + std::abs(c)) / M_PI) + 1.0, 1e9));
    auto integrand = [&](double tau) { return f.value(phi + c * tau) * std::sin(w * tau); };
    return integrate_adaptive(integrand, t0, t1, quad, panels).value;
}

double branch_integral_dispatch(const Profile& f, double s, double c, double w, double t,
                                const QuadratureSpec& quad, BranchPath& path) {
    if (f.is_zero() || t <= 0.0) {
        path = BranchPath::Inactive;
        return 0.0;
    }
    const double phi = s - c * t;
    if (c == 0.0) {
        // the argument is frozen; only the harmonic factor integrates
        path = BranchPath::ClosedForm;
        const double amp = f.value(phi);
        return w == 0.0 ? 0.0 : amp * (1.0 - std::cos(w * t)) / w;
    }
    double t0 = 0.0;
    double t1 = t;
    if (!support_window(f, phi, c, t, t0, t1)) {
        path = BranchPath::ClosedForm;
        return 0.0;
    }
    switch (f.kind()) {
        case Profile::Kind::Sin:
        case Profile::Kind::Cos:
        case Profile::Kind::Exp:
        case Profile::Kind::TruncatedSin:
            path = BranchPath::ClosedForm;
            return closed_branch_integral(f, phi, c, w, t0, t1);
        default:
            path = BranchPath::Quadrature;
            return quadrature_branch_integral(f, phi, c, w, t0, t1, quad);
    }
}

FieldSample assemble_forced(const Scenario& s, double x, double y, double z, double t,
                            const std::array<double, 4>& integrals) {
    const auto terms = branch_terms(s, x, y, z);
    FieldSample out;
    out.x = x;
    out.y = y;
    out.z = z;
    out.t = t;
    for (int i = 0; i < 4; ++i) {
        const BranchTerm& bt = terms[static_cast<std::size_t>(i)];
        const double v = integrals[static_cast<std::size_t>(i)];
        out.vx += bt.coeff[0] * v;
        out.vy += bt.coeff[1] * v;
        out.vz += bt.coeff[2] * v;
        out.p += bt.coeff[3] * v;
    }
    return out;
}

void require_forcing(const Scenario& s) {
    if (!s.forced())
        fail(ErrorCode::Precondition, "forced evaluation requires a scenario with forcing");
}

} // namespace

FieldSample evaluate_forced(const Scenario& s, double x, double y, double z, double t,
                            const QuadratureSpec& quad, ForcedEvalInfo* info) {
    require_forcing(s);
    if (info) *info = ForcedEvalInfo{};
    FieldSample out;
    out.x = x;
    out.y = y;
    out.z = z;
    out.t = t;
    if (t <= 0.0) return out; // h(t) = 0 for t <= 0

    const auto terms = branch_terms(s, x, y, z);
    const double w = s.forcing->omega_f;
    std::array<double, 4> integrals{};
    for (int i = 0; i < 4; ++i) {
        const Profile& f = s.profiles[static_cast<std::size_t>(i)];
        BranchPath path = BranchPath::Inactive;
        integrals[static_cast<std::size_t>(i)] = branch_integral_dispatch(
            f, terms[static_cast<std::size_t>(i)].s, terms[static_cast<std::size_t>(i)].c, w, t,
            quad, path);
        if (info) {
            info->path[static_cast<std::size_t>(i)] = path;
            if (!f.is_zero() && !f.continuously_differentiable()) info->non_c1_profile = true;
        }
    }
    return assemble_forced(s, x, y, z, t, integrals);
}

double branch_integral_quadrature(const Profile& f, double s, double c, double omega_f,
                                  double t, const QuadratureSpec& quad) {
    if (f.is_zero() || t <= 0.0) return 0.0;
    const double phi = s - c * t;
    double t0 = 0.0;
    double t1 = t;
    if (!support_window(f, phi, c, t, t0, t1)) return 0.0;
    return quadrature_branch_integral(f, phi, c, omega_f, t0, t1, quad);
}

namespace {

void require_single_branch(const Scenario& s, int branch, Profile::Kind kind,
                           ErrorCode code, const char* what) {
    for (int i = 1; i <= 4; ++i) {
        if (i == branch) continue;
        if (s.branch_active(i))
            fail(code, std::string(what) + ": branches other than the closed-form branch are active");
    }
    if (s.profile(branch).kind() != kind || s.profile(branch).is_zero())
        fail(code, std::string(what) + ": required profile shape is missing");
}

} // namespace

FieldSample closed_form_resonant(const Scenario& s, double x, double y, double z, double t) {
    require_forcing(s);
    require_single_branch(s, 1, Profile::Kind::Sin, ErrorCode::NotResonant,
                          "resonant closed form");
    const double c1 = characteristic_speeds(s)[0];
    const double w = s.forcing->omega_f;
    if (std::abs(w - c1) > 1e-9 * std::max(1.0, std::abs(c1)))
        fail(ErrorCode::NotResonant,
             "resonant closed form: omega_f does not match the branch-1 characteristic speed");

    FieldSample out;
    out.x = x;
    out.y = y;
    out.z = z;
    out.t = t;
    if (t <= 0.0 || w == 0.0) return out;

    const WaveMode& m1 = s.modes[0];
    const double phi = m1.k * x + m1.l * y + m1.m * z - w * t;
    const double swt = std::sin(w * t);
    const double common = s.profiles[0].scale() *
                          (0.5 * std::cos(phi) * (t - std::sin(2.0 * w * t) / (2.0 * w)) +
                           std::sin(phi) * swt * swt / (2.0 * w));
    out.vx = m1.k * common;
    out.vy = m1.l * common;
    out.vz = m1.m * common;
    out.p = -s.gas.c0_rho0() * m1.wavenorm() * common;
    return out;
}

FieldSample closed_form_exponential_forced(const Scenario& s, double x, double y, double z,
                                           double t) {
    require_forcing(s);
    require_single_branch(s, 3, Profile::Kind::Exp, ErrorCode::UnsupportedClosedForm,
                          "exponential forced closed form");

    FieldSample out;
    out.x = x;
    out.y = y;
    out.z = z;
    out.t = t;
    if (t <= 0.0) return out;

    const WaveMode& m3 = s.modes[2];
    const Profile& f3 = s.profiles[2];
    const double w = s.forcing->omega_f;
    const double mu = -f3.exp_rate() * m3.k * s.gas.U0;
    const double s3 = m3.k * x + m3.l * y + m3.m * z;

    // exp(a s3) exp(mu t) * integral of exp(-mu tau) sin(w tau) over [0, t]
    const double denom = mu * mu + w * w;
    const double time_integral =
        denom == 0.0
            ? 0.0
            : (w - std::exp(-mu * t) * (mu * std::sin(w * t) + w * std::cos(w * t))) / denom;
    const double common =
        f3.scale() * std::exp(f3.exp_rate() * s3) * std::exp(mu * t) * time_integral;

    out.vx = (m3.l / m3.k) * common;
    out.vy = -common;
    out.vz = 0.0;
    out.p = 0.0;
    return out;
}

} // namespace lineuler
