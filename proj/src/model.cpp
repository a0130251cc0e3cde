#include "lineuler/model.hpp"

#include <algorithm>
#include <limits>

namespace lineuler {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid_input";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::NonDifferentiable: return "non_differentiable";
        case ErrorCode::NotResonant: return "not_resonant";
        case ErrorCode::UnsupportedClosedForm: return "unsupported_closed_form";
        case ErrorCode::NonInvertible: return "non_invertible";
        case ErrorCode::DegenerateRepresentation: return "degenerate_representation";
        case ErrorCode::ResonantMode: return "resonant_mode";
        case ErrorCode::ExcludedWavenumber: return "excluded_wavenumber";
        case ErrorCode::IntegrationFailure: return "integration_failure";
    }
    return "unknown";
}

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        fail(ErrorCode::InvalidInput, std::string(name) + " must be finite and > 0");
}

bool close_rel(double a, double b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * scale;
}

} // namespace

void GasParameters::validate() const {
    require_positive(U0, "U0");
    require_positive(rho0, "rho0");
    require_positive(c0, "c0");
    if (p0) require_positive(*p0, "p0");
    if (T0) require_positive(*T0, "T0");
    if (R) require_positive(*R, "R");
    if (cp) require_positive(*cp, "cp");
    if (cv) require_positive(*cv, "cv");

    if (p0 && !close_rel(c0 * c0, *p0 / rho0, 1e-10))
        fail(ErrorCode::InvalidInput, "inconsistent gas state: c0^2 != p0/rho0");
    if (R && cp && cv && !close_rel(*R, *cp - *cv, 1e-10))
        fail(ErrorCode::InvalidInput, "inconsistent gas state: R != cp - cv");
}

void WaveMode::validate() const {
    if (branch < 1 || branch > 4)
        fail(ErrorCode::InvalidInput, "wave mode branch must be in 1..4");
    if (!std::isfinite(k) || !std::isfinite(l) || !std::isfinite(m))
        fail(ErrorCode::InvalidInput, "wave mode components must be finite");
    if ((branch == 3 || branch == 4) && k == 0.0)
        fail(ErrorCode::InvalidInput, "branches 3 and 4 require a nonzero k component");
}

void Scenario::validate() const {
    gas.validate();
    for (std::size_t i = 0; i < 4; ++i) {
        if (modes[i].branch != static_cast<int>(i) + 1)
            fail(ErrorCode::InvalidInput, "scenario modes must carry branches 1..4 in order");
        modes[i].validate();
    }
    if (forcing && !std::isfinite(forcing->omega_f))
        fail(ErrorCode::InvalidInput, "forcing frequency must be finite");
}

double FieldSample::max_abs() const {
    return std::max({std::abs(vx), std::abs(vy), std::abs(vz), std::abs(p)});
}

std::array<double, 4> characteristic_speeds(const Scenario& s) {
    const auto& m = s.modes;
    return {
        m[0].k * s.gas.U0 - s.gas.c0 * m[0].wavenorm(),
        m[1].k * s.gas.U0 + s.gas.c0 * m[1].wavenorm(),
        m[2].k * s.gas.U0,
        m[3].k * s.gas.U0,
    };
}

// ---------------------------------------------------------------------------
// Profile catalog

Profile Profile::zero() {
    return Profile();
}

Profile Profile::sine(double scale) {
    Profile p;
    p.kind_ = Kind::Sin;
    p.scale_ = scale;
    return p;
}

Profile Profile::cosine(double scale) {
    Profile p;
    p.kind_ = Kind::Cos;
    p.scale_ = scale;
    return p;
}

Profile Profile::exponential(double a, double scale) {
    if (!std::isfinite(a))
        fail(ErrorCode::InvalidInput, "exponential profile rate must be finite");
    Profile p;
    p.kind_ = Kind::Exp;
    p.a_ = a;
    p.scale_ = scale;
    return p;
}

Profile Profile::square_exponential(double scale) {
    Profile p;
    p.kind_ = Kind::SquareExp;
    p.scale_ = scale;
    return p;
}

Profile Profile::smooth_bump(double r, double scale) {
    if (!(r >= 0.0) || !std::isfinite(r))
        fail(ErrorCode::InvalidInput, "smooth bump radius must be finite and >= 0");
    Profile p;
    p.kind_ = Kind::SmoothBump;
    p.r_ = r;
    p.scale_ = scale;
    return p;
}

Profile Profile::truncated_sin(double a, double b, double scale) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
        fail(ErrorCode::InvalidInput, "truncated sin requires finite cut points with b > a");
    Profile p;
    p.kind_ = Kind::TruncatedSin;
    p.a_ = a;
    p.b_ = b;
    p.scale_ = scale;
    return p;
}

Profile Profile::tabulated(std::vector<std::pair<double, double>> knots, double scale) {
    if (knots.size() < 2)
        fail(ErrorCode::InvalidInput, "tabulated profile needs at least two knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (!(knots[i].first < knots[i + 1].first))
            fail(ErrorCode::InvalidInput, "tabulated knots must be strictly increasing in xi");
    Profile p;
    p.kind_ = Kind::Tabulated;
    p.knots_ = std::move(knots);
    p.scale_ = scale;
    return p;
}

namespace {

// exp(-1/s) extended by zero through s = 0; the usual mollifier ingredient.
double psi(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

// Smooth step on [0, 1] with g(0) = 1, g(1) = 0 and vanishing one-sided
// derivatives of all orders at both ends.
double bump_step(double u) {
    const double a = psi(1.0 - u);
    const double b = psi(u);
    return a / (a + b);
}

double bump_step_derivative(double u) {
    const double a = psi(1.0 - u);
    const double b = psi(u);
    if (a == 0.0 || b == 0.0) return 0.0;
    const double s = a + b;
    return -a * b * (1.0 / ((1.0 - u) * (1.0 - u)) + 1.0 / (u * u)) / (s * s);
}

} // namespace

double Profile::value(double xi) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Sin:
            return scale_ * std::sin(xi);
        case Kind::Cos:
            return scale_ * std::cos(xi);
        case Kind::Exp:
            return scale_ * std::exp(a_ * xi);
        case Kind::SquareExp:
            return scale_ * std::exp(xi * xi);
        case Kind::SmoothBump: {
            const double u = std::abs(xi) - r_;
            if (u <= 0.0) return scale_;
            if (u >= 1.0) return 0.0;
            return scale_ * bump_step(u);
        }
        case Kind::TruncatedSin:
            return (xi >= a_ && xi <= b_) ? scale_ * std::sin(xi) : 0.0;
        case Kind::Tabulated: {
            if (xi < knots_.front().first || xi > knots_.back().first) return 0.0;
            auto it = std::upper_bound(knots_.begin(), knots_.end(), xi,
                                       [](double v, const auto& kn) { return v < kn.first; });
            if (it == knots_.begin()) return scale_ * knots_.front().second;
            if (it == knots_.end()) return scale_ * knots_.back().second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (xi - lo.first) / (hi.first - lo.first);
            return scale_ * ((1.0 - w) * lo.second + w * hi.second);
        }
    }
    return 0.0;
}

double Profile::derivative(double xi) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Sin:
            return scale_ * std::cos(xi);
        case Kind::Cos:
            return -scale_ * std::sin(xi);
        case Kind::Exp:
            return scale_ * a_ * std::exp(a_ * xi);
        case Kind::SquareExp:
            return scale_ * 2.0 * xi * std::exp(xi * xi);
        case Kind::SmoothBump: {
            const double u = std::abs(xi) - r_;
            if (u <= 0.0 || u >= 1.0) return 0.0;
            const double sgn = xi >= 0.0 ? 1.0 : -1.0;
            return scale_ * sgn * bump_step_derivative(u);
        }
        case Kind::TruncatedSin:
            if (xi == a_ || xi == b_)
                fail(ErrorCode::NonDifferentiable,
                     "truncated sin is not differentiable at its cut points");
            return (xi > a_ && xi < b_) ? scale_ * std::cos(xi) : 0.0;
        case Kind::Tabulated: {
            if (xi < knots_.front().first || xi >= knots_.back().first) return 0.0;
            auto it = std::upper_bound(knots_.begin(), knots_.end(), xi,
                                       [](double v, const auto& kn) { return v < kn.first; });
            if (it == knots_.begin() || it == knots_.end()) return 0.0;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            return scale_ * (hi.second - lo.second) / (hi.first - lo.first);
        }
    }
    return 0.0;
}

SupBound Profile::sup() const {
    const double s = std::abs(scale_);
    switch (kind_) {
        case Kind::Zero:
            return {0.0, false};
        case Kind::Sin:
        case Kind::Cos:
            return {s, false};
        case Kind::Exp:
            if (a_ == 0.0) return {s, false};
            return {std::numeric_limits<double>::infinity(), true};
        case Kind::SquareExp:
            return {std::numeric_limits<double>::infinity(), true};
        case Kind::SmoothBump:
            return {s, false};
        case Kind::TruncatedSin: {
            // |sin| reaches 1 inside [a, b] iff the interval contains an odd
            // multiple of pi/2; otherwise the max sits at an endpoint.
            const double half_pi = std::asin(1.0);
            const double lo = std::ceil((a_ - half_pi) / M_PI);
            const double hi = std::floor((b_ - half_pi) / M_PI);
            if (lo <= hi) return {s, false};
            return {s * std::max(std::abs(std::sin(a_)), std::abs(std::sin(b_))), false};
        }
        case Kind::Tabulated: {
            double m = 0.0;
            for (const auto& kn : knots_) m = std::max(m, std::abs(kn.second));
            return {s * m, false};
        }
    }
    return {0.0, false};
}

Support Profile::support() const {
    switch (kind_) {
        case Kind::Zero:
            return {true, 0.0, 0.0};
        case Kind::SmoothBump:
            return {true, -r_ - 1.0, r_ + 1.0};
        case Kind::TruncatedSin:
            return {true, a_, b_};
        case Kind::Tabulated:
            return {true, knots_.front().first, knots_.back().first};
        default:
            return {false, 0.0, 0.0};
    }
}

bool Profile::continuously_differentiable() const {
    return kind_ != Kind::TruncatedSin && kind_ != Kind::Tabulated;
}

std::vector<double> Profile::kink_points() const {
    switch (kind_) {
        case Kind::TruncatedSin:
            return {a_, b_};
        case Kind::Tabulated: {
            std::vector<double> pts;
            pts.reserve(knots_.size());
            for (const auto& kn : knots_) pts.push_back(kn.first);
            return pts;
        }
        default:
            return {};
    }
}

} // namespace lineuler
