#include "lineuler/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace lineuler {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        fail(ErrorCode::InvalidInput, "quadrature tolerances must be > 0");
    if (max_subdivisions < 16)
        fail(ErrorCode::InvalidInput, "quadrature max_subdivisions must be >= 16");
}

namespace {

// Gauss-Kronrod (7, 15) nodes and weights on [-1, 1], positive half.
constexpr double kron_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
constexpr double kron_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
// Gauss-7 weights for the embedded rule (nodes 1, 3, 5, 7 above).
constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double kron = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = f(c);
        } else {
            fsum = f(c - h * kron_x[i]) + f(c + h * kron_x[i]);
        }
        kron += kron_w[i] * fsum;
        if (i % 2 == 1) gauss += gauss_w[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;

    double err = std::abs(kron - gauss);
    // QUADPACK-style sharpening of the raw difference.
    if (err > 0.0) err = std::min(err, 200.0 * err * std::sqrt(err));
    return {a, b, kron, err};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec,
                                    int initial_panels) {
    spec.validate();
    if (a == b) return {0.0, 0.0, 0};
    if (!(a < b)) fail(ErrorCode::InvalidInput, "integration interval must satisfy a <= b");

    auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> panels(worse);

    auto checked_panel = [&](double pa, double pb) {
        Panel p = evaluate_panel(f, pa, pb);
        if (!std::isfinite(p.value)) {
            std::ostringstream msg;
            msg << "integrand is not finite on [" << pa << ", " << pb << "]";
            fail(ErrorCode::IntegrationFailure, msg.str());
        }
        return p;
    };

    const int n0 = std::clamp(initial_panels, 1, std::max(1, 3 * spec.max_subdivisions / 4));
    double total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double pa = a + (b - a) * static_cast<double>(i) / n0;
        const double pb = (i + 1 == n0) ? b : a + (b - a) * static_cast<double>(i + 1) / n0;
        Panel p = checked_panel(pa, pb);
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }

    int count = n0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        Panel worst = panels.top();

        if (count >= spec.max_subdivisions ||
            worst.b - worst.a <= 16.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(std::abs(worst.a), std::abs(worst.b))) {
            std::ostringstream msg;
            msg << "adaptive quadrature did not converge within " << count
                << " subdivisions; worst subinterval [" << worst.a << ", " << worst.b
                << "] error " << worst.error;
            fail(ErrorCode::IntegrationFailure, msg.str());
        }

        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = checked_panel(worst.a, mid);
        Panel right = checked_panel(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }

    return {total, total_err, count};
}

} // namespace lineuler
