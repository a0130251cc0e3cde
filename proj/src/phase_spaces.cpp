#include "lineuler/phase_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lineuler/solutions.hpp"

namespace lineuler {

void GridSpec::validate() const {
    if (n[0] < 1 || n[1] < 1 || n[2] < 1)
        fail(ErrorCode::InvalidInput, "grid needs at least one point per axis");
    if (!(hi > lo)) fail(ErrorCode::InvalidInput, "grid domain must satisfy hi > lo");
}

std::vector<double> GridSpec::axis(int dim) const {
    const int count = n[static_cast<std::size_t>(dim)];
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        xs.push_back(0.5 * (lo + hi));
        return xs;
    }
    for (int i = 0; i < count; ++i)
        xs.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    return xs;
}

std::vector<GridSpec::Point> GridSpec::points() const {
    validate();
    const auto xs = axis(0);
    const auto ys = axis(1);
    const auto zs = axis(2);
    std::vector<Point> pts;
    pts.reserve(xs.size() * ys.size() * zs.size());
    for (double x : xs)
        for (double y : ys)
            for (double z : zs) pts.push_back({x, y, z});
    return pts;
}

namespace {

void require_k3k4(const std::array<WaveMode, 4>& modes) {
    if (modes[2].k == 0.0 || modes[3].k == 0.0)
        fail(ErrorCode::Precondition,
             "mode system requires nonzero k on branches 3 and 4 (k3 * k4 != 0)");
}

// Magnitude scale of the determinant, used to decide when it has genuinely
// collapsed rather than merely cancelled to rounding noise.
double delta_scale(const std::array<WaveMode, 4>& modes, const GasParameters& gas) {
    const auto& m = modes;
    const double n1 = m[0].wavenorm();
    const double n2 = m[1].wavenorm();
    const double t1 = std::abs(m[1].k * m[2].k * m[3].k) + std::abs(m[2].k * m[1].m * m[3].m) +
                      std::abs(m[3].k * m[1].l * m[2].l);
    const double t2 = std::abs(m[0].k * m[2].k * m[3].k) + std::abs(m[2].k * m[0].m * m[3].m) +
                      std::abs(m[3].k * m[0].l * m[2].l);
    return gas.c0_rho0() / std::abs(m[2].k * m[3].k) * (n1 * t1 + n2 * t2);
}

} // namespace

double compute_delta(const std::array<WaveMode, 4>& modes, const GasParameters& gas) {
    require_k3k4(modes);
    const auto& m = modes;
    const double n1 = m[0].wavenorm();
    const double n2 = m[1].wavenorm();
    const double t1 = m[1].k * m[2].k * m[3].k + m[2].k * m[1].m * m[3].m + m[3].k * m[1].l * m[2].l;
    const double t2 = m[0].k * m[2].k * m[3].k + m[2].k * m[0].m * m[3].m + m[3].k * m[0].l * m[2].l;
    return gas.c0_rho0() / (m[2].k * m[3].k) * (n1 * t1 + n2 * t2);
}

double compute_m(const std::array<WaveMode, 4>& modes, const GasParameters& gas) {
    require_k3k4(modes);
    const auto& m = modes;
    const double e1 = std::abs(m[0].k) + std::abs(m[1].k) + std::abs(m[2].l / m[2].k) +
                      std::abs(m[3].m / m[3].k);
    const double e2 = std::abs(m[0].l) + std::abs(m[1].l) + 1.0;
    const double e3 = std::abs(m[0].m) + std::abs(m[1].m) + 1.0;
    const double e4 = gas.c0_rho0() * (m[0].wavenorm() + m[1].wavenorm());
    return std::max({e1, e2, e3, e4});
}

double compute_M(const std::array<WaveMode, 4>& modes, const GasParameters& gas) {
    require_k3k4(modes);
    const double delta = compute_delta(modes, gas);
    if (std::abs(delta) <= 1e-12 * delta_scale(modes, gas))
        fail(ErrorCode::DegenerateRepresentation,
             "representation determinant vanishes for this mode system");

    const auto& m = modes;
    const double D = std::abs(delta);
    const double cr = gas.c0_rho0();
    const double n1 = m[0].wavenorm();
    const double n2 = m[1].wavenorm();
    const double r3 = std::abs(m[2].l / m[2].k);
    const double r4 = std::abs(m[3].m / m[3].k);
    const double rsum = 1.0 + r3 + r4;

    const double e1 = cr / D * n2 * rsum +
                      (std::abs(m[1].k) + std::abs(m[1].l) * r3 + std::abs(m[1].m) * r4) / D;
    const double e2 = cr / D * n1 * rsum +
                      (std::abs(m[0].k) + std::abs(m[0].l) * r3 + std::abs(m[0].m) * r4) / D;
    const double e3 = cr / D * (n2 * std::abs(m[0].l) * rsum + n1 * std::abs(m[1].l) * rsum);
    const double e4 = 1.0;
    const double e5 = (std::abs(m[1].l * m[0].k) + std::abs(m[1].l * m[0].m) * r4 +
                       std::abs(m[0].l * m[1].k) + std::abs(m[0].l * m[1].m) * r4) /
                      D;
    const double e6 = cr / D * (n2 * std::abs(m[0].m) * rsum + n1 * std::abs(m[1].m) * rsum);
    const double e7 = (std::abs(m[1].m * m[0].k) + std::abs(m[1].m * m[0].l) * r3 +
                       std::abs(m[0].m * m[1].k) + std::abs(m[0].m * m[1].l) * r3) /
                      D;
    return std::max({e1, e2, e3, e4, e5, e6, e7});
}

double compute_m_prime(const std::array<WaveMode, 4>& modes, const GasParameters& gas,
                       double a, double b) {
    require_k3k4(modes);
    if (!(b > a)) fail(ErrorCode::Precondition, "support interval requires b > a");

    const auto& m = modes;
    const double c1 = m[0].k * gas.U0 - gas.c0 * m[0].wavenorm();
    const double c2 = m[1].k * gas.U0 + gas.c0 * m[1].wavenorm();
    if (c1 == 0.0 || c2 == 0.0)
        fail(ErrorCode::ResonantMode,
             "a characteristic denominator vanishes; the forced bound does not apply");

    const double cr = gas.c0_rho0();
    const double e1 = std::abs(m[0].k / c1) + std::abs(m[1].k / c2) +
                      std::abs(m[2].l / (m[2].k * m[2].k * gas.U0)) +
                      std::abs(m[3].m / (m[3].k * m[3].k * gas.U0));
    const double e2 = std::abs(m[0].l / c1) + std::abs(m[1].l / c2) +
                      1.0 / std::abs(m[2].k * gas.U0);
    const double e3 = std::abs(m[0].m / c1) + std::abs(m[1].m / c2) +
                      1.0 / std::abs(m[3].k * gas.U0);
    const double e4 = std::abs(cr * m[0].wavenorm() / c1) + std::abs(cr * m[1].wavenorm() / c2);
    return (b - a) * std::max({e1, e2, e3, e4});
}

std::array<Profile, 4> invert_representation(const std::array<WaveMode, 4>& modes,
                                             const GasParameters& gas,
                                             const DataEvaluator& data,
                                             std::span<const double> xi_samples) {
    for (const WaveMode& m : modes)
        if (m.k == 0.0)
            fail(ErrorCode::NonInvertible,
                 "wavenumber condition failed: the representation is invertible only when "
                 "every branch has k_i != 0");
    const double delta = compute_delta(modes, gas);
    if (std::abs(delta) <= 1e-12 * delta_scale(modes, gas))
        fail(ErrorCode::NonInvertible,
             "determinant condition failed: the representation determinant vanishes for "
             "this mode system");
    if (xi_samples.empty())
        fail(ErrorCode::InvalidInput, "inversion needs at least one sample abscissa");

    std::vector<double> xs(xi_samples.begin(), xi_samples.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) xs.push_back(xs.front() + 1.0);

    const auto& m = modes;
    const double cr = gas.c0_rho0();
    const double n1 = m[0].wavenorm();
    const double n2 = m[1].wavenorm();
    const double q3 = m[2].l / m[2].k;
    const double q4 = m[3].m / m[3].k;
    const double A1 = m[0].k + m[0].l * q3 + m[0].m * q4;
    const double A2 = m[1].k + m[1].l * q3 + m[1].m * q4;

    // Solving the representation at a point x of the Ox axis yields the
    // branch values f_i(k_i x); branch i therefore samples at x = xi / k_i.
    auto solve_at = [&](double x, int branch) {
        const auto d = data(x, 0.0, 0.0);
        const double common = d[0] + q3 * d[1] + q4 * d[2];
        const double u1 = (cr * n2 * common - A2 * d[3]) / delta;
        const double u2 = (cr * n1 * common + A1 * d[3]) / delta;
        switch (branch) {
            case 0: return u1;
            case 1: return u2;
            case 2: return m[0].l * u1 + m[1].l * u2 - d[1];
            default: return m[0].m * u1 + m[1].m * u2 - d[2];
        }
    };

    std::array<Profile, 4> out;
    for (int branch = 0; branch < 4; ++branch) {
        std::vector<std::pair<double, double>> knots;
        knots.reserve(xs.size());
        for (double xi : xs)
            knots.emplace_back(xi, solve_at(xi / m[static_cast<std::size_t>(branch)].k, branch));
        out[static_cast<std::size_t>(branch)] = Profile::tabulated(std::move(knots));
    }
    return out;
}

NormEstimate sup_norm_estimate(const Scenario& s, const GridSpec& grid,
                               std::span<const double> times) {
    s.validate();
    NormEstimate est;

    std::vector<double> ts(times.begin(), times.end());
    if (ts.empty()) ts.push_back(0.0);
    for (const auto& pt : grid.points())
        for (double t : ts)
            est.lower = std::max(est.lower, evaluate_instant(s, pt.x, pt.y, pt.z, t).max_abs());

    // triangle inequality over the branch coefficient rows
    const auto terms = branch_terms(s, 0.0, 0.0, 0.0);
    std::array<double, 4> row_bound{};
    bool unbounded = false;
    for (int i = 0; i < 4; ++i) {
        const Profile& f = s.profiles[static_cast<std::size_t>(i)];
        if (f.is_zero()) continue;
        const SupBound sup = f.sup();
        for (int comp = 0; comp < 4; ++comp) {
            const double c = std::abs(terms[static_cast<std::size_t>(i)].coeff[static_cast<std::size_t>(comp)]);
            if (c == 0.0) continue;
            if (sup.unbounded)
                unbounded = true;
            else
                row_bound[static_cast<std::size_t>(comp)] += c * sup.value;
        }
    }
    est.upper.unbounded = unbounded;
    est.upper.value = unbounded ? std::numeric_limits<double>::infinity()
                                : *std::max_element(row_bound.begin(), row_bound.end());
    return est;
}

namespace {

// least-squares slope of (t, s) pairs
double fit_slope(std::span<const double> t, std::span<const double> s, std::size_t begin,
                 std::size_t end) {
    double tm = 0.0, sm = 0.0;
    const double count = static_cast<double>(end - begin);
    for (std::size_t j = begin; j < end; ++j) {
        tm += t[j];
        sm += s[j];
    }
    tm /= count;
    sm /= count;
    double num = 0.0, den = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
        num += (t[j] - tm) * (s[j] - sm);
        den += (t[j] - tm) * (t[j] - tm);
    }
    return num / den;
}

} // namespace

GrowthRateResult growth_rate_estimate(const FieldEvaluator& field, const GridSpec& grid,
                                      std::span<const double> t_schedule) {
    if (t_schedule.size() < 8)
        fail(ErrorCode::Precondition, "growth rate schedule needs at least 8 times");
    for (std::size_t j = 1; j < t_schedule.size(); ++j)
        if (!(t_schedule[j] > t_schedule[j - 1]))
            fail(ErrorCode::Precondition, "growth rate schedule must be strictly increasing");

    const auto pts = grid.points();
    const std::size_t nt = t_schedule.size();
    std::array<std::vector<double>, 4> logsup;
    for (auto& v : logsup) v.assign(nt, 0.0);

    for (std::size_t j = 0; j < nt; ++j) {
        std::array<double, 4> sup{};
        for (const auto& pt : pts) {
            const FieldSample f = field(pt.x, pt.y, pt.z, t_schedule[j]);
            sup[0] = std::max(sup[0], std::abs(f.vx));
            sup[1] = std::max(sup[1], std::abs(f.vy));
            sup[2] = std::max(sup[2], std::abs(f.vz));
            sup[3] = std::max(sup[3], std::abs(f.p));
        }
        for (int c = 0; c < 4; ++c)
            logsup[static_cast<std::size_t>(c)][j] = std::log(sup[static_cast<std::size_t>(c)]);
    }

    GrowthRateResult res;
    const std::size_t tail_begin = nt / 2;
    const std::size_t tail_len = nt - tail_begin;

    // three nested windows anchored at the end of the schedule
    const std::array<std::size_t, 3> win_len = {
        tail_len,
        std::max<std::size_t>(2, 2 * tail_len / 3),
        std::max<std::size_t>(2, tail_len / 3),
    };

    bool any_usable = false;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_slopes;
    for (int c = 0; c < 4; ++c) {
        const auto& s = logsup[static_cast<std::size_t>(c)];
        bool has_inf = false, has_ninf = false;
        for (std::size_t j = tail_begin; j < nt; ++j) {
            if (std::isinf(s[j])) (s[j] > 0 ? has_inf : has_ninf) = true;
        }
        if (has_inf) {
            // the grid sup overflowed: growth beyond double range inside the schedule
            res.diverged = true;
            continue;
        }
        if (has_ninf) continue; // the component vanishes somewhere in the tail
        std::vector<double> slopes;
        for (std::size_t len : win_len)
            slopes.push_back(fit_slope(t_schedule, s, nt - len, nt));
        const double rate = slopes.back();
        if (!any_usable || rate > best) {
            best = rate;
            best_slopes = slopes;
        }
        any_usable = true;
        bool increasing = slopes.front() > 0.0;
        for (std::size_t j = 1; j < slopes.size() && increasing; ++j)
            increasing = slopes[j] > 1.1 * slopes[j - 1];
        if (increasing) res.diverged = true;
    }

    if (res.diverged) {
        res.flag = RateFlag::PlusInfinity;
        res.nu = std::numeric_limits<double>::infinity();
        res.window_slopes = best_slopes;
        return res;
    }
    if (!any_usable) {
        res.flag = RateFlag::MinusInfinity;
        res.nu = -std::numeric_limits<double>::infinity();
        return res;
    }
    res.nu = best;
    res.window_slopes = best_slopes;
    return res;
}

} // namespace lineuler
