#include <array>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lineuler/phase_spaces.hpp"
#include "lineuler/scenario_io.hpp"
#include "lineuler/solutions.hpp"
#include "lineuler/spectral.hpp"
#include "lineuler/verify.hpp"
#include "figures.hpp"
#include "output.hpp"

namespace {

using nlohmann::json;
using namespace lineuler;
using lineuler::cli::CsvWriter;

struct CommonOptions {
    std::string scenario_path;
    std::string out_path;
    std::vector<int> grid{21, 21, 21};
    std::vector<double> domain{-6.283185307179586, 6.283185307179586};
    double t_max = 1.0;
    double dt = 0.1;
    unsigned seed = 0; // reserved: current commands are fully deterministic
    bool svg = false;
};

GridSpec make_grid(const CommonOptions& opt) {
    if (opt.grid.size() != 3)
        fail(ErrorCode::InvalidInput, "--grid needs exactly three counts nx,ny,nz");
    if (opt.domain.size() != 2)
        fail(ErrorCode::InvalidInput, "--domain needs exactly two bounds a,b");
    GridSpec g;
    g.n = {opt.grid[0], opt.grid[1], opt.grid[2]};
    g.lo = opt.domain[0];
    g.hi = opt.domain[1];
    g.validate();
    return g;
}

void emit_json(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidInput, "cannot open output file: " + out_path);
    out << doc.dump(2) << "\n";
}

json rate_to_json(const GrowthRateResult& r) {
    json doc;
    switch (r.flag) {
        case RateFlag::Finite: doc["nu"] = r.nu; break;
        case RateFlag::PlusInfinity: doc["nu"] = "+inf"; break;
        case RateFlag::MinusInfinity: doc["nu"] = "-inf"; break;
    }
    doc["diverged"] = r.diverged;
    doc["window_slopes"] = r.window_slopes;
    return doc;
}

int run_simulate(const CommonOptions& opt, const std::string& mode) {
    const Scenario s = load_scenario(opt.scenario_path);
    const bool forced = mode == "forced";
    if (forced && !s.forced())
        fail(ErrorCode::InvalidInput, "forced mode requires a scenario with forcing");

    const GridSpec grid = make_grid(opt);
    CsvWriter csv(opt.out_path.empty() ? "simulate.csv" : opt.out_path);
    csv.header("t,x,y,z,vx,vy,vz,p");

    const double dt = opt.dt > 0.0 ? opt.dt : opt.t_max;
    if (dt > 0.0 && opt.t_max / dt > 2e8)
        fail(ErrorCode::InvalidInput, "time sweep would exceed 2e8 steps");
    const long steps = dt > 0.0 ? std::lround(opt.t_max / dt) : 0;
    const auto points = grid.points();
    for (long j = 0; j <= steps; ++j) {
        const double t = std::min(static_cast<double>(j) * dt, opt.t_max);
        for (const auto& pt : points) {
            const FieldSample f = forced ? evaluate_forced(s, pt.x, pt.y, pt.z, t)
                                         : evaluate_instant(s, pt.x, pt.y, pt.z, t);
            csv.row({t, pt.x, pt.y, pt.z, f.vx, f.vy, f.vz, f.p});
        }
    }
    return 0;
}

int run_bounds(const CommonOptions& opt) {
    const Scenario s = load_scenario(opt.scenario_path);
    json doc;
    doc["delta"] = compute_delta(s.modes, s.gas);
    doc["m"] = compute_m(s.modes, s.gas);
    try {
        doc["M"] = compute_M(s.modes, s.gas);
    } catch (const Error& e) {
        doc["M"] = nullptr;
        doc["M_reason"] = e.what();
    }

    // the forced compact-support bound applies when every active profile has
    // compact support; the interval is the union hull
    bool all_compact = true, any_active = false;
    double lo = 0.0, hi = 0.0;
    for (const Profile& p : s.profiles) {
        if (p.is_zero()) continue;
        const Support sup = p.support();
        if (!sup.compact) {
            all_compact = false;
            break;
        }
        lo = any_active ? std::min(lo, sup.lo) : sup.lo;
        hi = any_active ? std::max(hi, sup.hi) : sup.hi;
        any_active = true;
    }
    if (all_compact && any_active && hi > lo) {
        try {
            doc["m_prime"] = compute_m_prime(s.modes, s.gas, lo, hi);
            doc["m_prime_interval"] = {lo, hi};
        } catch (const Error& e) {
            doc["m_prime"] = nullptr;
            doc["m_prime_reason"] = e.what();
        }
    } else {
        doc["m_prime"] = nullptr;
        doc["m_prime_reason"] = any_active ? "an active profile has unbounded support"
                                           : "no active profiles";
    }
    emit_json(doc, opt.out_path);
    return 0;
}

int run_growth(const CommonOptions& opt, int nt) {
    const Scenario s = load_scenario(opt.scenario_path);
    const GridSpec grid = make_grid(opt);
    if (nt < 8) fail(ErrorCode::InvalidInput, "--nt must be at least 8");

    std::vector<double> schedule;
    schedule.reserve(static_cast<std::size_t>(nt));
    for (int j = 1; j <= nt; ++j)
        schedule.push_back(opt.t_max * static_cast<double>(j) / nt);

    FieldEvaluator field;
    if (s.forced()) {
        field = [&s](double x, double y, double z, double t) {
            return evaluate_forced(s, x, y, z, t);
        };
    } else {
        field = [&s](double x, double y, double z, double t) {
            return evaluate_instant(s, x, y, z, t);
        };
    }
    emit_json(rate_to_json(growth_rate_estimate(field, grid, schedule)), opt.out_path);
    return 0;
}

int run_verify(const CommonOptions& opt, double t, double h) {
    const Scenario s = load_scenario(opt.scenario_path);
    const GridSpec grid = make_grid(opt);

    const ResidualReport rep = scenario_residual_order(s, grid, t, h);
    json doc;
    doc["residual"] = {{"h", rep.h}, {"max_residual", rep.max_residual}};
    if (rep.order) doc["residual"]["order"] = *rep.order;

    bool non_c1 = false;
    for (const Profile& p : s.profiles)
        if (!p.is_zero() && !p.continuously_differentiable()) non_c1 = true;
    doc["non_c1_profiles"] = non_c1; // points near their kinks were skipped

    FieldEvaluator field;
    if (s.forced()) {
        field = [&s](double x, double y, double z, double tt) {
            return evaluate_forced(s, x, y, z, tt);
        };
    } else {
        field = [&s](double x, double y, double z, double tt) {
            return evaluate_instant(s, x, y, z, tt);
        };
    }
    const double cx = 0.5 * (grid.lo + grid.hi);
    const auto curl = curl_components(field, cx, cx, cx, t, h);
    doc["curl"] = {{"point", {cx, cx, cx}}, {"t", t}, {"components", curl}};
    emit_json(doc, opt.out_path);
    return 0;
}

int run_invert(const CommonOptions& opt, int samples) {
    const Scenario s = load_scenario(opt.scenario_path);
    if (samples < 1) fail(ErrorCode::InvalidInput, "--samples must be >= 1");
    if (opt.domain.size() != 2 || !(opt.domain[1] > opt.domain[0]))
        fail(ErrorCode::InvalidInput, "--domain needs bounds a,b with b > a");

    std::vector<double> xi;
    xi.reserve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j)
        xi.push_back(samples == 1 ? 0.5 * (opt.domain[0] + opt.domain[1])
                                  : opt.domain[0] + (opt.domain[1] - opt.domain[0]) *
                                                        static_cast<double>(j) / (samples - 1));

    const DataEvaluator data = [&s](double x, double y, double z) {
        return initial_data(s, x, y, z);
    };
    const auto profiles = invert_representation(s.modes, s.gas, data, xi);

    CsvWriter csv(opt.out_path.empty() ? "invert.csv" : opt.out_path);
    csv.header("xi,f1,f2,f3,f4");
    for (double x : xi)
        csv.row({x, profiles[0].value(x), profiles[1].value(x), profiles[2].value(x),
                 profiles[3].value(x)});
    return 0;
}

json probe_to_json(const MultiplierProbeReport& rep) {
    json doc;
    doc["t"] = rep.t;
    doc["rays"] = rep.rays;
    doc["radii"] = rep.radii;
    doc["limit_disagreement"] = rep.any_limit_disagreement;
    doc["unbounded_trend"] = rep.any_unbounded_trend;
    doc["multipliers"] = json::array();
    for (const auto& entry : rep.entries) {
        json e;
        e["row"] = entry.row;
        e["col"] = entry.col;
        e["limit_disagreement"] = entry.limit_disagreement;
        e["unbounded_trend"] = entry.unbounded_trend;
        e["per_ray"] = json::array();
        for (std::size_t r = 0; r < entry.per_ray.size(); ++r) {
            json trace;
            trace["ray"] = r;
            trace["limit"] = {entry.per_ray[r].limit.real(), entry.per_ray[r].limit.imag()};
            json samples = json::array();
            for (const auto& s : entry.per_ray[r].samples)
                samples.push_back({s.radius, s.magnitude, s.gradient});
            trace["samples"] = std::move(samples);
            e["per_ray"].push_back(std::move(trace));
        }
        doc["multipliers"].push_back(std::move(e));
    }
    return doc;
}

int run_spectral(const CommonOptions& opt, const std::vector<double>& alpha, double t,
                 const std::vector<double>& coeffs, std::optional<double> omega_f, bool probe,
                 bool locus, const std::vector<double>& direction,
                 std::vector<double> radii) {
    // gas state from --scenario when given; the illustration values otherwise
    GasParameters gas;
    if (!opt.scenario_path.empty()) {
        gas = load_scenario(opt.scenario_path).gas;
    } else {
        gas.U0 = 80.0;
        gas.c0 = 345.0;
        gas.rho0 = 1.20;
    }

    json doc;
    if (locus) {
        if (!omega_f) fail(ErrorCode::InvalidInput, "--locus requires --omega-f");
        if (direction.size() != 3)
            fail(ErrorCode::InvalidInput, "--locus requires --direction d1,d2,d3");
        const auto roots = resonance_locus(gas, *omega_f, {direction[0], direction[1], direction[2]});
        doc["roots"] = json::array();
        for (const auto& r : roots) {
            const char* branch = r.branch == ResonanceRoot::Branch::Advective ? "advective"
                                 : r.branch == ResonanceRoot::Branch::Minus   ? "minus"
                                                                              : "plus";
            doc["roots"].push_back(
                {{"branch", branch}, {"radius", r.radius}, {"whole_ray", r.whole_ray}});
        }
        emit_json(doc, opt.out_path);
        return 0;
    }
    if (probe) {
        if (radii.empty())
            radii = {1e-8, 1e-7, 1e-6, 1e-4, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
        const std::vector<std::array<double, 3>> rays = {
            {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0},
            {0.5773502691896258, 0.5773502691896258, 0.5773502691896258},
            {-0.7071067811865476, 0.7071067811865476, 0.0},
        };
        emit_json(probe_to_json(multiplier_probe(gas, t, rays, radii)), opt.out_path);
        return 0;
    }

    if (alpha.size() != 3) fail(ErrorCode::InvalidInput, "--alpha needs three components k,l,m");
    if (coeffs.size() != 8)
        fail(ErrorCode::InvalidInput, "--coeffs needs 8 reals: re,im per component");
    SpectralCoefficients c;
    c.alpha = {alpha[0], alpha[1], alpha[2]};
    for (int i = 0; i < 4; ++i)
        c.values[static_cast<std::size_t>(i)] = Complex{coeffs[static_cast<std::size_t>(2 * i)],
                                                         coeffs[static_cast<std::size_t>(2 * i + 1)]};
    const ComplexVec4 out = omega_f ? propagate_forced(c, gas, *omega_f, t)
                                    : propagate(c, gas, t);
    doc["alpha"] = alpha;
    doc["t"] = t;
    doc["values"] = json::array();
    for (const Complex& v : out) doc["values"].push_back({v.real(), v.imag()});
    emit_json(doc, opt.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit solutions, phase-space bounds and spectral propagators of the "
                 "linearized 3D Euler perturbation problems"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string mode = "instant";
    int nt = 24;
    int samples = 200;
    double verify_t = 0.3, verify_h = 1e-3;
    lineuler::cli::FigureSpec fig;
    std::vector<double> alpha, coeffs, direction, radii;
    double spectral_t = 0.0;
    std::optional<double> omega_f;
    bool probe = false, locus = false;

    auto add_common = [&](CLI::App* cmd, bool with_grid) {
        cmd->add_option("--out", opt.out_path, "output path (commands with JSON output print to stdout when omitted)");
        cmd->add_option("--seed", opt.seed, "seed for randomized sweeps (reserved; built-in commands are deterministic)");
        if (with_grid) {
            cmd->add_option("--grid", opt.grid, "sample counts nx,ny,nz")->delimiter(',');
            cmd->add_option("--domain", opt.domain, "cube bounds a,b")->delimiter(',');
        }
    };

    CLI::App* simulate = app.add_subcommand("simulate", "sweep a scenario field to CSV");
    simulate->add_option("--scenario", opt.scenario_path, "scenario JSON path")->required();
    simulate->add_option("--mode", mode, "instant|forced")
        ->check(CLI::IsMember({"instant", "forced"}));
    simulate->add_option("--tmax", opt.t_max, "final time [s]");
    simulate->add_option("--dt", opt.dt, "time step [s]");
    add_common(simulate, true);

    CLI::App* figures = app.add_subcommand("figures", "reproduce the illustration data sets");
    figures->add_option("--id", fig.id, "figure id: 1a..1c, 2a..2c, 3a, 3b, 4a, 4b")->required();
    figures->add_option("--tmax", fig.t_max, "final time [s] (default 3600 or 600)");
    figures->add_option("--dt", fig.dt, "time step [s] (default 0.01 or 1.0)");
    figures->add_option("--dx", fig.dx, "Ox step for figures 3/4");
    figures->add_flag("--svg", opt.svg, "also render a minimal SVG");
    figures->add_option("--out", opt.out_path, "output directory (default .)");
    figures->add_option("--seed", opt.seed, "seed (reserved)");
    figures
        ->add_option(
            "--domain", opt.domain,
            "Ox range a,b for figures 3/4 (default -20,20)")
        ->delimiter(',');

    CLI::App* bounds = app.add_subcommand("bounds", "representation constants as JSON");
    bounds->add_option("--scenario", opt.scenario_path, "scenario JSON path")->required();
    add_common(bounds, false);

    CLI::App* growth = app.add_subcommand("growth", "exponential growth rate estimate as JSON");
    growth->add_option("--scenario", opt.scenario_path, "scenario JSON path")->required();
    growth->add_option("--tmax", opt.t_max, "final schedule time [s]");
    growth->add_option("--nt", nt, "schedule length (>= 8)");
    add_common(growth, true);

    CLI::App* verify = app.add_subcommand("verify", "finite-difference residual and curl report");
    verify->add_option("--scenario", opt.scenario_path, "scenario JSON path")->required();
    verify->add_option("--t", verify_t, "time at which residuals are evaluated");
    verify->add_option("--step", verify_h, "finite-difference step");
    add_common(verify, true);

    CLI::App* invert = app.add_subcommand("invert", "recover profiles from scenario data as CSV");
    invert->add_option("--scenario", opt.scenario_path, "scenario JSON path")->required();
    invert->add_option("--samples", samples, "number of xi samples");
    add_common(invert, true);

    CLI::App* spectral = app.add_subcommand("spectral", "coefficient propagator and probes as JSON");
    spectral->add_option("--scenario", opt.scenario_path, "scenario JSON supplying the gas state");
    spectral->add_option("--alpha", alpha, "wavenumber k,l,m")->delimiter(',');
    spectral->add_option("--t", spectral_t, "time");
    spectral->add_option("--coeffs", coeffs, "8 reals: re,im of Fhat,Ghat,Hhat,Phat")->delimiter(',');
    spectral->add_option("--omega-f", omega_f, "forcing frequency (switches to the forced propagator)");
    spectral->add_flag("--probe", probe, "run the multiplier probe over default rays");
    spectral->add_flag("--locus", locus, "solve the resonance locus along --direction");
    spectral->add_option("--direction", direction, "unit ray d1,d2,d3")->delimiter(',');
    spectral->add_option("--radii", radii, "probe radii")->delimiter(',');
    add_common(spectral, false);

    // the verify/growth sweeps default to a cheap grid; simulate keeps 21^3
    verify->parse_complete_callback([&] {
        if (verify->count("--grid") == 0) opt.grid = {3, 3, 3};
        if (verify->count("--domain") == 0) opt.domain = {-1.0, 1.0};
    });
    invert->parse_complete_callback([&] {
        if (invert->count("--domain") == 0) opt.domain = {-3.141592653589793, 3.141592653589793};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(opt, mode);
        if (figures->parsed()) {
            if (figures->count("--domain")) {
                if (opt.domain.size() != 2)
                    fail(lineuler::ErrorCode::InvalidInput, "--domain needs bounds a,b");
                fig.x_lo = opt.domain[0];
                fig.x_hi = opt.domain[1];
            }
            lineuler::cli::write_figure(fig, opt.out_path.empty() ? "." : opt.out_path, opt.svg);
            return 0;
        }
        if (bounds->parsed()) return run_bounds(opt);
        if (growth->parsed()) return run_growth(opt, nt);
        if (verify->parsed()) return run_verify(opt, verify_t, verify_h);
        if (invert->parsed()) return run_invert(opt, samples);
        if (spectral->parsed())
            return run_spectral(opt, alpha, spectral_t, coeffs, omega_f, probe, locus, direction,
                                radii);
    } catch (const lineuler::Error& e) {
        nlohmann::json err;
        err["error"] = {{"code", e.code_name()}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return e.code() == lineuler::ErrorCode::IntegrationFailure ? 3 : 2;
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = {{"code", "unexpected"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
