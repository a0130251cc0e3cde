#include "figures.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include "lineuler/solutions.hpp"
#include "output.hpp"

namespace lineuler::cli {

void FigureSpec::validate() const {
    static const std::set<std::string> known = {"1a", "1b", "1c", "2a", "2b",
                                                "2c", "3a", "3b", "4a", "4b"};
    if (!known.count(id))
        fail(ErrorCode::InvalidInput, "unknown figure id \"" + id + "\"");
    if (t_max < 0.0 || dt < 0.0)
        fail(ErrorCode::InvalidInput, "figure t_max and dt must be >= 0");
    if (!(x_hi > x_lo) || !(dx > 0.0))
        fail(ErrorCode::InvalidInput, "figure x range must satisfy x_hi > x_lo, dx > 0");
}

Scenario illustration_scenario(bool compact_support) {
    Scenario s;
    s.gas.U0 = 80.0;
    s.gas.c0 = 345.0;
    s.gas.rho0 = 1.20;
    for (int i = 0; i < 4; ++i)
        s.modes[static_cast<std::size_t>(i)] = WaveMode{1.0, 1.0, 1.0, i + 1};
    s.profiles[0] = compact_support ? Profile::truncated_sin(-1.0, 1.0) : Profile::sine();
    s.forcing = Forcing{s.gas.U0 - s.gas.c0 * std::sqrt(3.0)};
    s.validate();
    return s;
}

std::string write_figure(const FigureSpec& spec, const std::string& out_dir, bool svg) {
    spec.validate();
    const char family = spec.id[0];
    const char variant = spec.id[1];
    const bool time_series = family == '1' || family == '2';

    const double t_max = spec.t_max > 0.0 ? spec.t_max : (time_series ? 3600.0 : 600.0);
    const double dt = spec.dt > 0.0 ? spec.dt : (time_series ? 0.01 : 1.0);
    if (t_max / dt > 2e8 || (spec.x_hi - spec.x_lo) / spec.dx > 2e8)
        fail(ErrorCode::InvalidInput, "figure sampling would exceed 2e8 rows");

    const Scenario scenario = illustration_scenario(family == '4');
    std::filesystem::create_directories(out_dir);
    const std::string csv_path =
        (std::filesystem::path(out_dir) / ("figure_" + spec.id + ".csv")).string();
    CsvWriter csv(csv_path);

    std::vector<double> svg_x, svg_y;

    if (time_series) {
        // amplitude variation at one representative point of the stated
        // plane; the field depends on the plane only through x + y + z
        const double plane = variant == 'a' ? 0.0 : (variant == 'b' ? 6.0 : 100.0);
        const bool pressure = family == '2';
        csv.header(pressure ? "t,p" : "t,vx");
        const long steps = std::lround(t_max / dt);
        for (long j = 0; j <= steps; ++j) {
            const double t = static_cast<double>(j) * dt;
            const FieldSample f = evaluate_forced(scenario, plane, 0.0, 0.0, t);
            const double v = pressure ? f.p : f.vx;
            csv.row({t, v});
            if (svg) {
                svg_x.push_back(t);
                svg_y.push_back(v);
            }
        }
    } else {
        const bool pressure = variant == 'b';
        csv.header("t,x,value");
        const long tsteps = std::lround(t_max / dt);
        const long xsteps = std::lround((spec.x_hi - spec.x_lo) / spec.dx);
        for (long j = 0; j <= tsteps; ++j) {
            const double t = static_cast<double>(j) * dt;
            for (long i = 0; i <= xsteps; ++i) {
                const double x = spec.x_lo + static_cast<double>(i) * spec.dx;
                const FieldSample f = evaluate_forced(scenario, x, 0.0, 0.0, t);
                const double v = pressure ? f.p : f.vx;
                csv.row({t, x, v});
                if (svg && j == tsteps) {
                    svg_x.push_back(x);
                    svg_y.push_back(v);
                }
            }
        }
    }

    if (svg) {
        const std::string svg_path =
            (std::filesystem::path(out_dir) / ("figure_" + spec.id + ".svg")).string();
        write_svg_polyline(svg_path, svg_x, svg_y, time_series ? "t [s]" : "x",
                           (family == '2' || (family >= '3' && variant == 'b')) ? "p'" : "v'_x");
    }
    return csv_path;
}

} // namespace lineuler::cli
