#pragma once

#include <array>
#include <functional>
#include <optional>

#include "lineuler/grid.hpp"
#include "lineuler/model.hpp"
#include "lineuler/phase_spaces.hpp"
#include "lineuler/quadrature.hpp"

namespace lineuler {

/// Finite-difference residuals of the linearized Euler system over an
/// interior grid: per-equation max |residual|, the step used, the largest
/// field magnitude met by the stencils, and (when run at h and h/2) the
/// observed convergence order. Equations whose residual sits at the
/// difference-quotient roundoff floor are reported with order 2: there is no
/// truncation error left to measure.
struct ResidualReport {
    std::array<double, 4> max_residual{};
    double h = 0.0;
    double field_scale = 0.0;
    std::optional<std::array<double, 4>> order;
};

/// Time harmonic source description for the forced residual: the amplitude
/// field A = (F, G, H, P) and its frequency.
struct ForcingTerm {
    DataEvaluator amplitude;
    double omega_f = 0.0;
};

/// Substitutes second-order central differences of the field into the four
/// equations at every grid point; the forced variant subtracts the source
/// h(t) A sin(omega_f t). Forced checks require t >= 2h so no stencil leg
/// differences across the source switch-on. Points for which `skip` returns
/// true are left out of the report.
ResidualReport pde_residual(const FieldEvaluator& field, const GasParameters& gas,
                            const GridSpec& grid, double t, double h,
                            const std::optional<ForcingTerm>& forcing = std::nullopt,
                            const std::function<bool(double, double, double)>& skip = {});

/// Residual of a scenario's own evaluator (instantaneous, or forced when the
/// scenario carries forcing). Grid points whose branch arguments fall within
/// a stencil width of a profile kink are skipped: the family's smoothness
/// hypothesis fails there by construction.
ResidualReport scenario_residual(const Scenario& s, const GridSpec& grid, double t, double h,
                                 const QuadratureSpec& quad = {});

/// Runs scenario_residual at h and h/2 and reports the per-equation observed
/// order log2(res(h) / res(h/2)).
ResidualReport scenario_residual_order(const Scenario& s, const GridSpec& grid, double t,
                                       double h, const QuadratureSpec& quad = {});

/// Central-difference curl components of the velocity field at one point:
/// (dvx/dy - dvy/dx, dvy/dz - dvz/dy, dvz/dx - dvx/dz). A component bounded
/// away from zero witnesses that no velocity potential exists.
std::array<double, 3> curl_components(const FieldEvaluator& field, double x, double y,
                                      double z, double t, double h);

/// Ground truth for every forced closed form: direct adaptive quadrature of
/// all four Duhamel branch integrals, no closed-form dispatch.
FieldSample duhamel_oracle(const Scenario& s, double x, double y, double z, double t,
                           const QuadratureSpec& quad = {});

} // namespace lineuler
