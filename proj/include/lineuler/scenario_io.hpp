#pragma once

#include <string>

#include <json.hpp>

#include "lineuler/model.hpp"

namespace lineuler {

/// Parses a scenario document. The schema is strict: unknown keys are
/// rejected anywhere in the document.
///
///   {
///     "gas":      {"U0": .., "rho0": .., "c0": .., "p0": ..?,
///                  "T0": ..?, "R": ..?, "cp": ..?, "cv": ..?},
///     "modes":    [{"k": .., "l": .., "m": ..} x4],   // branches 1..4
///     "profiles": [{"type": "sin", "scale": ..?} x4], // tagged variants
///     "forcing":  {"omega_f": ..} | null
///   }
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

} // namespace lineuler
