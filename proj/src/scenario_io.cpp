#include "lineuler/scenario_io.hpp"

#include <fstream>
#include <set>

namespace lineuler {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(ErrorCode::InvalidInput, "unknown key \"" + it.key() + "\" in " + where);
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        fail(ErrorCode::InvalidInput, "missing key \"" + key + "\" in " + where);
    if (!obj[key].is_number())
        fail(ErrorCode::InvalidInput, "key \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

std::optional<double> get_optional(const json& obj, const std::string& key,
                                   const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number())
        fail(ErrorCode::InvalidInput, "key \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

GasParameters gas_from_json(const json& obj) {
    if (!obj.is_object()) fail(ErrorCode::InvalidInput, "\"gas\" must be an object");
    reject_unknown_keys(obj, {"U0", "rho0", "c0", "p0", "T0", "R", "cp", "cv"}, "gas");
    GasParameters g;
    g.U0 = get_number(obj, "U0", "gas");
    g.rho0 = get_number(obj, "rho0", "gas");
    g.c0 = get_number(obj, "c0", "gas");
    g.p0 = get_optional(obj, "p0", "gas");
    g.T0 = get_optional(obj, "T0", "gas");
    g.R = get_optional(obj, "R", "gas");
    g.cp = get_optional(obj, "cp", "gas");
    g.cv = get_optional(obj, "cv", "gas");
    return g;
}

Profile profile_from_json(const json& obj, int branch) {
    const std::string where = "profiles[" + std::to_string(branch - 1) + "]";
    if (!obj.is_object()) fail(ErrorCode::InvalidInput, where + " must be an object");
    if (!obj.contains("type") || !obj["type"].is_string())
        fail(ErrorCode::InvalidInput, where + " needs a string \"type\" tag");
    const std::string type = obj["type"].get<std::string>();
    const double scale = get_optional(obj, "scale", where).value_or(1.0);

    if (type == "zero") {
        reject_unknown_keys(obj, {"type", "scale"}, where);
        return Profile::zero();
    }
    if (type == "sin") {
        reject_unknown_keys(obj, {"type", "scale"}, where);
        return Profile::sine(scale);
    }
    if (type == "cos") {
        reject_unknown_keys(obj, {"type", "scale"}, where);
        return Profile::cosine(scale);
    }
    if (type == "exp") {
        reject_unknown_keys(obj, {"type", "scale", "a"}, where);
        return Profile::exponential(get_number(obj, "a", where), scale);
    }
    if (type == "square_exp") {
        reject_unknown_keys(obj, {"type", "scale"}, where);
        return Profile::square_exponential(scale);
    }
    if (type == "smooth_bump") {
        reject_unknown_keys(obj, {"type", "scale", "r"}, where);
        return Profile::smooth_bump(get_number(obj, "r", where), scale);
    }
    if (type == "truncated_sin") {
        reject_unknown_keys(obj, {"type", "scale", "a", "b"}, where);
        return Profile::truncated_sin(get_number(obj, "a", where), get_number(obj, "b", where),
                                      scale);
    }
    if (type == "tabulated") {
        reject_unknown_keys(obj, {"type", "scale", "knots"}, where);
        if (!obj.contains("knots") || !obj["knots"].is_array())
            fail(ErrorCode::InvalidInput, where + " needs a \"knots\" array");
        std::vector<std::pair<double, double>> knots;
        for (const auto& kn : obj["knots"]) {
            if (!kn.is_array() || kn.size() != 2 || !kn[0].is_number() || !kn[1].is_number())
                fail(ErrorCode::InvalidInput, where + " knots must be [xi, value] pairs");
            knots.emplace_back(kn[0].get<double>(), kn[1].get<double>());
        }
        return Profile::tabulated(std::move(knots), scale);
    }
    fail(ErrorCode::InvalidInput, where + " has unknown profile type \"" + type + "\"");
}

json profile_to_json(const Profile& p) {
    json obj;
    switch (p.kind()) {
        case Profile::Kind::Zero:
            obj["type"] = "zero";
            break;
        case Profile::Kind::Sin:
            obj["type"] = "sin";
            break;
        case Profile::Kind::Cos:
            obj["type"] = "cos";
            break;
        case Profile::Kind::Exp:
            obj["type"] = "exp";
            obj["a"] = p.exp_rate();
            break;
        case Profile::Kind::SquareExp:
            obj["type"] = "square_exp";
            break;
        case Profile::Kind::SmoothBump:
            obj["type"] = "smooth_bump";
            obj["r"] = p.bump_radius();
            break;
        case Profile::Kind::TruncatedSin:
            obj["type"] = "truncated_sin";
            obj["a"] = p.cut_lo();
            obj["b"] = p.cut_hi();
            break;
        case Profile::Kind::Tabulated: {
            obj["type"] = "tabulated";
            json knots = json::array();
            for (const auto& kn : p.knots()) knots.push_back({kn.first, kn.second});
            obj["knots"] = std::move(knots);
            break;
        }
    }
    if (p.scale() != 1.0) obj["scale"] = p.scale();
    return obj;
}

} // namespace

Scenario scenario_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail(ErrorCode::InvalidInput, "scenario document must be an object");
    reject_unknown_keys(doc, {"gas", "modes", "profiles", "forcing"}, "scenario");
    for (const char* key : {"gas", "modes", "profiles"})
        if (!doc.contains(key))
            fail(ErrorCode::InvalidInput, std::string("scenario is missing \"") + key + "\"");

    Scenario s;
    s.gas = gas_from_json(doc["gas"]);

    if (!doc["modes"].is_array() || doc["modes"].size() != 4)
        fail(ErrorCode::InvalidInput, "\"modes\" must be an array of exactly 4 objects");
    for (int i = 0; i < 4; ++i) {
        const auto& obj = doc["modes"][static_cast<std::size_t>(i)];
        const std::string where = "modes[" + std::to_string(i) + "]";
        if (!obj.is_object()) fail(ErrorCode::InvalidInput, where + " must be an object");
        reject_unknown_keys(obj, {"k", "l", "m"}, where);
        WaveMode& mode = s.modes[static_cast<std::size_t>(i)];
        mode.k = get_number(obj, "k", where);
        mode.l = get_number(obj, "l", where);
        mode.m = get_number(obj, "m", where);
        mode.branch = i + 1;
    }

    if (!doc["profiles"].is_array() || doc["profiles"].size() != 4)
        fail(ErrorCode::InvalidInput, "\"profiles\" must be an array of exactly 4 objects");
    for (int i = 0; i < 4; ++i)
        s.profiles[static_cast<std::size_t>(i)] =
            profile_from_json(doc["profiles"][static_cast<std::size_t>(i)], i + 1);

    if (doc.contains("forcing") && !doc["forcing"].is_null()) {
        const auto& obj = doc["forcing"];
        if (!obj.is_object()) fail(ErrorCode::InvalidInput, "\"forcing\" must be an object or null");
        reject_unknown_keys(obj, {"omega_f"}, "forcing");
        s.forcing = Forcing{get_number(obj, "omega_f", "forcing")};
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open scenario file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidInput, "scenario file " + path + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json doc;
    doc["gas"] = {{"U0", s.gas.U0}, {"rho0", s.gas.rho0}, {"c0", s.gas.c0}};
    if (s.gas.p0) doc["gas"]["p0"] = *s.gas.p0;
    if (s.gas.T0) doc["gas"]["T0"] = *s.gas.T0;
    if (s.gas.R) doc["gas"]["R"] = *s.gas.R;
    if (s.gas.cp) doc["gas"]["cp"] = *s.gas.cp;
    if (s.gas.cv) doc["gas"]["cv"] = *s.gas.cv;

    doc["modes"] = nlohmann::json::array();
    for (const WaveMode& m : s.modes)
        doc["modes"].push_back({{"k", m.k}, {"l", m.l}, {"m", m.m}});

    doc["profiles"] = nlohmann::json::array();
    for (const Profile& p : s.profiles) doc["profiles"].push_back(profile_to_json(p));

    doc["forcing"] = s.forcing ? nlohmann::json{{"omega_f", s.forcing->omega_f}}
                               : nlohmann::json(nullptr);
    return doc;
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::InvalidInput, "cannot write scenario file: " + path);
    out << scenario_to_json(s).dump(2) << "\n";
}

} // namespace lineuler
