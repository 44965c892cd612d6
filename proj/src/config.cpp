#include "ncmems/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ncmems/errors.hpp"

namespace ncmems {

using nlohmann::json;

namespace {

const std::map<std::string, double, std::less<>>& unit_table(Quantity kind) {
    static const std::map<std::string, double, std::less<>> length{
        {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"µm", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}};
    static const std::map<std::string, double, std::less<>> area{
        {"m2", 1.0},      {"m^2", 1.0},      {"mm2", 1e-6},  {"mm^2", 1e-6},  {"um2", 1e-12},
        {"um^2", 1e-12},  {"µm2", 1e-12},    {"µm²", 1e-12}, {"µm^2", 1e-12}, {"nm2", 1e-18},
        {"nm^2", 1e-18}};
    static const std::map<std::string, double, std::less<>> voltage{{"V", 1.0}, {"mV", 1e-3}};
    static const std::map<std::string, double, std::less<>> time{
        {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"µs", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}};
    static const std::map<std::string, double, std::less<>> plain{};
    switch (kind) {
        case Quantity::length:
            return length;
        case Quantity::area:
            return area;
        case Quantity::voltage:
            return voltage;
        case Quantity::time:
            return time;
        case Quantity::plain:
            return plain;
    }
    return plain;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

double read_value(const json& node, Quantity kind, const std::string& where) {
    if (node.is_number()) {
        return node.get<double>();
    }
    if (node.is_string()) {
        try {
            return parse_quantity(node.get<std::string>(), kind);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    throw ValidationError(where + ": expected a number or a unit string");
}

double required(const json& obj, const char* key, Quantity kind, const std::string& block) {
    if (!obj.contains(key)) {
        throw ValidationError(block + "." + key + " is required");
    }
    return read_value(obj.at(key), kind, block + "." + key);
}

double optional_value(const json& obj, const char* key, Quantity kind, const std::string& block, double fallback) {
    return obj.contains(key) ? read_value(obj.at(key), kind, block + "." + key) : fallback;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& block) {
    if (!obj.is_object()) {
        throw ValidationError(block + " must be an object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ValidationError("unknown key '" + key + "' in " + block);
        }
    }
}

MemsParams parse_mems(const json& j) {
    reject_unknown(j,
                   {"k", "m", "damping", "gap", "stopper", "area", "eps0", "geometry"},
                   "mems");
    MemsParams p;
    p.gap = required(j, "gap", Quantity::length, "mems");
    p.stopper = required(j, "stopper", Quantity::length, "mems");
    p.area = required(j, "area", Quantity::area, "mems");
    p.eps0 = optional_value(j, "eps0", Quantity::plain, "mems", kVacuumPermittivity);
    p.c = optional_value(j, "damping", Quantity::plain, "mems", 0.0);
    const bool lumped = j.contains("k") || j.contains("m");
    if (j.contains("geometry") == lumped) {
        throw ValidationError("mems needs exactly one of {k, m} or geometry");
    }
    if (lumped) {
        p.k = required(j, "k", Quantity::plain, "mems");
        p.m = required(j, "m", Quantity::plain, "mems");
    } else {
        const json& g = j.at("geometry");
        reject_unknown(g, {"length", "width", "thickness", "support_width", "support_length", "youngs_modulus",
                           "density"},
                       "mems.geometry");
        BeamGeometry b;
        const std::string blk = "mems.geometry";
        b.length = required(g, "length", Quantity::length, blk);
        b.width = required(g, "width", Quantity::length, blk);
        b.thickness = required(g, "thickness", Quantity::length, blk);
        b.support_width = required(g, "support_width", Quantity::length, blk);
        b.support_length = required(g, "support_length", Quantity::length, blk);
        b.youngs_modulus = required(g, "youngs_modulus", Quantity::plain, blk);
        b.density = required(g, "density", Quantity::plain, blk);
        const MemsParams derived = derive_mems_params(b, p.gap, p.stopper, p.area, p.eps0);
        p.k = derived.k;
        p.m = derived.m;
    }
    p.validate();
    return p;
}

AdhesionParams parse_adhesion(const json& j, bool& enabled) {
    reject_unknown(j, {"enabled", "c1", "c2", "hamaker", "lambda", "contact_area", "sigma_t", "sigma_s", "gc"},
                   "adhesion");
    enabled = j.value("enabled", true);
    AdhesionParams a = default_adhesion();
    const double area = optional_value(j, "contact_area", Quantity::area, "adhesion", a.contact_area);
    const bool hamaker = j.contains("hamaker") || j.contains("lambda");
    if (hamaker && (j.contains("c1") || j.contains("c2"))) {
        throw ValidationError("adhesion needs either (c1, c2) or (hamaker, lambda), not both");
    }
    if (hamaker) {
        a = AdhesionParams::from_hamaker(required(j, "hamaker", Quantity::plain, "adhesion"),
                                         required(j, "lambda", Quantity::length, "adhesion"), area);
    } else {
        a.c1 = optional_value(j, "c1", Quantity::plain, "adhesion", a.c1);
        a.c2 = optional_value(j, "c2", Quantity::plain, "adhesion", a.c2);
        a.contact_area = area;
    }
    a.sigma_t = optional_value(j, "sigma_t", Quantity::length, "adhesion", 0.0);
    a.sigma_s = optional_value(j, "sigma_s", Quantity::length, "adhesion", 0.0);
    if (j.contains("gc")) {
        a.gc_override = read_value(j.at("gc"), Quantity::length, "adhesion.gc");
    } else if (j.contains("sigma_t") || j.contains("sigma_s")) {
        a.gc_override.reset();
    }
    a.validate();
    return a;
}

SolverOptions parse_solver(const json& j) {
    reject_unknown(j, {"profile", "grid_points", "voltage_tol", "pull_out_tol", "pull_out_floor", "gc_tol",
                       "thickness_tol"},
                   "solver");
    SolverOptions o = j.contains("profile") ? tolerance_profile(j.at("profile").get<std::string>())
                                            : default_solver_options();
    o.grid_points = j.value("grid_points", o.grid_points);
    o.voltage_tol = optional_value(j, "voltage_tol", Quantity::voltage, "solver", o.voltage_tol);
    o.pull_out_tol = optional_value(j, "pull_out_tol", Quantity::voltage, "solver", o.pull_out_tol);
    o.pull_out_floor = optional_value(j, "pull_out_floor", Quantity::voltage, "solver", o.pull_out_floor);
    o.gc_tol = optional_value(j, "gc_tol", Quantity::length, "solver", o.gc_tol);
    o.thickness_tol = optional_value(j, "thickness_tol", Quantity::length, "solver", o.thickness_tol);
    if (o.grid_points < 16 || !(o.voltage_tol > 0.0) || !(o.pull_out_tol > 0.0) || !(o.gc_tol > 0.0) ||
        !(o.thickness_tol > 0.0)) {
        throw ValidationError("solver tolerances must be positive and grid_points at least 16");
    }
    return o;
}

}  // namespace

double parse_quantity(std::string_view text, Quantity kind) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data()) {
        throw ValidationError("cannot parse a number from '" + std::string(text) + "'");
    }
    const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
    if (unit.empty()) {
        return value;
    }
    const auto& table = unit_table(kind);
    const auto it = table.find(unit);
    if (it == table.end()) {
        throw ValidationError("unknown unit '" + std::string(unit) + "' in '" + std::string(text) + "'");
    }
    return value * it->second;
}

AdhesionParams default_adhesion() {
    AdhesionParams a;
    a.c1 = 1e-20;
    a.c2 = 1e-80;
    a.contact_area = 16e-12;
    a.gc_override = 10e-9;
    return a;
}

HybridSystem DeviceConfig::system(bool with_adhesion) const {
    HybridSystem s;
    s.mems = mems;
    s.ferro = ferro;
    if (with_adhesion) {
        s.adhesion = adhesion.value_or(default_adhesion());
    }
    s.validate();
    return s;
}

DeviceConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"mems", "ferro", "adhesion", "solver"}, "config");
    if (!j.contains("mems")) {
        throw ValidationError("config.mems is required");
    }
    DeviceConfig cfg;
    try {
        cfg.mems = parse_mems(j.at("mems"));
        cfg.solver = j.contains("solver") ? parse_solver(j.at("solver")) : default_solver_options();
        if (j.contains("adhesion")) {
            cfg.adhesion = parse_adhesion(j.at("adhesion"), cfg.adhesion_enabled);
        }
        if (j.contains("ferro")) {
            const json& f = j.at("ferro");
            reject_unknown(f, {"alpha", "beta", "gamma", "thickness", "area", "design"}, "ferro");
            cfg.material.alpha_f = required(f, "alpha", Quantity::plain, "ferro");
            cfg.material.beta_f = required(f, "beta", Quantity::plain, "ferro");
            cfg.material.gamma_f = optional_value(f, "gamma", Quantity::plain, "ferro", 0.0);
            cfg.material.validate();
            const bool explicit_device = f.contains("thickness") || f.contains("area");
            if (explicit_device == f.contains("design")) {
                throw ValidationError("ferro needs exactly one of {thickness, area} or design");
            }
            if (explicit_device) {
                cfg.ferro = FerroDevice(cfg.material, required(f, "thickness", Quantity::length, "ferro"),
                                        required(f, "area", Quantity::area, "ferro"));
            } else {
                const json& d = f.at("design");
                reject_unknown(d, {"v_spi", "v_po"}, "ferro.design");
                DesignTargets t;
                t.v_hspi = required(d, "v_spi", Quantity::voltage, "ferro.design");
                t.v_hpo = optional_value(d, "v_po", Quantity::voltage, "ferro.design", 0.0);
                cfg.design = t;
                cfg.ferro = design_ferroelectric(cfg.mems, t, cfg.material).device;
            }
        } else {
            cfg.ferro = FerroDevice::disabled();
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config schema error: ") + e.what());
    }
    return cfg;
}

DeviceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

DeviceConfig default_config() {
    return parse_config(R"({
  "mems": {"k": 1.52, "m": 5.6e-11, "gap": "2 um", "stopper": "0.15 um", "area": "1.44e-8 m2"},
  "ferro": {"alpha": -2.88e9, "beta": 3.56e11, "gamma": 0, "design": {"v_spi": "0.8 V", "v_po": "0 V"}},
  "adhesion": {"enabled": false, "c1": 1e-20, "c2": 1e-80, "contact_area": "16 um2", "gc": "10 nm"}
})");
}

std::string dump_config(const DeviceConfig& cfg) {
    json j;
    j["mems"] = {{"k", cfg.mems.k},       {"m", cfg.mems.m},       {"damping", cfg.mems.c},
                 {"gap", cfg.mems.gap},   {"stopper", cfg.mems.stopper}, {"area", cfg.mems.area},
                 {"eps0", cfg.mems.eps0}};
    if (cfg.ferro.enabled()) {
        j["ferro"] = {{"alpha", cfg.material.alpha_f},
                      {"beta", cfg.material.beta_f},
                      {"gamma", cfg.material.gamma_f},
                      {"thickness", cfg.ferro.thickness()},
                      {"area", cfg.ferro.area()}};
    }
    if (cfg.adhesion) {
        const auto& a = *cfg.adhesion;
        j["adhesion"] = {{"enabled", cfg.adhesion_enabled}, {"c1", a.c1}, {"c2", a.c2},
                         {"contact_area", a.contact_area}, {"sigma_t", a.sigma_t}, {"sigma_s", a.sigma_s}};
        if (a.gc_override) {
            j["adhesion"]["gc"] = *a.gc_override;
        }
    }
    j["solver"] = {{"grid_points", cfg.solver.grid_points}, {"voltage_tol", cfg.solver.voltage_tol},
                   {"pull_out_tol", cfg.solver.pull_out_tol}, {"pull_out_floor", cfg.solver.pull_out_floor},
                   {"gc_tol", cfg.solver.gc_tol}, {"thickness_tol", cfg.solver.thickness_tol}};
    return j.dump(2);
}

}  // namespace ncmems
