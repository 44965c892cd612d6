#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ncmems/adhesion.hpp"
#include "ncmems/ferro.hpp"
#include "ncmems/hybrid.hpp"
#include "ncmems/options.hpp"

// Device configuration files. Dimensional values are raw SI numbers or
// strings with a unit suffix such as "2 um", "45.24 nm", "9.87 um2".

namespace ncmems {

enum class Quantity { length, area, voltage, time, plain };

/// Parses "<number> [unit]" for the given quantity into SI. Throws ValidationError.
[[nodiscard]] double parse_quantity(std::string_view text, Quantity kind);

struct DeviceConfig {
    MemsParams mems;
    FerroMaterial material;
    FerroDevice ferro;                      // explicit or designed
    std::optional<DesignTargets> design;    // set when the ferro block asked for a design
    std::optional<AdhesionParams> adhesion; // configured parameters
    bool adhesion_enabled = false;          // include adhesion in default analyses
    SolverOptions solver;

    /// System with or without the configured adhesion block. Asking for
    /// adhesion without a block uses the default constants and g_c = 10 nm.
    [[nodiscard]] HybridSystem system(bool with_adhesion) const;
    [[nodiscard]] HybridSystem system() const { return system(adhesion_enabled); }
};

[[nodiscard]] DeviceConfig parse_config(std::string_view json_text);
[[nodiscard]] DeviceConfig load_config(const std::filesystem::path& path);

/// The stock hybrid device with the ferroelectric designed for (0.8 V, 0 V).
[[nodiscard]] DeviceConfig default_config();

/// Serializes with explicit thickness and area (design block resolved).
[[nodiscard]] std::string dump_config(const DeviceConfig& cfg);

/// The adhesion defaults used when none are configured: C1 = 1e-20 N m,
/// C2 = 1e-80 N m^7, A_C = 16 um^2, g_c = 10 nm.
[[nodiscard]] AdhesionParams default_adhesion();

}  // namespace ncmems
