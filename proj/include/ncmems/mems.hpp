#pragma once

#include "ncmems/core.hpp"

// Standalone parallel-plate actuator. +x points toward the fixed electrode.

namespace ncmems {

struct StandaloneMetrics {
    double v_spi = 0.0;  // static pull-in voltage (V)
    double x_spi = 0.0;  // travel range (m)
    double v_dpi = 0.0;  // dynamic pull-in voltage (V)
    double x_dpi = 0.0;  // dynamic pull-in displacement (m)
    double v_po = 0.0;   // pull-out voltage (V)
};

/// 1/2 eps0 A_M V_M^2 / (g_o - x). Throws DomainError when x >= g_o.
[[nodiscard]] double electrostatic_force(double x, double v_m, const MemsParams& p);

/// 1/2 k x^2 - 1/2 eps0 A_M V_M^2 / (g_o - x)
[[nodiscard]] double mems_potential(double x, double v_m, const MemsParams& p);

/// mems_potential plus the kinetic term 1/2 m xdot^2.
[[nodiscard]] double hamiltonian_standalone(double x, double xdot, double v_m, const MemsParams& p);

/// Closed-form pull-in / pull-out figures for the bare actuator.
[[nodiscard]] StandaloneMetrics standalone_metrics(const MemsParams& p);

}  // namespace ncmems
