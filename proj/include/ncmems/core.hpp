#pragma once

// Lumped 1-DOF actuator parameters. All quantities are base SI.

namespace ncmems {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kVacuumPermittivity = 8.854e-12;  // F/m

/// Clamped-clamped beam with fixed-fixed flexure.
struct BeamGeometry {
    double length = 0.0;          // L (m)
    double width = 0.0;           // W (m)
    double thickness = 0.0;       // T (m)
    double support_width = 0.0;   // w_s (m)
    double support_length = 0.0;  // l_s (m)
    double youngs_modulus = 0.0;  // E (Pa)
    double density = 0.0;         // D (kg/m^3)

    void validate() const;
};

struct MemsParams {
    double k = 0.0;        // spring constant (N/m)
    double m = 0.0;        // effective mass (kg)
    double c = 0.0;        // damping (N s/m)
    double gap = 0.0;      // initial air gap g_o (m)
    double stopper = 0.0;  // stopper height h_s (m)
    double area = 0.0;     // actuation area A_M (m^2)
    double eps0 = kVacuumPermittivity;

    void validate() const;

    /// Maximum travel before the electrode lands on the stoppers.
    [[nodiscard]] double travel() const { return gap - stopper; }
    /// eps0 * A_M, the numerator of every parallel-plate term.
    [[nodiscard]] double eps_area() const { return eps0 * area; }
};

struct TimescaleReport {
    double f0 = 0.0;     // resonant frequency (Hz)
    double t_sys = 0.0;  // system rise time (s), always 0.35 / f0
};

/// k = 4 E w_s (T / l_s)^3
[[nodiscard]] double spring_constant(const BeamGeometry& geom);

/// m = 0.35 D L W T
[[nodiscard]] double effective_mass(const BeamGeometry& geom);

/// Derives k and m from the beam. A_M is taken explicitly: the tabulated
/// actuation area is smaller than L*W and is not recomputed.
[[nodiscard]] MemsParams derive_mems_params(const BeamGeometry& geom, double gap, double stopper,
                                            double actuation_area, double eps0 = kVacuumPermittivity);

[[nodiscard]] TimescaleReport system_timescales(const MemsParams& p);

}  // namespace ncmems
