#pragma once

#include <optional>

#include "ncmems/core.hpp"

// Lennard-Jones (van der Waals) contact adhesion between the movable
// electrode and the stopper, with a roughness-limited contact plane.

namespace ncmems {

struct AdhesionParams {
    double c1 = 1e-20;            // attractive constant (N m)
    double c2 = 1e-80;            // repulsive constant (N m^7)
    double contact_area = 16e-12; // A_C (m^2)
    double sigma_t = 0.0;         // roughness of the top electrode (m)
    double sigma_s = 0.0;         // roughness of the stopper (m)
    std::optional<double> gc_override;  // explicit effective gap (m)

    /// Builds (C1, C2) from a Hamaker constant and equilibrium spacing:
    /// C1 = A_H / (6 pi), C2 = A_H Lambda^6 / (6 pi).
    static AdhesionParams from_hamaker(double hamaker, double lambda, double contact_area);

    void validate() const;

    /// Effective gap at contact: the override if set, otherwise sqrt(sigma_t^2 + sigma_s^2).
    [[nodiscard]] double contact_gap() const;
};

/// sqrt(sigma_t^2 + sigma_s^2)
[[nodiscard]] double effective_gap(double sigma_t, double sigma_s);

/// Gap to the stopper plane, delta(x) = g_o - h_s - x. Throws DomainError if delta <= 0.
[[nodiscard]] double stopper_gap(double x, const MemsParams& mems);

/// C1 A_C / delta^3 - C2 A_C / delta^9, positive toward contact.
[[nodiscard]] double lj_force(double x, const AdhesionParams& p, const MemsParams& mems);

/// -C1 A_C / (2 delta^2) + C2 A_C / (8 delta^8)
[[nodiscard]] double lj_potential(double x, const AdhesionParams& p, const MemsParams& mems);

/// Spacing where the LJ force vanishes, (C2 / C1)^(1/6).
[[nodiscard]] double lj_equilibrium_spacing(const AdhesionParams& p);

}  // namespace ncmems
