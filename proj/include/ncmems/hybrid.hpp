#pragma once

#include <optional>
#include <vector>

#include "ncmems/adhesion.hpp"
#include "ncmems/core.hpp"
#include "ncmems/ferro.hpp"
#include "ncmems/polynomial.hpp"

// Ferroelectric capacitor in series with the actuator (V_in = V_F + V_M),
// described entirely in terms of the electrode displacement x.

namespace ncmems {

struct HybridSystem {
    MemsParams mems;
    FerroDevice ferro;
    std::optional<AdhesionParams> adhesion;

    /// Throws ValidationError on invalid parts. Zero-bias instability is not
    /// an error; query zero_bias_stable() and warn.
    void validate() const;

    /// r_alphaN > 0 and r_betaN > 0 (always true without a ferroelectric).
    [[nodiscard]] bool zero_bias_stable() const;

    /// Settled position after pull-in: g_o - h_s - g_c with adhesion,
    /// g_o - h_s without.
    [[nodiscard]] double contact_position() const;

    [[nodiscard]] HybridSystem without_adhesion() const;
    [[nodiscard]] HybridSystem with_adhesion(const AdhesionParams& a) const;
    [[nodiscard]] HybridSystem with_contact_gap(double gc) const;
    [[nodiscard]] HybridSystem with_thickness(double t_f) const;
};

struct HybridOperatingPoint {
    double x = 0.0;
    double v_in = 0.0;
    double q = 0.0;
    double v_f = 0.0;
    double v_m = 0.0;
};

struct ChargeSolution {
    double q = 0.0;
    bool multiple_roots = false;  // more than one real root was available
};

struct ChargeStep {
    double q = 0.0;
    bool fold = false;  // the tracked root vanished and the nearest one was taken
};

/// The quintic in q whose roots are the series-stack charges at (x, V_in):
/// q^5 [c gamma] + q^3 [c beta] + q [1 - c alpha] - c V_in with c = eps0 A_M / (g_o - x).
[[nodiscard]] OddQuintic charge_polynomial(double x, double v_in, const HybridSystem& sys);

[[nodiscard]] std::vector<double> charge_roots(double x, double v_in, const HybridSystem& sys);

/// Real root of the charge equation. With a hint, the root nearest to it;
/// otherwise q = 0 at V_in = 0 and else the smallest-|q| root whose sign
/// matches V_in (the branch through q = 0 at zero bias).
[[nodiscard]] ChargeSolution solve_charge(double x, double v_in, const HybridSystem& sys,
                                          std::optional<double> hint = std::nullopt);

/// One continuation step from q_prev. A fold is flagged when a critical
/// point of the charge polynomial separates q_prev from the chosen root.
[[nodiscard]] ChargeStep track_charge(double x, double v_in, const HybridSystem& sys, double q_prev);

/// Extreme real root with the given polarity (+1: largest, -1: smallest);
/// the charge held by an electrode pulled in at that polarity.
[[nodiscard]] double contact_charge(double x, double v_in, const HybridSystem& sys, int polarity = +1);

[[nodiscard]] HybridOperatingPoint operating_point(double x, double v_in, const HybridSystem& sys,
                                                   std::optional<double> hint = std::nullopt);

/// Potential at a known charge: U_F(q) with V_F = V_F(q), plus 1/2 k x^2 -
/// 1/2 eps0 A_M V_M^2 / (g_o - x), plus U_LJ when adhesion is configured.
[[nodiscard]] double potential_at_charge(double x, double v_in, double q, const HybridSystem& sys);

/// q^2 / (2 eps0 A_M) - k x (+ F_LJ), positive toward contact.
[[nodiscard]] double force_at_charge(double x, double q, const HybridSystem& sys);

/// Potential on the principal charge branch.
[[nodiscard]] double hybrid_potential(double x, double v_in, const HybridSystem& sys);

[[nodiscard]] double hamiltonian(double x, double xdot, double v_in, const HybridSystem& sys);

/// Net force on the principal charge branch; equals -d(hybrid_potential)/dx.
[[nodiscard]] double net_force(double x, double v_in, const HybridSystem& sys);

}  // namespace ncmems
