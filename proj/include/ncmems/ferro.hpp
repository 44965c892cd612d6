#pragma once

#include "ncmems/core.hpp"

namespace ncmems {

/// Landau anisotropy coefficients of a single-domain ferroelectric.
struct FerroMaterial {
    double alpha_f = 0.0;  // m/F, negative in the ferroelectric phase
    double beta_f = 0.0;   // m^5/F/C^2
    double gamma_f = 0.0;  // m^9/F/C^4

    void validate() const;
};

struct LumpedCoeffs {
    double alpha = 0.0;  // 1/F, positive (V_F = -alpha q + ...)
    double beta = 0.0;   // 1/(F C^2)
    double gamma = 0.0;  // 1/(F C^4)
};

/// alpha = -alpha_F t_F / A_F, beta = beta_F t_F / A_F^3, gamma = gamma_F t_F / A_F^5
[[nodiscard]] LumpedCoeffs lumped_coeffs(const FerroMaterial& material, double thickness, double area);

/// Ferroelectric capacitor of given thickness and area. Thickness 0 is
/// accepted and disables the ferroelectric (all lumped coefficients vanish),
/// which reduces every hybrid quantity to the bare actuator.
class FerroDevice {
public:
    FerroDevice() = default;
    FerroDevice(FerroMaterial material, double thickness, double area);

    /// A zero-thickness device, i.e. no ferroelectric in series.
    static FerroDevice disabled();

    [[nodiscard]] const FerroMaterial& material() const { return material_; }
    [[nodiscard]] double thickness() const { return thickness_; }
    [[nodiscard]] double area() const { return area_; }
    [[nodiscard]] const LumpedCoeffs& coeffs() const { return coeffs_; }
    [[nodiscard]] bool enabled() const { return thickness_ > 0.0; }

    /// Same material and area, different thickness.
    [[nodiscard]] FerroDevice with_thickness(double thickness) const;

private:
    FerroMaterial material_{};
    double thickness_ = 0.0;
    double area_ = 1.0;
    LumpedCoeffs coeffs_{};
};

/// V_F = -alpha q + beta q^3 + gamma q^5
[[nodiscard]] double vf_of_q(double q, const FerroDevice& dev);

/// dV_F/dq
[[nodiscard]] double dvf_dq(double q, const FerroDevice& dev);

/// U_F = -1/2 alpha q^2 + 1/4 beta q^4 + 1/6 gamma q^6 - V_F q. The hybrid
/// pipeline always passes v_f_applied = vf_of_q(q).
[[nodiscard]] double landau_energy(double q, double v_f_applied, const FerroDevice& dev);

struct DesignTargets {
    double v_hspi = 0.0;  // target hybrid static pull-in (V)
    double v_hpo = 0.0;   // target hybrid pull-out (V); only 0 is supported
};

struct DesignRatios {
    double r_alpha = 0.0;  // r_alphaN
    double r_beta = 0.0;   // r_betaN
};

struct DesignResult {
    FerroDevice device;
    DesignRatios ratios;
};

/// r_alphaN = 1 - t_F A_M |alpha_F| eps0 / (g_o A_F)
/// r_betaN  = 1 - 2 beta_F k t_F eps0^2 A_M^2 / A_F^3
[[nodiscard]] DesignRatios design_ratios(const MemsParams& p, const FerroDevice& dev);

/// Analytical hybrid static pull-in, r_alphaN sqrt(r_alphaN / r_betaN * 8 k g_o^3 / (27 eps0 A_M)).
[[nodiscard]] double analytic_hybrid_pull_in(const MemsParams& p, const DesignRatios& r);

/// Closed-form (t_F, A_F) meeting the pull-in target with zero pull-out
/// voltage, where pull-out at 0 V requires r_alphaN / r_betaN = (g_o - h_s) / g_o.
/// Throws InfeasibleDesignError when either ratio leaves (0, 1).
[[nodiscard]] DesignResult design_ferroelectric(const MemsParams& p, const DesignTargets& targets,
                                                const FerroMaterial& material);

}  // namespace ncmems
