#include "ncmems/ferro.hpp"

#include <cmath>
#include <string>

#include "ncmems/errors.hpp"

namespace ncmems {

void FerroMaterial::validate() const {
    if (!std::isfinite(alpha_f) || !std::isfinite(beta_f) || !std::isfinite(gamma_f)) {
        throw ValidationError("ferroelectric coefficients must be finite");
    }
    if (!(alpha_f < 0.0)) {
        throw ValidationError("alpha_F must be negative (ferroelectric phase)");
    }
    if (gamma_f < 0.0) {
        throw ValidationError("gamma_F must be non-negative");
    }
    if (gamma_f == 0.0 && !(beta_f > 0.0)) {
        throw ValidationError("beta_F must be positive when gamma_F = 0");
    }
}

LumpedCoeffs lumped_coeffs(const FerroMaterial& material, double thickness, double area) {
    if (!(thickness >= 0.0) || !(area > 0.0)) {
        throw ValidationError("ferroelectric thickness must be >= 0 and area > 0");
    }
    const double a2 = area * area;
    LumpedCoeffs c;
    c.alpha = -material.alpha_f * thickness / area;
    c.beta = material.beta_f * thickness / (a2 * area);
    c.gamma = material.gamma_f * thickness / (a2 * a2 * area);
    return c;
}

FerroDevice::FerroDevice(FerroMaterial material, double thickness, double area)
    : material_(material), thickness_(thickness), area_(area) {
    material_.validate();
    coeffs_ = lumped_coeffs(material_, thickness_, area_);
}

FerroDevice FerroDevice::disabled() { return FerroDevice{}; }

FerroDevice FerroDevice::with_thickness(double thickness) const {
    if (!enabled() && material_.alpha_f == 0.0) {
        throw ValidationError("cannot rescale a disabled ferroelectric without a material");
    }
    return FerroDevice(material_, thickness, area_);
}

double vf_of_q(double q, const FerroDevice& dev) {
    const auto& c = dev.coeffs();
    const double q2 = q * q;
    return q * (-c.alpha + q2 * (c.beta + q2 * c.gamma));
}

double dvf_dq(double q, const FerroDevice& dev) {
    const auto& c = dev.coeffs();
    const double q2 = q * q;
    return -c.alpha + q2 * (3.0 * c.beta + 5.0 * q2 * c.gamma);
}

double landau_energy(double q, double v_f_applied, const FerroDevice& dev) {
    const auto& c = dev.coeffs();
    const double q2 = q * q;
    return q2 * (-0.5 * c.alpha + q2 * (0.25 * c.beta + q2 * c.gamma / 6.0)) - v_f_applied * q;
}

DesignRatios design_ratios(const MemsParams& p, const FerroDevice& dev) {
    const auto& m = dev.material();
    const double t = dev.thickness();
    const double a = dev.area();
    DesignRatios r;
    r.r_alpha = 1.0 - t * p.area * std::fabs(m.alpha_f) * p.eps0 / (p.gap * a);
    r.r_beta = 1.0 - 2.0 * m.beta_f * p.k * t * p.eps0 * p.eps0 * p.area * p.area / (a * a * a);
    return r;
}

double analytic_hybrid_pull_in(const MemsParams& p, const DesignRatios& r) {
    const double g3 = p.gap * p.gap * p.gap;
    return r.r_alpha * std::sqrt(r.r_alpha / r.r_beta * 8.0 * p.k * g3 / (27.0 * p.eps_area()));
}

DesignResult design_ferroelectric(const MemsParams& p, const DesignTargets& targets,
                                  const FerroMaterial& material) {
    p.validate();
    material.validate();
    if (targets.v_hpo != 0.0) {
        throw ValidationError("design solver only supports a pull-out target of 0 V");
    }
    if (!(targets.v_hspi > 0.0)) {
        throw ValidationError("pull-in target must be positive");
    }
    if (!(material.beta_f > 0.0)) {
        throw ValidationError("design solver needs beta_F > 0");
    }

    const double g3 = p.gap * p.gap * p.gap;
    const double v_spi_sq = 8.0 * p.k * g3 / (27.0 * p.eps_area());
    const double rho = p.travel() / p.gap;

    DesignRatios r;
    r.r_alpha = targets.v_hspi / std::sqrt(rho * v_spi_sq);
    r.r_beta = r.r_alpha / rho;
    auto inside = [](double v) { return v > 0.0 && v < 1.0; };
    if (!inside(r.r_alpha) || !inside(r.r_beta)) {
        throw InfeasibleDesignError("targets imply r_alphaN = " + std::to_string(r.r_alpha) +
                                    ", r_betaN = " + std::to_string(r.r_beta) +
                                    " outside (0, 1)");
    }

    // t_F / A_F from r_alphaN, t_F / A_F^3 from r_betaN.
    const double t_over_a = (1.0 - r.r_alpha) * p.gap / (p.area * std::fabs(material.alpha_f) * p.eps0);
    const double t_over_a3 =
        (1.0 - r.r_beta) / (2.0 * material.beta_f * p.k * p.eps0 * p.eps0 * p.area * p.area);
    const double area = std::sqrt(t_over_a / t_over_a3);
    const double thickness = t_over_a * area;

    return DesignResult{FerroDevice(material, thickness, area), r};
}

}  // namespace ncmems
