#include "ncmems/adhesion.hpp"

#include <cmath>

#include "ncmems/errors.hpp"

namespace ncmems {

AdhesionParams AdhesionParams::from_hamaker(double hamaker, double lambda, double contact_area) {
    if (!(hamaker > 0.0) || !(lambda > 0.0)) {
        throw ValidationError("Hamaker constant and spacing must be positive");
    }
    AdhesionParams p;
    const double l3 = lambda * lambda * lambda;
    p.c1 = hamaker / (6.0 * kPi);
    p.c2 = hamaker * l3 * l3 / (6.0 * kPi);
    p.contact_area = contact_area;
    return p;
}

void AdhesionParams::validate() const {
    if (!(c1 > 0.0) || !(c2 > 0.0) || !(contact_area > 0.0)) {
        throw ValidationError("adhesion constants C1, C2 and contact area must be positive");
    }
    if (!(sigma_t >= 0.0) || !(sigma_s >= 0.0)) {
        throw ValidationError("roughness must be non-negative");
    }
    if (gc_override && !(*gc_override >= 0.0)) {
        throw ValidationError("effective contact gap must be non-negative");
    }
}

double AdhesionParams::contact_gap() const {
    return gc_override ? *gc_override : effective_gap(sigma_t, sigma_s);
}

double effective_gap(double sigma_t, double sigma_s) {
    if (sigma_t < 0.0 || sigma_s < 0.0) {
        throw ValidationError("roughness must be non-negative");
    }
    return std::hypot(sigma_t, sigma_s);
}

double stopper_gap(double x, const MemsParams& mems) {
    const double delta = mems.gap - mems.stopper - x;
    if (!(delta > 0.0)) {
        throw DomainError("electrode penetrates the stopper plane (delta <= 0)");
    }
    return delta;
}

double lj_force(double x, const AdhesionParams& p, const MemsParams& mems) {
    const double d = stopper_gap(x, mems);
    const double d3 = d * d * d;
    return p.c1 * p.contact_area / d3 - p.c2 * p.contact_area / (d3 * d3 * d3);
}

double lj_potential(double x, const AdhesionParams& p, const MemsParams& mems) {
    const double d = stopper_gap(x, mems);
    const double d2 = d * d;
    const double d8 = d2 * d2 * d2 * d2;
    return -p.c1 * p.contact_area / (2.0 * d2) + p.c2 * p.contact_area / (8.0 * d8);
}

double lj_equilibrium_spacing(const AdhesionParams& p) { return std::pow(p.c2 / p.c1, 1.0 / 6.0); }

}  // namespace ncmems
