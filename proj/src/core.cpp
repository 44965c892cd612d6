#include "ncmems/core.hpp"

#include <cmath>
#include <string>

#include "ncmems/errors.hpp"

namespace ncmems {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be strictly positive and finite");
    }
}

}  // namespace

void BeamGeometry::validate() const {
    require_positive(length, "beam length");
    require_positive(width, "beam width");
    require_positive(thickness, "beam thickness");
    require_positive(support_width, "support width");
    require_positive(support_length, "support length");
    require_positive(youngs_modulus, "Young's modulus");
    require_positive(density, "density");
}

void MemsParams::validate() const {
    require_positive(k, "spring constant k");
    require_positive(m, "mass m");
    require_positive(area, "actuation area A_M");
    require_positive(eps0, "permittivity eps0");
    require_positive(gap, "air gap g_o");
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw ValidationError("damping c must be non-negative");
    }
    if (!(stopper > 0.0 && stopper < gap)) {
        throw ValidationError("stopper height must satisfy 0 < h_s < g_o");
    }
}

double spring_constant(const BeamGeometry& geom) {
    geom.validate();
    const double ratio = geom.thickness / geom.support_length;
    return 4.0 * geom.youngs_modulus * geom.support_width * ratio * ratio * ratio;
}

double effective_mass(const BeamGeometry& geom) {
    geom.validate();
    return 0.35 * geom.density * geom.length * geom.width * geom.thickness;
}

MemsParams derive_mems_params(const BeamGeometry& geom, double gap, double stopper,
                              double actuation_area, double eps0) {
    MemsParams p;
    p.k = spring_constant(geom);
    p.m = effective_mass(geom);
    p.gap = gap;
    p.stopper = stopper;
    p.area = actuation_area;
    p.eps0 = eps0;
    p.validate();
    return p;
}

TimescaleReport system_timescales(const MemsParams& p) {
    p.validate();
    TimescaleReport r;
    r.f0 = std::sqrt(p.k / p.m) / (2.0 * kPi);
    r.t_sys = 0.35 / r.f0;
    return r;
}

}  // namespace ncmems
