#include "ncmems/mems.hpp"

#include <cmath>

#include "ncmems/errors.hpp"

namespace ncmems {

namespace {

double gap_at(double x, const MemsParams& p) {
    const double d = p.gap - x;
    if (!(d > 0.0)) {
        throw DomainError("gap collapse: displacement reached the fixed electrode");
    }
    return d;
}

}  // namespace

double electrostatic_force(double x, double v_m, const MemsParams& p) {
    const double d = gap_at(x, p);
    return 0.5 * p.eps_area() * v_m * v_m / (d * d);
}

double mems_potential(double x, double v_m, const MemsParams& p) {
    const double d = gap_at(x, p);
    return 0.5 * p.k * x * x - 0.5 * p.eps_area() * v_m * v_m / d;
}

double hamiltonian_standalone(double x, double xdot, double v_m, const MemsParams& p) {
    return 0.5 * p.m * xdot * xdot + mems_potential(x, v_m, p);
}

StandaloneMetrics standalone_metrics(const MemsParams& p) {
    p.validate();
    const double g3 = p.gap * p.gap * p.gap;
    const double ea = p.eps_area();
    StandaloneMetrics s;
    s.v_spi = std::sqrt(8.0 * p.k * g3 / (27.0 * ea));
    s.x_spi = p.gap / 3.0;
    s.v_dpi = std::sqrt(p.k * g3 / (4.0 * ea));
    s.x_dpi = p.gap / 2.0;
    s.v_po = std::sqrt(2.0 * p.k * p.stopper * p.stopper * (p.gap - p.stopper) / ea);
    return s;
}

}  // namespace ncmems
