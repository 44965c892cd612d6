#include <cmath>
#include <limits>

#include "ncmems/kernels.hpp"
#include "newton_start.hpp"

namespace ncmems::kernels {

BatchModel make_model(const HybridSystem& sys, double v_in) {
    BatchModel m;
    m.k = sys.mems.k;
    m.eps_area = sys.mems.eps_area();
    m.gap = sys.mems.gap;
    const auto& c = sys.ferro.coeffs();
    m.alpha = c.alpha;
    m.beta = c.beta;
    m.gamma = c.gamma;
    m.v_in = v_in;
    if (sys.adhesion) {
        m.adhesion = true;
        m.lj_attract = sys.adhesion->c1 * sys.adhesion->contact_area;
        m.lj_repel = sys.adhesion->c2 * sys.adhesion->contact_area;
        m.lj_plane = sys.mems.travel();
    }
    return m;
}

bool supports_batch(const BatchModel& m) { return m.beta >= 0.0 && m.gamma >= 0.0; }

namespace scalar {

void principal_charge(const BatchModel& m, std::span<const double> x, std::span<double> q) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double sign = m.v_in >= 0.0 ? 1.0 : -1.0;
    const double v = std::fabs(m.v_in);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = m.gap - x[i];
        if (!(d > 0.0)) {
            q[i] = nan;
            continue;
        }
        if (v == 0.0) {
            q[i] = 0.0;
            continue;
        }
        const double c = m.eps_area / d;
        const double a5 = c * m.gamma;
        const double a3 = c * m.beta;
        const double a1 = 1.0 - c * m.alpha;
        const double a0 = c * v;
        double r = detail::positive_root_upper_bound(a5, a3, a1, a0);
        for (int it = 0; it < detail::kMaxNewton; ++it) {
            const double r2 = r * r;
            const double f = ((a5 * r2 + a3) * r2 + a1) * r - a0;
            if (!(f > 0.0)) {
                break;
            }
            const double df = (5.0 * a5 * r2 + 3.0 * a3) * r2 + a1;
            const double step = f / df;
            r -= step;
            if (step <= 4.0 * std::numeric_limits<double>::epsilon() * r) {
                break;
            }
        }
        q[i] = sign * r;
    }
}

void net_force(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out) {
    const double inv_two_ea = 1.0 / (2.0 * m.eps_area);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double f = q[i] * q[i] * inv_two_ea - m.k * x[i];
        if (m.adhesion) {
            const double d = m.lj_plane - x[i];
            const double d3 = d * d * d;
            f += m.lj_attract / d3 - m.lj_repel / (d3 * d3 * d3);
        }
        out[i] = f;
    }
}

void potential(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double qi = q[i];
        const double q2 = qi * qi;
        const double vf = qi * (-m.alpha + q2 * (m.beta + q2 * m.gamma));
        const double uf = q2 * (-0.5 * m.alpha + q2 * (0.25 * m.beta + q2 * (m.gamma / 6.0))) - vf * qi;
        const double vm = m.v_in - vf;
        double u = uf + 0.5 * m.k * x[i] * x[i] - 0.5 * m.eps_area * vm * vm / (m.gap - x[i]);
        if (m.adhesion) {
            const double d = m.lj_plane - x[i];
            const double d2 = d * d;
            const double d4 = d2 * d2;
            u += -m.lj_attract / (2.0 * d2) + m.lj_repel / (8.0 * d4 * d4);
        }
        out[i] = u;
    }
}

}  // namespace scalar
}  // namespace ncmems::kernels
