#include "ncmems/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "ncmems/errors.hpp"
#include "ncmems/mems.hpp"

namespace ncmems {

void HybridSystem::validate() const {
    mems.validate();
    if (ferro.enabled()) {
        ferro.material().validate();
    }
    if (adhesion) {
        adhesion->validate();
        if (!(adhesion->contact_gap() < mems.travel())) {
            throw ValidationError("effective contact gap must be smaller than g_o - h_s");
        }
    }
}

bool HybridSystem::zero_bias_stable() const {
    if (!ferro.enabled()) {
        return true;
    }
    const DesignRatios r = design_ratios(mems, ferro);
    return r.r_alpha > 0.0 && r.r_beta > 0.0;
}

double HybridSystem::contact_position() const {
    const double gc = adhesion ? adhesion->contact_gap() : 0.0;
    return mems.travel() - gc;
}

HybridSystem HybridSystem::without_adhesion() const {
    HybridSystem s = *this;
    s.adhesion.reset();
    return s;
}

HybridSystem HybridSystem::with_adhesion(const AdhesionParams& a) const {
    HybridSystem s = *this;
    s.adhesion = a;
    return s;
}

HybridSystem HybridSystem::with_contact_gap(double gc) const {
    HybridSystem s = *this;
    AdhesionParams a = adhesion.value_or(AdhesionParams{});
    a.gc_override = gc;
    s.adhesion = a;
    return s;
}

HybridSystem HybridSystem::with_thickness(double t_f) const {
    HybridSystem s = *this;
    s.ferro = ferro.with_thickness(t_f);
    return s;
}

OddQuintic charge_polynomial(double x, double v_in, const HybridSystem& sys) {
    const double d = sys.mems.gap - x;
    if (!(d > 0.0)) {
        throw DomainError("gap collapse: displacement reached the fixed electrode");
    }
    const double c = sys.mems.eps_area() / d;
    const auto& k = sys.ferro.coeffs();
    return OddQuintic{c * k.gamma, c * k.beta, 1.0 - c * k.alpha, -c * v_in};
}

std::vector<double> charge_roots(double x, double v_in, const HybridSystem& sys) {
    auto roots = real_roots(charge_polynomial(x, v_in, sys));
    if (roots.empty()) {
        throw SolverError("charge equation has no real root");
    }
    return roots;
}

ChargeSolution solve_charge(double x, double v_in, const HybridSystem& sys, std::optional<double> hint) {
    const auto roots = charge_roots(x, v_in, sys);
    ChargeSolution sol;
    sol.multiple_roots = roots.size() > 1;
    if (hint) {
        sol.q = *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
            return std::fabs(a - *hint) < std::fabs(b - *hint);
        });
        return sol;
    }
    if (v_in == 0.0) {
        sol.q = 0.0;
        return sol;
    }
    const bool positive = v_in > 0.0;
    double best = 0.0;
    bool found = false;
    for (double r : roots) {
        if ((r > 0.0) == positive && r != 0.0 && (!found || std::fabs(r) < std::fabs(best))) {
            best = r;
            found = true;
        }
    }
    if (!found) {
        best = *std::min_element(roots.begin(), roots.end(),
                                 [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    }
    sol.q = best;
    return sol;
}

ChargeStep track_charge(double x, double v_in, const HybridSystem& sys, double q_prev) {
    const OddQuintic poly = charge_polynomial(x, v_in, sys);
    const auto roots = real_roots(poly);
    if (roots.empty()) {
        throw SolverError("charge equation has no real root");
    }
    ChargeStep step;
    step.q = *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
        return std::fabs(a - q_prev) < std::fabs(b - q_prev);
    });
    const double lo = std::min(step.q, q_prev);
    const double hi = std::max(step.q, q_prev);
    for (double c : critical_points(poly)) {
        if (c > lo && c < hi) {
            step.fold = true;
            break;
        }
    }
    return step;
}

double contact_charge(double x, double v_in, const HybridSystem& sys, int polarity) {
    const auto roots = charge_roots(x, v_in, sys);
    return polarity >= 0 ? roots.back() : roots.front();
}

HybridOperatingPoint operating_point(double x, double v_in, const HybridSystem& sys,
                                     std::optional<double> hint) {
    HybridOperatingPoint op;
    op.x = x;
    op.v_in = v_in;
    op.q = solve_charge(x, v_in, sys, hint).q;
    op.v_f = vf_of_q(op.q, sys.ferro);
    op.v_m = v_in - op.v_f;
    return op;
}

double potential_at_charge(double x, double v_in, double q, const HybridSystem& sys) {
    const double v_f = vf_of_q(q, sys.ferro);
    const double v_m = v_in - v_f;
    double u = landau_energy(q, v_f, sys.ferro) + mems_potential(x, v_m, sys.mems);
    if (sys.adhesion) {
        u += lj_potential(x, *sys.adhesion, sys.mems);
    }
    return u;
}

double force_at_charge(double x, double q, const HybridSystem& sys) {
    double f = q * q / (2.0 * sys.mems.eps_area()) - sys.mems.k * x;
    if (sys.adhesion) {
        f += lj_force(x, *sys.adhesion, sys.mems);
    }
    return f;
}

double hybrid_potential(double x, double v_in, const HybridSystem& sys) {
    return potential_at_charge(x, v_in, solve_charge(x, v_in, sys).q, sys);
}

double hamiltonian(double x, double xdot, double v_in, const HybridSystem& sys) {
    return 0.5 * sys.mems.m * xdot * xdot + hybrid_potential(x, v_in, sys);
}

double net_force(double x, double v_in, const HybridSystem& sys) {
    return force_at_charge(x, solve_charge(x, v_in, sys).q, sys);
}

}  // namespace ncmems
