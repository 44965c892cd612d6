#pragma once

// Measurements behind the property suite, shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cmath>
#include <random>

#include "ncmems/landscape.hpp"
#include "ncmems/transient.hpp"
#include "oracle.hpp"

namespace props {

// Worst relative H drift over ten periods for sub-threshold steps, with and
// without adhesion.
inline double worst_drift() {
    const auto sys = oracle::designed();
    const double period = 2.0 * ncmems::kPi * std::sqrt(oracle::m / oracle::k);
    double worst = 0.0;
    for (double v : {0.3, 0.5, 0.65}) {
        worst = std::max(worst, ncmems::simulate(sys, ncmems::Waveform::step(v, 10.0 * period)).max_drift);
    }
    const auto adh = sys.with_contact_gap(10e-9);
    worst = std::max(worst, ncmems::simulate(adh, ncmems::Waveform::step(0.6, 10.0 * period)).max_drift);
    return worst;
}

// Largest relative mismatch between -dU/dx (central difference) and the net
// force over random devices, positions and voltages. Relative to the largest
// force component so points near equilibrium are not ill-posed.
inline double worst_force_mismatch(int samples = 1000) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        auto sys = oracle::random_stable(rng);
        if (i % 3 == 0) {
            sys = sys.with_contact_gap((2.0 + 20.0 * u(rng)) * 1e-9);
        }
        const double x_c = sys.contact_position();
        const double x = x_c * (-0.5 + 1.45 * u(rng));
        const double v = 4.0 * (u(rng) - 0.5);
        const double hh = 1e-5 * sys.mems.gap;
        const double fd =
            -(ncmems::hybrid_potential(x + hh, v, sys) - ncmems::hybrid_potential(x - hh, v, sys)) / (2.0 * hh);
        const double f = ncmems::net_force(x, v, sys);
        const double q = ncmems::solve_charge(x, v, sys).q;
        double scale = std::max({std::fabs(f), sys.mems.k * std::fabs(x), q * q / (2.0 * sys.mems.eps_area())});
        if (sys.adhesion) {
            scale = std::max(scale, std::fabs(ncmems::lj_force(x, *sys.adhesion, sys.mems)));
        }
        worst = std::max(worst, std::fabs(fd - f) / scale);
    }
    return worst;
}

// Largest relative residual of every accepted charge root.
inline double worst_root_residual(int samples = 2000) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const auto sys = oracle::random_stable(rng);
        const double x = sys.contact_position() * (-1.0 + 2.0 * u(rng));
        const double v = 6.0 * (u(rng) - 0.5);
        const auto p = ncmems::charge_polynomial(x, v, sys);
        for (double q : ncmems::charge_roots(x, v, sys)) {
            worst = std::max(worst, p.relative_residual(q));
        }
        worst = std::max(worst, p.relative_residual(ncmems::solve_charge(x, v, sys).q));
    }
    const auto sys = oracle::designed();
    const auto tr = ncmems::simulate(sys, ncmems::Waveform::step(0.66, 60e-6));
    for (const auto& s : tr.samples) {
        worst = std::max(worst, ncmems::charge_polynomial(s.x, s.v_in, sys).relative_residual(s.q));
    }
    return worst;
}

// Step-amplitude bisection on the simulator's pull-in event.
inline double transient_threshold(const ncmems::HybridSystem& sys, double lo, double hi, double tol = 2e-3,
                                  double t_stop = 300e-6) {
    const auto pulls = [&](double v) {
        const auto tr = ncmems::simulate(sys, ncmems::Waveform::step(v, t_stop));
        return std::any_of(tr.events.begin(), tr.events.end(),
                           [](const ncmems::Event& e) { return e.kind == ncmems::EventKind::pull_in; });
    };
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (pulls(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

struct OrderingResult {
    int checked = 0;
    int violations = 0;
};

// V_HPO <= V_HDPI <= V_HSPI over random stable devices.
inline OrderingResult ordering(int sets = 100) {
    std::mt19937_64 rng(31337);
    OrderingResult r;
    for (int i = 0; i < sets; ++i) {
        const auto sys = oracle::random_stable(rng);
        const auto a = ncmems::analyze(sys);
        const double po = a.pull_out.value_or(-INFINITY);
        const double tol = 1e-3;
        if (!(po <= a.dynamic_pull_in.voltage + tol && a.dynamic_pull_in.voltage <= a.static_pull_in.voltage + tol)) {
            ++r.violations;
        }
        ++r.checked;
    }
    return r;
}

}  // namespace props
