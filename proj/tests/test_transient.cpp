#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ncmems/errors.hpp"
#include "ncmems/landscape.hpp"
#include "ncmems/transient.hpp"
#include "oracle.hpp"

using namespace ncmems;

namespace {

double t_sys() { return system_timescales(oracle::table1_mems()).t_sys; }

int count(const Trajectory& t, EventKind k) {
    return static_cast<int>(std::count_if(t.events.begin(), t.events.end(), [&](const Event& e) { return e.kind == k; }));
}

double max_x(const Trajectory& t) {
    double m = -1.0;
    for (const auto& s : t.samples) {
        m = std::max(m, s.x);
    }
    return m;
}

// First voltage in a sweep whose state is in contact (or released, for down).
double first_flip(const std::vector<QuasiStaticPoint>& pts, bool want_contact) {
    for (const auto& p : pts) {
        if (p.contact == want_contact) {
            return p.v_in;
        }
    }
    return NAN;
}

std::vector<double> volts(double from, double to, double step) {
    std::vector<double> v;
    const int n = static_cast<int>(std::round(std::fabs(to - from) / step));
    for (int i = 0; i <= n; ++i) {
        v.push_back(from + (to > from ? 1 : -1) * step * i);
    }
    return v;
}

}  // namespace

TEST_CASE("waveforms") {
    const auto s = Waveform::step(0.7, 1e-3);
    CHECK(s.voltage(0.0) == 0.7);
    CHECK(s.voltage(-1.0) == 0.0);
    const auto r = Waveform::ramp(1.0, 2e-3, 4e-3);
    CHECK(r.voltage(1e-3) == doctest::Approx(0.5));
    CHECK(r.voltage(3e-3) == 1.0);
    const auto p = Waveform::piecewise({0.0, 1.0, 2.0}, {0.0, 2.0, -1.0});
    CHECK(p.voltage(0.5) == doctest::Approx(1.0));
    CHECK(p.voltage(1.5) == doctest::Approx(0.5));
    CHECK(p.voltage(5.0) == -1.0);
    CHECK_THROWS_AS(Waveform::piecewise({0.0, 0.0}, {1.0, 2.0}).validate(), ValidationError);
    CHECK_THROWS_AS(Waveform::ramp(1.0, -1.0, 1.0).validate(), ValidationError);
    CHECK(classify_input(80e-3, t_sys()) == InputSpeed::slow);
    CHECK(classify_input(1e-12, t_sys()) == InputSpeed::fast);
    CHECK(classify_input(t_sys(), t_sys()) == InputSpeed::intermediate);
}

TEST_CASE("zero input from rest stays at rest") {
    const auto tr = simulate(oracle::designed(), Waveform::step(0.0, 20e-6));
    for (const auto& s : tr.samples) {
        CHECK(s.x == 0.0);
        CHECK(s.v == 0.0);
    }
    CHECK(tr.events.empty());
}

TEST_CASE("step response around dynamic pull-in") {
    const auto sys = oracle::designed();
    const double x_hdpi = dynamic_pull_in(sys).displacement;
    const auto hit = simulate(sys, Waveform::step(0.70, 200e-6));
    CHECK(count(hit, EventKind::pull_in) == 1);
    CHECK(hit.samples.back().contact);
    const auto miss = simulate(sys, Waveform::step(0.68, 200e-6));
    CHECK(miss.events.empty());
    CHECK(max_x(miss) < x_hdpi);
    CHECK(max_x(miss) > 0.5e-6);
}

TEST_CASE("per-sample series and charge-equation residuals") {
    const auto sys = oracle::designed();
    const auto tr = simulate(sys, Waveform::step(0.6, 30e-6));
    for (std::size_t i = 0; i < tr.samples.size(); i += 50) {
        const auto& s = tr.samples[i];
        CHECK(std::fabs(s.v_f + s.v_m - s.v_in) <= 1e-9 * std::fabs(s.v_in));
        CHECK(charge_polynomial(s.x, s.v_in, sys).relative_residual(s.q) < 1e-9);
    }
}

TEST_CASE("energy is conserved for a sub-threshold step") {
    const auto sys = oracle::designed();
    const double period = 2.0 * kPi * std::sqrt(oracle::m / oracle::k);
    const auto tr = simulate(sys, Waveform::step(0.6, 10.0 * period));
    CHECK_FALSE(tr.drift_warning);
    CHECK(tr.max_drift < 1e-6);
    CHECK(tr.max_drift > 0.0);
}

TEST_CASE("simulated orbit overlays the phase trajectory") {
    const auto sys = oracle::designed();
    const double v = 0.6;
    const auto tr = simulate(sys, Waveform::step(v, 40e-6));
    const auto ph = phase_trajectory(sys, v, 0.0, 0.0);
    // Upper branch of the phase curve: the first half, x increasing.
    const std::size_t half = ph.x.size() / 2;
    std::vector<double> px(ph.x.begin(), ph.x.begin() + static_cast<long>(half));
    std::vector<double> pv(ph.xdot.begin(), ph.xdot.begin() + static_cast<long>(half));
    const double vmax = *std::max_element(pv.begin(), pv.end());
    int compared = 0;
    for (const auto& s : tr.samples) {
        if (s.v < 0.2 * vmax) {
            continue;
        }
        const auto it = std::upper_bound(px.begin(), px.end(), s.x);
        if (it == px.begin() || it == px.end()) {
            continue;
        }
        const std::size_t j = static_cast<std::size_t>(it - px.begin());
        const double w = (s.x - px[j - 1]) / (px[j] - px[j - 1]);
        const double ref = pv[j - 1] + w * (pv[j] - pv[j - 1]);
        CHECK(s.v == doctest::Approx(ref).epsilon(1e-3));
        ++compared;
    }
    CHECK(compared > 100);
}

TEST_CASE("events bracket the landscape dynamic threshold") {
    const auto sys = oracle::designed();
    const double v_hdpi = dynamic_pull_in(sys).voltage;
    const auto above = simulate(sys, Waveform::step(v_hdpi + 0.01, 150e-6));
    CHECK(count(above, EventKind::pull_in) == 1);
    const auto below = simulate(sys, Waveform::step(v_hdpi - 0.01, 150e-6));
    CHECK(count(below, EventKind::pull_in) == 0);
}

TEST_CASE("release from contact with adhesion") {
    const auto sys = oracle::designed().with_contact_gap(10e-9);
    SimulationOptions o;
    o.start_in_contact = true;
    const auto go = simulate(sys, Waveform::step(-0.6, 40e-6), o);
    CHECK(count(go, EventKind::pull_out) == 1);
    const auto stay = simulate(sys, Waveform::step(-0.5, 40e-6), o);
    CHECK(count(stay, EventKind::pull_out) == 0);
    CHECK(stay.samples.back().contact);
}

TEST_CASE("a near-ideal ramp behaves like a step") {
    const auto sys = oracle::designed();
    const auto step = simulate(sys, Waveform::step(0.6, 20e-6));
    const auto ramp = simulate(sys, Waveform::ramp(0.6, 1e-6 * t_sys(), 20e-6));
    CHECK(ramp.samples.back().x == doctest::Approx(step.samples.back().x).epsilon(1e-3));
}

TEST_CASE("slow ramp snaps near static pull-in") {
    const auto sys = oracle::designed();
    // Motion slows near the fold, so the contact event trails V_HSPI by a
    // margin that shrinks with the ramp time.
    const double t_rise = 1000.0 * t_sys();
    SimulationOptions o;
    o.record_every = 50;
    const auto tr = simulate(sys, Waveform::ramp(1.0, t_rise, t_rise), o);
    REQUIRE(count(tr, EventKind::pull_in) == 1);
    const double x_fold = static_pull_in(sys).displacement;
    const auto leave = std::find_if(tr.samples.begin(), tr.samples.end(), [&](const TrajectorySample& s) {
        return s.x > x_fold;
    });
    REQUIRE(leave != tr.samples.end());
    CHECK(leave->v_in == doctest::Approx(0.8).epsilon(0.01));
    const double t_hit = std::find_if(tr.events.begin(), tr.events.end(), [](const Event& e) {
                             return e.kind == EventKind::pull_in;
                         })->t;
    CHECK(t_hit / t_rise == doctest::Approx(0.8).epsilon(0.02));
}

TEST_CASE("quasi-static hysteresis") {
    const auto sys = oracle::designed();
    SUBCASE("hybrid without adhesion") {
        const auto up = quasi_static_sweep(sys, volts(0.0, 1.0, 0.005), SweepDirection::up);
        CHECK(first_flip(up, true) == doctest::Approx(0.8).epsilon(0.01));
        const auto down = quasi_static_sweep(sys, volts(0.5, -0.5, 0.005), SweepDirection::down);
        CHECK(std::fabs(first_flip(down, false)) < 0.011);
    }
    SUBCASE("hybrid with adhesion") {
        const auto down =
            quasi_static_sweep(sys.with_contact_gap(10e-9), volts(0.5, -0.7, 0.005), SweepDirection::down);
        CHECK(first_flip(down, false) == doctest::Approx(-0.55).epsilon(0.04));
    }
    SUBCASE("bare actuator") {
        const auto bare = oracle::standalone();
        const auto up = quasi_static_sweep(bare, volts(4.0, 6.0, 0.01), SweepDirection::up);
        CHECK(first_flip(up, true) == doctest::Approx(oracle::v_spi()).epsilon(0.01));
        const auto down = quasi_static_sweep(bare, volts(3.0, 0.0, 0.01), SweepDirection::down);
        CHECK(first_flip(down, false) == doctest::Approx(oracle::v_po()).epsilon(0.02));
    }
    CHECK_THROWS_AS((void)quasi_static_sweep(sys, std::vector<double>{0.1, 0.0}, SweepDirection::up),
                    ValidationError);
}

TEST_CASE("simulation input validation") {
    const auto sys = oracle::designed();
    SimulationOptions o;
    o.dt = -1.0;
    CHECK_THROWS_AS((void)simulate(sys, Waveform::step(0.5, 1e-6), o), ValidationError);
    o.dt.reset();
    o.x0 = 1.9e-6;
    CHECK_THROWS_AS((void)simulate(sys, Waveform::step(0.5, 1e-6), o), DomainError);
}
