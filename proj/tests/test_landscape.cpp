#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ncmems/errors.hpp"
#include "ncmems/landscape.hpp"
#include "ncmems/mems.hpp"
#include "oracle.hpp"

using namespace ncmems;

namespace {

// Principal-branch force and potential from the oracle, on a plain grid.
struct OracleCurve {
    std::vector<double> x, f, u;
};

OracleCurve oracle_curve(const oracle::Coeffs& c, double v, double x_hi, int n) {
    OracleCurve o;
    for (int i = 0; i <= n; ++i) {
        const double x = x_hi * i / n;
        const auto roots = oracle::charge_roots(x, v, c, 3000);
        double q = 0.0;
        if (v != 0.0) {
            q = NAN;
            for (double r : roots) {
                if ((r > 0) == (v > 0) && (std::isnan(q) || std::fabs(r) < std::fabs(q))) {
                    q = r;
                }
            }
        }
        o.x.push_back(x);
        o.f.push_back(oracle::force(x, q));
        o.u.push_back(oracle::potential(x, v, q, c));
    }
    return o;
}

bool oracle_has_stable(const OracleCurve& o) {
    for (std::size_t i = 0; i + 1 < o.f.size(); ++i) {
        if (o.f[i] > 0.0 && o.f[i + 1] <= 0.0) {
            return true;
        }
    }
    return false;
}

bool oracle_pulled_dynamically(const OracleCurve& o) {
    return std::all_of(o.u.begin() + 1, o.u.end(), [&](double u) { return u < o.u.front(); });
}

const oracle::Design kDesign = oracle::design(0.8);
const oracle::Coeffs kCoeffs = oracle::coeffs(kDesign.t_f, kDesign.a_f);

}  // namespace

TEST_CASE("standalone landscape reproduces the closed forms") {
    const auto sys = oracle::standalone();
    const auto s = static_pull_in(sys);
    CHECK(s.voltage == doctest::Approx(oracle::v_spi()).epsilon(1e-4));
    CHECK(s.displacement == doctest::Approx(oracle::gap / 3.0).epsilon(1e-4));
    const auto d = dynamic_pull_in(sys);
    CHECK(d.voltage == doctest::Approx(oracle::v_dpi()).epsilon(1e-4));
    CHECK(d.displacement == doctest::Approx(oracle::gap / 2.0).epsilon(1e-3));
    const auto po = pull_out_voltage(sys);
    REQUIRE(po);
    CHECK(*po == doctest::Approx(oracle::v_po()).epsilon(2e-3));
}

TEST_CASE("standalone equilibria solve the cubic force balance") {
    const auto sys = oracle::standalone();
    const double v = 4.0;
    const auto eq = find_equilibria(sys, v);
    REQUIRE(eq.size() == 2);
    CHECK(eq[0].kind == EquilibriumKind::stable);
    CHECK(eq[1].kind == EquilibriumKind::unstable);
    for (const auto& e : eq) {
        const double d = oracle::gap - e.x;
        CHECK(oracle::k * e.x * d * d == doctest::Approx(0.5 * oracle::eps0 * oracle::area * v * v).epsilon(1e-9));
    }
    CHECK(eq[0].x < oracle::gap / 3.0);
    CHECK(eq[1].x > oracle::gap / 3.0);
}

TEST_CASE("zero bias has a single stable state at the origin") {
    const auto eq = find_equilibria(oracle::designed(), 0.0);
    REQUIRE(!eq.empty());
    CHECK(eq.front().x == 0.0);
    CHECK(eq.front().kind == EquilibriumKind::stable);
}

TEST_CASE("hybrid static pull-in brackets the oracle threshold") {
    const auto sys = oracle::designed();
    const auto s = static_pull_in(sys);
    CHECK(s.voltage == doctest::Approx(0.8).epsilon(1e-3));
    const double x_c = oracle::gap - oracle::stopper;
    CHECK(oracle_has_stable(oracle_curve(kCoeffs, s.voltage - 2e-3, x_c, 2000)));
    CHECK_FALSE(oracle_has_stable(oracle_curve(kCoeffs, s.voltage + 2e-3, x_c, 2000)));
    // At the fold the force minimum between the pair touches zero.
    CHECK(std::fabs(net_force(s.displacement, s.voltage, sys)) < 1e-4 * oracle::k * s.displacement);
}

TEST_CASE("hybrid dynamic pull-in brackets the oracle threshold") {
    const auto sys = oracle::designed();
    const auto d = dynamic_pull_in(sys);
    const double x_c = oracle::gap - oracle::stopper;
    CHECK_FALSE(oracle_pulled_dynamically(oracle_curve(kCoeffs, d.voltage - 2e-3, x_c, 4000)));
    CHECK(oracle_pulled_dynamically(oracle_curve(kCoeffs, d.voltage + 2e-3, x_c, 4000)));
    // X_HDPI is the barrier top: an unstable equilibrium level with U(0).
    CHECK(std::fabs(net_force(d.displacement, d.voltage, sys)) < 1e-4 * oracle::k * d.displacement);
    CHECK(hybrid_potential(d.displacement, d.voltage, sys) ==
          doctest::Approx(hybrid_potential(0.0, d.voltage, sys)).epsilon(1e-3));
}

TEST_CASE("phase trajectories") {
    const auto sys = oracle::designed();
    SUBCASE("closed orbit below dynamic pull-in obeys the energy identity") {
        const auto t = phase_trajectory(sys, 0.6, 0.0, 0.0);
        CHECK(t.motion == Motion::closed);
        REQUIRE(t.left_turn);
        REQUIRE(t.right_turn);
        CHECK(*t.left_turn == doctest::Approx(0.0).epsilon(1e-9));
        for (std::size_t i = 0; i < t.x.size(); i += 97) {
            const double q = solve_charge(t.x[i], 0.6, sys).q;
            const double e = 0.5 * oracle::m * t.xdot[i] * t.xdot[i] + oracle::potential(t.x[i], 0.6, q, kCoeffs);
            CHECK(e == doctest::Approx(t.energy).epsilon(1e-9));
        }
        CHECK(t.x.front() == t.x.back());
    }
    SUBCASE("above dynamic pull-in the orbit reaches contact") {
        const auto t = phase_trajectory(sys, 0.72, 0.0, 0.0);
        CHECK(t.motion == Motion::open);
        CHECK_FALSE(t.right_turn);
    }
    SUBCASE("resting at contact with the force into the stopper is pinned") {
        const auto t = phase_trajectory(sys, 0.3, sys.contact_position(), 0.0, ChargeBranch::contact);
        CHECK(t.motion == Motion::open);
        CHECK(t.x.size() == 1);
    }
    SUBCASE("release swing on the contact branch") {
        const auto a = sys.with_contact_gap(10e-9);
        const auto t = phase_trajectory(a, -0.6, a.contact_position(), 0.0, ChargeBranch::contact);
        REQUIRE(t.right_turn);
        CHECK(*t.right_turn == doctest::Approx(a.contact_position()));
    }
    CHECK_THROWS_AS((void)phase_trajectory(sys, 0.5, 1.9e-6, 0.0), DomainError);
}

TEST_CASE("pull-out of the designed device is at zero volts") {
    const auto po = pull_out_voltage(oracle::designed());
    REQUIRE(po);
    CHECK(std::fabs(*po) < 0.01);
}

TEST_CASE("adhesion shifts pull-out negative but leaves pull-in alone") {
    const auto base = oracle::designed();
    const auto sys = base.with_contact_gap(10e-9);
    CHECK(static_pull_in(sys).voltage == doctest::Approx(static_pull_in(base).voltage).epsilon(1e-3));
    const auto po = pull_out_voltage(sys);
    REQUIRE(po);
    CHECK(*po == doctest::Approx(-0.55).epsilon(0.04));
    CHECK(check_release(sys, *po - 0.01).released);
    CHECK_FALSE(check_release(sys, *po + 0.01).released);
}

TEST_CASE("release needs a path below the contact energy") {
    const auto sys = oracle::designed().with_contact_gap(2e-9);
    for (double v = -0.57; v <= 0.8; v += 0.05) {
        const auto r = check_release(sys, v);
        CHECK_FALSE(r.released);
    }
    const auto ok = check_release(oracle::designed().with_contact_gap(10e-9), -0.6);
    CHECK(ok.released);
    REQUIRE(ok.x_stable);
    CHECK(*ok.x_stable < ok.x_contact);
}

TEST_CASE("contact-gap sweep trends toward the short-range limit") {
    const auto base = oracle::designed();
    const std::vector<double> gcs{5e-9, 10e-9, 20e-9, 50e-9, 100e-9, 1e-6};
    const auto res = sweep_contact_gap(base, gcs);
    double prev = -1e9;
    for (const auto& p : res) {
        REQUIRE(p.v_hpo);
        CHECK(*p.v_hpo > prev);
        prev = *p.v_hpo;
    }
    // A micron away the van der Waals term is negligible: same pull-out as an
    // adhesion-free device whose stopper puts the contact at the same place.
    auto ref = base;
    ref.mems.stopper += 1e-6;
    const auto po_ref = pull_out_voltage(ref);
    REQUIRE(po_ref);
    CHECK(std::fabs(*res.back().v_hpo - *po_ref) < 0.01);
    CHECK_THROWS_AS((void)sweep_contact_gap(base, std::vector<double>{0.0}), ValidationError);
}

TEST_CASE("minimum contact gap and thickness retune") {
    const auto sys = oracle::designed();
    const double gmin = min_contact_gap(sys, -0.57);
    CHECK(gmin > 2e-9);
    CHECK(gmin < 10e-9);
    CHECK(check_release(sys.with_contact_gap(gmin + 0.05e-9), -0.57).released);
    CHECK_FALSE(check_release(sys.with_contact_gap(gmin - 0.05e-9), -0.57).released);

    const double t = retune_thickness(sys, 10e-9);
    CHECK(t < sys.ferro.thickness());
    CHECK(check_release(sys.with_thickness(t).with_contact_gap(10e-9), 0.0).released);
    CHECK_FALSE(check_release(sys.with_thickness(t + 0.1e-9).with_contact_gap(10e-9), 0.0).released);
    CHECK_THROWS_AS((void)retune_thickness(sys, 0.5e-9), BracketError);
    CHECK_THROWS_AS((void)retune_thickness(oracle::standalone(), 10e-9), ValidationError);
}

TEST_CASE("sampling and options") {
    const auto sys = oracle::designed();
    const auto c = sample_potential(sys, 0.5, 0.0, 1.5e-6, 257);
    CHECK(c.x.size() == 257);
    CHECK(std::is_sorted(c.x.begin(), c.x.end()));
    const auto z = sample_potential(oracle::standalone(), 0.0, 0.0, 1.5e-6, 64);
    for (std::size_t i = 0; i < z.x.size(); ++i) {
        CHECK(z.u[i] == doctest::Approx(0.5 * oracle::k * z.x[i] * z.x[i]).epsilon(1e-12));
    }
    const auto adh = sys.with_contact_gap(10e-9);
    const auto g = displacement_grid(adh, 0.0, adh.contact_position(), 100, SolverOptions{});
    CHECK(g.size() > 300);
    CHECK_THROWS_AS((void)sample_potential(sys, 0.5, 0.0, 2.0e-6, 10), DomainError);
    CHECK_THROWS_AS((void)tolerance_profile("sloppy"), ValidationError);
    CHECK(tolerance_profile("fine").voltage_tol < tolerance_profile("default").voltage_tol);
    const auto tr = sample_potential(sys, 0.0, 0.0, sys.contact_position(), 200, ChargeBranch::contact);
    CHECK(tr.branch == ChargeBranch::contact);
    CHECK(tr.q.back() > 0.0);
}
