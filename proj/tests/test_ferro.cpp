#include <doctest.h>

#include <cmath>

#include "ncmems/errors.hpp"
#include "ncmems/ferro.hpp"
#include "oracle.hpp"

using namespace ncmems;

TEST_CASE("lumped coefficients") {
    const auto c = lumped_coeffs({-2.88e9, 3.56e11, 1e12}, 45e-9, 10e-12);
    const auto o = oracle::coeffs(45e-9, 10e-12, -2.88e9, 3.56e11, 1e12);
    CHECK(c.alpha == doctest::Approx(o.a).epsilon(1e-14));
    CHECK(c.beta == doctest::Approx(o.b).epsilon(1e-14));
    CHECK(c.gamma == doctest::Approx(o.g).epsilon(1e-14));
    CHECK(c.alpha > 0.0);
}

TEST_CASE("zero thickness disables the ferroelectric") {
    const FerroDevice d(oracle::hfo2(), 0.0, 9.87e-12);
    CHECK_FALSE(d.enabled());
    CHECK(vf_of_q(1e-12, d) == 0.0);
    CHECK(landau_energy(1e-12, 0.0, d) == 0.0);
    CHECK_FALSE(FerroDevice::disabled().enabled());
}

TEST_CASE("material and device validation") {
    CHECK_THROWS_AS(FerroMaterial({2.88e9, 3.56e11, 0.0}).validate(), ValidationError);
    CHECK_THROWS_AS(FerroMaterial({-2.88e9, 0.0, 0.0}).validate(), ValidationError);
    CHECK_THROWS_AS(FerroMaterial({-2.88e9, 3.56e11, -1.0}).validate(), ValidationError);
    CHECK_NOTHROW(FerroMaterial({-2.88e9, -1e10, 1e20}).validate());
    CHECK_THROWS_AS(FerroDevice(oracle::hfo2(), -1e-9, 1e-12), ValidationError);
    CHECK_THROWS_AS(FerroDevice(oracle::hfo2(), 1e-9, 0.0), ValidationError);
}

TEST_CASE("charge-voltage relation and its slope") {
    const FerroDevice d(oracle::hfo2(), 45.24e-9, 9.87e-12);
    const auto c = oracle::coeffs(45.24e-9, 9.87e-12);
    for (double q : {-3e-13, -1e-14, 0.0, 2e-13, 8e-13}) {
        CHECK(vf_of_q(q, d) == doctest::Approx(-c.a * q + c.b * q * q * q).epsilon(1e-13));
        const double h = 1e-18;
        CHECK(dvf_dq(q, d) == doctest::Approx((vf_of_q(q + h, d) - vf_of_q(q - h, d)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("design for 0.8 V static pull-in and zero pull-out") {
    const auto p = oracle::table1_mems();
    const auto r = design_ferroelectric(p, {0.8, 0.0}, oracle::hfo2());
    const auto o = oracle::design(0.8);
    CHECK(r.device.thickness() == doctest::Approx(o.t_f).epsilon(1e-10));
    CHECK(r.device.area() == doctest::Approx(o.a_f).epsilon(1e-10));
    // The published design is rounded to four figures.
    CHECK(r.device.thickness() == doctest::Approx(45.24e-9).epsilon(0.01));
    CHECK(r.device.area() == doctest::Approx(9.87e-12).epsilon(0.01));
    CHECK(r.ratios.r_alpha / r.ratios.r_beta == doctest::Approx((p.gap - p.stopper) / p.gap).epsilon(1e-12));
    CHECK(analytic_hybrid_pull_in(p, r.ratios) == doctest::Approx(0.8).epsilon(1e-12));
    const auto back = design_ratios(p, r.device);
    CHECK(back.r_alpha == doctest::Approx(r.ratios.r_alpha).epsilon(1e-12));
    CHECK(back.r_beta == doctest::Approx(r.ratios.r_beta).epsilon(1e-12));
}

TEST_CASE("infeasible and unsupported design targets") {
    const auto p = oracle::table1_mems();
    CHECK_THROWS_AS((void)design_ferroelectric(p, {6.0, 0.0}, oracle::hfo2()), InfeasibleDesignError);
    CHECK_THROWS_AS((void)design_ferroelectric(p, {-0.1, 0.0}, oracle::hfo2()), ValidationError);
    CHECK_THROWS_AS((void)design_ferroelectric(p, {0.8, 0.2}, oracle::hfo2()), ValidationError);
}
