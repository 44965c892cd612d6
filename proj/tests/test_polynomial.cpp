#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ncmems/polynomial.hpp"
#include "oracle.hpp"

using namespace ncmems;

namespace {

void check_against_scan(const OddQuintic& p) {
    const auto got = real_roots(p);
    const auto want = oracle::scan_roots(p.c5, p.c3, p.c1, p.c0, 20000);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
        CHECK(p.relative_residual(got[i]) < 1e-9);
    }
    CHECK(std::is_sorted(got.begin(), got.end()));
}

}  // namespace

TEST_CASE("one, three and five real roots") {
    // q^5 - 5 q^3 + 4 q = q (q^2 - 1)(q^2 - 4), shifted by c0.
    check_against_scan({1.0, -5.0, 4.0, 0.0});
    check_against_scan({1.0, -5.0, 4.0, 0.5});
    check_against_scan({1.0, -5.0, 4.0, 5.0});
    check_against_scan({1.0, 0.0, 1.0, -2.0});
    check_against_scan({0.0, 1.0, -3.0, 1.0});
    check_against_scan({0.0, 2.0, 1.0, -3.0});
}

TEST_CASE("exact roots of a factored quintic") {
    const auto r = real_roots({1.0, -5.0, 4.0, 0.0});
    REQUIRE(r.size() == 5);
    const double want[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    for (int i = 0; i < 5; ++i) {
        CHECK(r[static_cast<std::size_t>(i)] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("linear and degenerate cases") {
    const auto r = real_roots({0.0, 0.0, 2.0, -3.0});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.5));
    CHECK(critical_points({0.0, 0.0, 2.0, -3.0}).empty());
}

TEST_CASE("critical points of the biquadratic derivative") {
    const OddQuintic p{1.0, -5.0, 4.0, 0.0};
    const auto c = critical_points(p);
    REQUIRE(c.size() == 4);
    for (double q : c) {
        CHECK(std::fabs(p.derivative(q)) < 1e-12 * p.max_term(q) + 1e-12);
    }
}

TEST_CASE("random charge-equation quintics") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        // Same scale as the device: c ~ 6e-17, alpha ~ 1e4, beta ~ 1e16.
        const double c = 6.4e-17 * (0.5 + u(rng));
        const double a = 1.32e4 * (0.2 + 2.0 * u(rng));
        const double b = 1.68e16 * (0.2 + 2.0 * u(rng));
        const double g = u(rng) < 0.3 ? 1e38 * u(rng) : 0.0;
        const double v = 6.0 * (u(rng) - 0.5);
        check_against_scan({c * g, c * b, 1.0 - c * a, -c * v});
    }
}
