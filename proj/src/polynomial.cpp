#include "ncmems/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncmems {

double OddQuintic::operator()(double q) const {
    const double q2 = q * q;
    return q * (c1 + q2 * (c3 + q2 * c5)) + c0;
}

double OddQuintic::derivative(double q) const {
    const double q2 = q * q;
    return c1 + q2 * (3.0 * c3 + 5.0 * q2 * c5);
}

double OddQuintic::max_term(double q) const {
    const double a = std::fabs(q);
    const double a3 = a * a * a;
    return std::max({std::fabs(c5) * a3 * a * a, std::fabs(c3) * a3, std::fabs(c1) * a, std::fabs(c0)});
}

double OddQuintic::relative_residual(double q) const {
    const double scale = max_term(q);
    return scale > 0.0 ? std::fabs((*this)(q)) / scale : 0.0;
}

double OddQuintic::root_bound() const {
    // Monic form q^n + a_{n-2} q^{n-2} + ... + a_0.
    if (c5 != 0.0) {
        return 2.0 * std::max({std::sqrt(std::fabs(c3 / c5)), std::pow(std::fabs(c1 / c5), 0.25),
                               std::pow(std::fabs(c0 / c5) / 2.0, 0.2)});
    }
    if (c3 != 0.0) {
        return 2.0 * std::max(std::sqrt(std::fabs(c1 / c3)), std::cbrt(std::fabs(c0 / c3) / 2.0));
    }
    if (c1 != 0.0) {
        return std::fabs(c0 / c1);
    }
    return 0.0;
}

namespace {

// p is monotone on [lo, hi] with p(lo), p(hi) of opposite sign.
double bracketed_newton(const OddQuintic& p, double lo, double hi) {
    double f_lo = p(lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = p(x);
        if (f == 0.0) {
            return x;
        }
        if ((f < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = f;
        } else {
            hi = x;
        }
        const double d = p.derivative(x);
        double next = d != 0.0 ? x - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = std::fabs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lo), std::fabs(hi))) {
            break;
        }
    }
    return x;
}

}  // namespace

std::vector<double> critical_points(const OddQuintic& p) {
    // p'(q) = 5 c5 s^2 + 3 c3 s + c1 with s = q^2.
    std::vector<double> s_roots;
    const double a = 5.0 * p.c5;
    const double b = 3.0 * p.c3;
    const double c = p.c1;
    if (a != 0.0) {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double t = -0.5 * (b + std::copysign(sq, b));
            if (t != 0.0) {
                s_roots.push_back(t / a);
                s_roots.push_back(c / t);
            } else {
                s_roots.push_back(0.0);
            }
        }
    } else if (b != 0.0) {
        s_roots.push_back(-c / b);
    }
    std::vector<double> crit;
    for (double s : s_roots) {
        if (s > 0.0) {
            const double r = std::sqrt(s);
            crit.push_back(-r);
            crit.push_back(r);
        } else if (s == 0.0) {
            crit.push_back(0.0);
        }
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    return crit;
}

std::vector<double> real_roots(const OddQuintic& p) {
    std::vector<double> roots;
    if (p.c5 == 0.0 && p.c3 == 0.0) {
        if (p.c1 != 0.0) {
            roots.push_back(-p.c0 / p.c1);
        } else if (p.c0 == 0.0) {
            roots.push_back(0.0);
        }
        return roots;
    }

    const double bound = p.root_bound();
    if (bound == 0.0) {
        roots.push_back(0.0);
        return roots;
    }
    const double edge = bound * (1.0 + 1e-9);

    std::vector<double> breaks{-edge};
    for (double c : critical_points(p)) {
        if (c > -edge && c < edge) {
            breaks.push_back(c);
        }
    }
    breaks.push_back(edge);

    constexpr double kTangencyTol = 1e-12;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        const double f_lo = p(lo);
        const double f_hi = p(hi);
        if (f_lo == 0.0) {
            roots.push_back(lo);
        }
        if ((f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0)) {
            roots.push_back(bracketed_newton(p, lo, hi));
        }
    }
    if (p(breaks.back()) == 0.0) {
        roots.push_back(breaks.back());
    }
    // Double roots at a critical point never show a sign change.
    for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
        if (p.relative_residual(breaks[i]) <= kTangencyTol) {
            roots.push_back(breaks[i]);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || std::fabs(r - out.back()) > 1e-12 * std::max(std::fabs(r), std::fabs(out.back()))) {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace ncmems
