#pragma once

#include <vector>

namespace ncmems {

/// p(q) = c5 q^5 + c3 q^3 + c1 q + c0. The charge equation of a series
/// ferroelectric/parallel-plate stack always has this shape.
struct OddQuintic {
    double c5 = 0.0;
    double c3 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    [[nodiscard]] double operator()(double q) const;
    [[nodiscard]] double derivative(double q) const;
    /// Largest |term| of p at q, the scale residuals are measured against.
    [[nodiscard]] double max_term(double q) const;
    /// |p(q)| / max_term(q) (0 when every term vanishes).
    [[nodiscard]] double relative_residual(double q) const;
    /// Fujiwara bound on |root|; 0 when the polynomial is identically zero.
    [[nodiscard]] double root_bound() const;
};

/// Real zeros of p' in increasing order.
[[nodiscard]] std::vector<double> critical_points(const OddQuintic& p);

/// All distinct real roots in increasing order.
///
/// The derivative is biquadratic, so its real zeros are found in closed form;
/// they split the line into monotone pieces and each sign change is isolated
/// by safeguarded Newton. A critical point where p vanishes (tangency, to
/// 1e-12 of the largest term) is reported as a root.
[[nodiscard]] std::vector<double> real_roots(const OddQuintic& p);

}  // namespace ncmems
