// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <array>
#include <cmath>
#include <limits>

#include "ncmems/kernels.hpp"
#include "newton_start.hpp"

namespace ncmems::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

}  // namespace

void principal_charge(const BatchModel& m, std::span<const double> x, std::span<double> q) {
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    const double v = std::fabs(m.v_in);
    if (v == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = m.gap - x[i] > 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
        }
        return;
    }
    const __m256d sign = splat(m.v_in >= 0.0 ? 1.0 : -1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = splat(1.0);
    const __m256d three = splat(3.0);
    const __m256d five = splat(5.0);
    const __m256d tol = splat(4.0 * std::numeric_limits<double>::epsilon());
    const __m256d nan = splat(std::numeric_limits<double>::quiet_NaN());

    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d xv = _mm256_loadu_pd(&x[i]);
        const __m256d d = _mm256_sub_pd(splat(m.gap), xv);
        const __m256d valid = _mm256_cmp_pd(d, zero, _CMP_GT_OQ);
        const __m256d c = _mm256_div_pd(splat(m.eps_area), d);
        const __m256d a5 = _mm256_mul_pd(c, splat(m.gamma));
        const __m256d a3 = _mm256_mul_pd(c, splat(m.beta));
        const __m256d a1 = _mm256_sub_pd(one, _mm256_mul_pd(c, splat(m.alpha)));
        const __m256d a0 = _mm256_mul_pd(c, splat(v));

        // cbrt/pow have no AVX2 form; the starting bound is computed per lane.
        alignas(32) std::array<double, kLanes> c5, c3, c1, c0, start;
        _mm256_store_pd(c5.data(), a5);
        _mm256_store_pd(c3.data(), a3);
        _mm256_store_pd(c1.data(), a1);
        _mm256_store_pd(c0.data(), a0);
        for (std::size_t l = 0; l < kLanes; ++l) {
            start[l] = detail::positive_root_upper_bound(c5[l], c3[l], c1[l], c0[l]);
        }
        __m256d r = _mm256_load_pd(start.data());
        __m256d active = valid;

        for (int it = 0; it < detail::kMaxNewton && _mm256_movemask_pd(active) != 0; ++it) {
            const __m256d r2 = _mm256_mul_pd(r, r);
            const __m256d inner = _mm256_add_pd(_mm256_mul_pd(a5, r2), a3);
            const __m256d f = _mm256_sub_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(inner, r2), a1), r), a0);
            active = _mm256_and_pd(active, _mm256_cmp_pd(f, zero, _CMP_GT_OQ));
            const __m256d dinner = _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(five, a5), r2), _mm256_mul_pd(three, a3));
            const __m256d df = _mm256_add_pd(_mm256_mul_pd(dinner, r2), a1);
            const __m256d step = _mm256_div_pd(f, df);
            const __m256d next = _mm256_sub_pd(r, step);
            r = _mm256_blendv_pd(r, next, active);
            const __m256d converged = _mm256_cmp_pd(step, _mm256_mul_pd(tol, next), _CMP_LE_OQ);
            active = _mm256_andnot_pd(converged, active);
        }
        r = _mm256_blendv_pd(nan, _mm256_mul_pd(sign, r), valid);
        _mm256_storeu_pd(&q[i], r);
    }
    if (body < n) {
        scalar::principal_charge(m, x.subspan(body), q.subspan(body));
    }
}

void net_force(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out) {
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    const __m256d inv_two_ea = splat(1.0 / (2.0 * m.eps_area));
    const __m256d k = splat(m.k);
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d xv = _mm256_loadu_pd(&x[i]);
        const __m256d qv = _mm256_loadu_pd(&q[i]);
        __m256d f = _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(qv, qv), inv_two_ea), _mm256_mul_pd(k, xv));
        if (m.adhesion) {
            const __m256d d = _mm256_sub_pd(splat(m.lj_plane), xv);
            const __m256d d3 = _mm256_mul_pd(_mm256_mul_pd(d, d), d);
            const __m256d d9 = _mm256_mul_pd(_mm256_mul_pd(d3, d3), d3);
            f = _mm256_add_pd(f, _mm256_sub_pd(_mm256_div_pd(splat(m.lj_attract), d3),
                                               _mm256_div_pd(splat(m.lj_repel), d9)));
        }
        _mm256_storeu_pd(&out[i], f);
    }
    if (body < n) {
        scalar::net_force(m, x.subspan(body), q.subspan(body), out.subspan(body));
    }
}

void potential(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out) {
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    const __m256d neg_alpha = splat(-m.alpha);
    const __m256d beta = splat(m.beta);
    const __m256d gamma = splat(m.gamma);
    const __m256d half_neg_alpha = splat(-0.5 * m.alpha);
    const __m256d quarter_beta = splat(0.25 * m.beta);
    const __m256d sixth_gamma = splat(m.gamma / 6.0);
    const __m256d half_k = splat(0.5 * m.k);
    const __m256d half_ea = splat(0.5 * m.eps_area);
    const __m256d v_in = splat(m.v_in);
    const __m256d gap = splat(m.gap);
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d xv = _mm256_loadu_pd(&x[i]);
        const __m256d qv = _mm256_loadu_pd(&q[i]);
        const __m256d q2 = _mm256_mul_pd(qv, qv);
        const __m256d vf = _mm256_mul_pd(qv, _mm256_add_pd(neg_alpha, _mm256_mul_pd(q2, _mm256_add_pd(beta, _mm256_mul_pd(q2, gamma)))));
        const __m256d landau = _mm256_mul_pd(
            q2, _mm256_add_pd(half_neg_alpha, _mm256_mul_pd(q2, _mm256_add_pd(quarter_beta, _mm256_mul_pd(q2, sixth_gamma)))));
        const __m256d uf = _mm256_sub_pd(landau, _mm256_mul_pd(vf, qv));
        const __m256d vm = _mm256_sub_pd(v_in, vf);
        const __m256d spring = _mm256_mul_pd(_mm256_mul_pd(half_k, xv), xv);
        const __m256d elec = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(half_ea, vm), vm), _mm256_sub_pd(gap, xv));
        __m256d u = _mm256_add_pd(uf, _mm256_sub_pd(spring, elec));
        if (m.adhesion) {
            const __m256d d = _mm256_sub_pd(splat(m.lj_plane), xv);
            const __m256d d2 = _mm256_mul_pd(d, d);
            const __m256d d4 = _mm256_mul_pd(d2, d2);
            const __m256d d8 = _mm256_mul_pd(d4, d4);
            u = _mm256_add_pd(u, _mm256_sub_pd(_mm256_div_pd(splat(m.lj_repel), _mm256_mul_pd(splat(8.0), d8)),
                                               _mm256_div_pd(splat(m.lj_attract), _mm256_mul_pd(splat(2.0), d2))));
        }
        _mm256_storeu_pd(&out[i], u);
    }
    if (body < n) {
        scalar::potential(m, x.subspan(body), q.subspan(body), out.subspan(body));
    }
}

}  // namespace ncmems::kernels::avx2
