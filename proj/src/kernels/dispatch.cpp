#include <atomic>
#include <cstdlib>
#include <string>

#include "ncmems/errors.hpp"
#include "ncmems/kernels.hpp"

namespace ncmems::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(NCMEMS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect_isa()};
    return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) {
        throw ValidationError("batch kernel spans must have equal length");
    }
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa detect_isa() {
    Isa best = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
    if (const char* env = std::getenv("NCMEMS_SIMD")) {
        if (std::string(env) == "scalar") {
            best = Isa::scalar;
        }
    }
    return best;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) { current().store(isa_available(isa) ? isa : Isa::scalar, std::memory_order_relaxed); }

void principal_charge(const BatchModel& m, std::span<const double> x, std::span<double> q) {
    check_sizes(x.size(), q.size());
#if defined(NCMEMS_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        avx2::principal_charge(m, x, q);
        return;
    }
#endif
    scalar::principal_charge(m, x, q);
}

void net_force(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out) {
    check_sizes(x.size(), q.size());
    check_sizes(x.size(), out.size());
#if defined(NCMEMS_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        avx2::net_force(m, x, q, out);
        return;
    }
#endif
    scalar::net_force(m, x, q, out);
}

void potential(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out) {
    check_sizes(x.size(), q.size());
    check_sizes(x.size(), out.size());
#if defined(NCMEMS_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        avx2::potential(m, x, q, out);
        return;
    }
#endif
    scalar::potential(m, x, q, out);
}

}  // namespace ncmems::kernels
