#pragma once

#include <span>
#include <string_view>

#include "ncmems/hybrid.hpp"

// Batch evaluation of the principal charge branch, net force and potential
// over a displacement grid at a fixed input voltage. A scalar reference
// implementation is always built; an AVX2 variant is selected at runtime
// when the CPU supports AVX2 + FMA. Both must agree to rounding.

namespace ncmems::kernels {

/// Flattened parameters shared by every kernel.
struct BatchModel {
    double k = 0.0;
    double eps_area = 0.0;  // eps0 * A_M
    double gap = 0.0;       // g_o
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double v_in = 0.0;
    bool adhesion = false;
    double lj_attract = 0.0;  // C1 * A_C
    double lj_repel = 0.0;    // C2 * A_C
    double lj_plane = 0.0;    // g_o - h_s
};

[[nodiscard]] BatchModel make_model(const HybridSystem& sys, double v_in);

/// True when beta, gamma >= 0, which makes the principal root unique and
/// reachable by monotone Newton iteration. Otherwise callers fall back to
/// the general root finder in hybrid.
[[nodiscard]] bool supports_batch(const BatchModel& m);

enum class Isa { scalar, avx2 };

[[nodiscard]] std::string_view isa_name(Isa isa);
/// Best instruction set compiled in and supported by this CPU. The
/// NCMEMS_SIMD environment variable ("scalar" or "avx2") caps the choice.
[[nodiscard]] Isa detect_isa();
[[nodiscard]] Isa active_isa();
/// Forces a variant; requesting avx2 on an unsupported CPU keeps scalar.
void set_isa(Isa isa);
[[nodiscard]] bool isa_available(Isa isa);

// Dispatched entry points. All spans must have equal length.
void principal_charge(const BatchModel& m, std::span<const double> x, std::span<double> q);
void net_force(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out);
void potential(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out);

namespace scalar {
void principal_charge(const BatchModel& m, std::span<const double> x, std::span<double> q);
void net_force(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out);
void potential(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void principal_charge(const BatchModel& m, std::span<const double> x, std::span<double> q);
void net_force(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out);
void potential(const BatchModel& m, std::span<const double> x, std::span<const double> q, std::span<double> out);
}  // namespace avx2

}  // namespace ncmems::kernels
