#pragma once

#include <string_view>

namespace ncmems {

/// Grid densities, brackets and tolerances for the landscape solvers.
struct SolverOptions {
    int grid_points = 4096;           // base displacement grid
    double x_tol = 1e-13;             // equilibrium refinement (m)
    double voltage_tol = 1e-4;        // static / dynamic pull-in bisection (V)
    double pull_out_tol = 1e-3;       // pull-out bisection (V)
    double pull_out_floor = -5.0;     // lowest voltage searched for release (V)
    double pull_out_scan_step = 0.05; // downward scan step before bisection (V)
    double gc_lo = 0.1e-9;            // g_c_min bracket (m)
    double gc_hi = 100e-9;
    double gc_tol = 0.01e-9;
    double thickness_tol = 0.05e-9;   // retune bisection (m)
    double thickness_floor = 0.01;    // lower retune bracket, fraction of t_F
    double contact_refine_span = 3.0; // log refinement within this many g_c of contact
    int contact_refine_points = 256;
    double swing_extent = 1.0;        // traces reach x = -swing_extent * g_o
};

/// "default", "fine" (tighter, slower) or "fast". Unknown names throw ValidationError.
[[nodiscard]] SolverOptions tolerance_profile(std::string_view name);

/// Profile named by NCMEMS_TOLERANCE_PROFILE, or "default".
[[nodiscard]] SolverOptions default_solver_options();

}  // namespace ncmems
