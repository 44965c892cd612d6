#include <cstdlib>
#include <string>

#include "ncmems/errors.hpp"
#include "ncmems/options.hpp"

namespace ncmems {

SolverOptions tolerance_profile(std::string_view name) {
    SolverOptions o;
    if (name == "default" || name.empty()) {
        return o;
    }
    if (name == "fine") {
        o.grid_points = 16384;
        o.voltage_tol = 1e-6;
        o.pull_out_tol = 1e-5;
        o.pull_out_scan_step = 0.02;
        o.gc_tol = 0.001e-9;
        o.thickness_tol = 0.005e-9;
        o.contact_refine_points = 1024;
        return o;
    }
    if (name == "fast") {
        o.grid_points = 1024;
        o.voltage_tol = 1e-3;
        o.pull_out_tol = 1e-2;
        o.pull_out_scan_step = 0.1;
        o.gc_tol = 0.1e-9;
        o.thickness_tol = 0.2e-9;
        o.contact_refine_points = 64;
        return o;
    }
    throw ValidationError("unknown tolerance profile '" + std::string(name) + "'");
}

SolverOptions default_solver_options() {
    const char* env = std::getenv("NCMEMS_TOLERANCE_PROFILE");
    return tolerance_profile(env ? std::string_view(env) : std::string_view("default"));
}

}  // namespace ncmems
