#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ncmems/hybrid.hpp"
#include "ncmems/options.hpp"

// Energy-displacement landscape analysis: equilibria, static and dynamic
// pull-in, phase trajectories, pull-out with and without adhesion.

namespace ncmems {

/// Which real root of the charge equation the landscape is evaluated on.
enum class ChargeBranch {
    principal,  // sign(q) = sign(V_in); the branch through q = 0 at zero bias
    contact,    // traced by continuation from the pulled-in state at contact
};

struct LandscapeCurve {
    double v_in = 0.0;
    ChargeBranch branch = ChargeBranch::principal;
    std::vector<double> x;  // strictly increasing
    std::vector<double> q;
    std::vector<double> u;
    std::vector<double> force;
    std::vector<double> folds;  // x where the traced charge root vanished
};

enum class EquilibriumKind { stable, unstable };

struct Equilibrium {
    double x = 0.0;
    EquilibriumKind kind = EquilibriumKind::stable;
    double u = 0.0;
};

struct PullIn {
    double voltage = 0.0;
    double displacement = 0.0;
};

struct PullAnalysis {
    PullIn static_pull_in;
    PullIn dynamic_pull_in;
    std::optional<double> pull_out;  // empty: never released in the search range
    bool adhesion = false;
};

enum class Motion { closed, open };

struct PhaseTrajectory {
    double v_in = 0.0;
    double energy = 0.0;
    Motion motion = Motion::open;
    std::optional<double> left_turn;
    std::optional<double> right_turn;
    // Upper branch left to right, then the lower branch back (closed loop order).
    std::vector<double> x;
    std::vector<double> xdot;
};

struct ReleaseCheck {
    bool released = false;
    double x_contact = 0.0;
    double u_contact = 0.0;
    std::optional<double> x_stable;   // free equilibrium reached on release
    std::optional<double> barrier_x;  // first point above U(x_contact)
    std::vector<double> folds;
};

struct GapSweepPoint {
    double gc = 0.0;
    std::optional<double> v_hpo;
};

/// Uniform grid on [x_lo, x_hi] with extra log-spaced points within
/// contact_refine_span * g_c of x_hi when adhesion is configured.
[[nodiscard]] std::vector<double> displacement_grid(const HybridSystem& sys, double x_lo, double x_hi, int n,
                                                    const SolverOptions& opts);

[[nodiscard]] LandscapeCurve sample_potential(const HybridSystem& sys, double v_in, double x_lo, double x_hi,
                                              int n, ChargeBranch branch = ChargeBranch::principal,
                                              const SolverOptions& opts = {});

/// Force and potential on the principal branch for every grid point.
[[nodiscard]] LandscapeCurve evaluate_principal(const HybridSystem& sys, double v_in, std::span<const double> x);

/// Follows the contact branch from x_from down to x_to over the given
/// grid (ordered from contact outward); results are returned with x increasing.
[[nodiscard]] LandscapeCurve trace_contact_branch(const HybridSystem& sys, double v_in,
                                                  std::span<const double> grid_from_contact, int polarity = +1);

/// All equilibria on [0, contact_position()], principal branch.
[[nodiscard]] std::vector<Equilibrium> find_equilibria(const HybridSystem& sys, double v_in,
                                                       const SolverOptions& opts = {});

[[nodiscard]] PullIn static_pull_in(const HybridSystem& sys, const SolverOptions& opts = {});
[[nodiscard]] PullIn dynamic_pull_in(const HybridSystem& sys, const SolverOptions& opts = {});

[[nodiscard]] PhaseTrajectory phase_trajectory(const HybridSystem& sys, double v_in, double x0, double xdot0,
                                               ChargeBranch branch = ChargeBranch::principal,
                                               const SolverOptions& opts = {});

/// Release predicate from rest at the contact position: the electrode
/// reaches a free stable equilibrium without meeting any U > U(x_contact).
/// A pinned start (net force into the stopper, or zero) is not a release.
[[nodiscard]] ReleaseCheck check_release(const HybridSystem& sys, double v_in, const SolverOptions& opts = {},
                                         int polarity = +1);

/// Highest input voltage that releases a pulled-in electrode; empty when
/// nothing down to opts.pull_out_floor releases.
[[nodiscard]] std::optional<double> pull_out_voltage(const HybridSystem& sys, const SolverOptions& opts = {});

[[nodiscard]] PullAnalysis analyze(const HybridSystem& sys, const SolverOptions& opts = {});

[[nodiscard]] std::vector<GapSweepPoint> sweep_contact_gap(const HybridSystem& sys, std::span<const double> gcs,
                                                           const SolverOptions& opts = {});

/// Smallest effective contact gap that still releases at v_test.
[[nodiscard]] double min_contact_gap(const HybridSystem& sys, double v_test, const SolverOptions& opts = {});

/// Largest ferroelectric thickness (area fixed) that releases at v_in with
/// the given contact gap.
[[nodiscard]] double retune_thickness(const HybridSystem& sys, double gc, double v_in = 0.0,
                                      const SolverOptions& opts = {});

}  // namespace ncmems
