#include "ncmems/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "ncmems/errors.hpp"
#include "ncmems/kernels.hpp"
#include "ncmems/mems.hpp"

namespace ncmems {

namespace {

double contact_gap_of(const HybridSystem& sys) { return sys.adhesion ? sys.adhesion->contact_gap() : 0.0; }

void require_contact_gap(const HybridSystem& sys) {
    if (sys.adhesion && !(sys.adhesion->contact_gap() > 0.0)) {
        throw ValidationError("adhesion analysis needs a positive effective contact gap");
    }
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

double bisect(const std::function<bool(double)>& right_side, double lo, double hi, double tol) {
    // right_side(lo) == false, right_side(hi) == true
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (right_side(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Root of f in [a, b] given a sign change, to an absolute x tolerance.
double refine_root(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Points ordered from x_c outward to x_min, refined near contact.
std::vector<double> grid_from_contact(const HybridSystem& sys, double x_c, double x_min, const SolverOptions& opts) {
    std::vector<double> g = displacement_grid(sys, x_min, x_c, opts.grid_points, opts);
    std::reverse(g.begin(), g.end());
    return g;
}

double evaluate_u(const HybridSystem& sys, double v, double x, double q_hint) {
    const double q = track_charge(x, v, sys, q_hint).q;
    return potential_at_charge(x, v, q, sys);
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

std::vector<double> displacement_grid(const HybridSystem& sys, double x_lo, double x_hi, int n,
                                      const SolverOptions& opts) {
    if (!(x_hi > x_lo) || n < 2) {
        throw ValidationError("displacement grid needs x_hi > x_lo and at least two points");
    }
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n + opts.contact_refine_points) + 2);
    for (int i = 0; i < n; ++i) {
        g.push_back(x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.back() = x_hi;
    const double gc = contact_gap_of(sys);
    if (sys.adhesion && gc > 0.0 && opts.contact_refine_points > 1) {
        const double span = std::min(opts.contact_refine_span * gc, x_hi - x_lo);
        const double d_min = span * 1e-4;
        const int m = opts.contact_refine_points;
        for (int i = 0; i < m; ++i) {
            const double d = d_min * std::pow(span / d_min, static_cast<double>(i) / static_cast<double>(m - 1));
            g.push_back(x_hi - d);
        }
    }
    sort_unique(g);
    return g;
}

LandscapeCurve evaluate_principal(const HybridSystem& sys, double v_in, std::span<const double> x) {
    LandscapeCurve c;
    c.v_in = v_in;
    c.branch = ChargeBranch::principal;
    c.x.assign(x.begin(), x.end());
    const std::size_t n = x.size();
    c.q.resize(n);
    c.u.resize(n);
    c.force.resize(n);
    const auto model = kernels::make_model(sys, v_in);
    if (kernels::supports_batch(model)) {
        kernels::principal_charge(model, c.x, c.q);
        kernels::net_force(model, c.x, c.q, c.force);
        kernels::potential(model, c.x, c.q, c.u);
        return c;
    }
    for (std::size_t i = 0; i < n; ++i) {
        c.q[i] = solve_charge(c.x[i], v_in, sys).q;
        c.u[i] = potential_at_charge(c.x[i], v_in, c.q[i], sys);
        c.force[i] = force_at_charge(c.x[i], c.q[i], sys);
    }
    return c;
}

LandscapeCurve trace_contact_branch(const HybridSystem& sys, double v_in, std::span<const double> grid, int polarity) {
    LandscapeCurve c;
    c.v_in = v_in;
    c.branch = ChargeBranch::contact;
    if (grid.empty()) {
        return c;
    }
    double q = contact_charge(grid[0], v_in, sys, polarity);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        if (i > 0) {
            const auto step = track_charge(x, v_in, sys, q);
            if (step.fold) {
                c.folds.push_back(x);
            }
            q = step.q;
        }
        c.x.push_back(x);
        c.q.push_back(q);
        c.u.push_back(potential_at_charge(x, v_in, q, sys));
        c.force.push_back(force_at_charge(x, q, sys));
    }
    if (c.x.size() > 1 && c.x.front() > c.x.back()) {
        std::reverse(c.x.begin(), c.x.end());
        std::reverse(c.q.begin(), c.q.end());
        std::reverse(c.u.begin(), c.u.end());
        std::reverse(c.force.begin(), c.force.end());
        std::reverse(c.folds.begin(), c.folds.end());
    }
    return c;
}

LandscapeCurve sample_potential(const HybridSystem& sys, double v_in, double x_lo, double x_hi, int n,
                                ChargeBranch branch, const SolverOptions& opts) {
    if (!(x_hi < sys.mems.gap)) {
        throw DomainError("sampling range reaches the fixed electrode");
    }
    if (sys.adhesion && !(x_hi < sys.mems.travel())) {
        throw DomainError("sampling range reaches the stopper plane");
    }
    const auto grid = displacement_grid(sys, x_lo, x_hi, n, opts);
    if (branch == ChargeBranch::principal) {
        return evaluate_principal(sys, v_in, grid);
    }
    std::vector<double> outward(grid.rbegin(), grid.rend());
    return trace_contact_branch(sys, v_in, outward, +1);
}

std::vector<Equilibrium> find_equilibria(const HybridSystem& sys, double v_in, const SolverOptions& opts) {
    require_contact_gap(sys);
    const double x_c = sys.contact_position();
    const auto grid = displacement_grid(sys, 0.0, x_c, opts.grid_points, opts);
    const auto c = evaluate_principal(sys, v_in, grid);
    const auto force = [&](double x) { return net_force(x, v_in, sys); };

    std::vector<Equilibrium> out;
    const auto& f = c.force;
    const std::size_t n = f.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double x = 0.0;
        bool hit = false;
        EquilibriumKind kind = EquilibriumKind::stable;
        if (f[i] == 0.0) {
            // Exact grid zero: classify from the neighbours.
            const double left = i > 0 ? f[i - 1] : 0.0;
            const double right = f[i + 1];
            if (i == 0 ? right < 0.0 : (left > 0.0 && right < 0.0)) {
                hit = true;
                kind = EquilibriumKind::stable;
            } else if (i > 0 && left < 0.0 && right > 0.0) {
                hit = true;
                kind = EquilibriumKind::unstable;
            }
            x = c.x[i];
        } else if (f[i + 1] != 0.0 && (f[i] > 0.0) != (f[i + 1] > 0.0)) {
            hit = true;
            kind = f[i] > 0.0 ? EquilibriumKind::stable : EquilibriumKind::unstable;
            x = refine_root(force, c.x[i], c.x[i + 1], opts.x_tol);
        }
        if (hit) {
            out.push_back({x, kind, hybrid_potential(x, v_in, sys)});
        }
    }
    return out;
}

namespace {

bool has_stable(const HybridSystem& sys, double v, const SolverOptions& opts) {
    const auto eq = find_equilibria(sys, v, opts);
    return std::any_of(eq.begin(), eq.end(), [](const Equilibrium& e) { return e.kind == EquilibriumKind::stable; });
}

}  // namespace

PullIn static_pull_in(const HybridSystem& sys, const SolverOptions& opts) {
    require_contact_gap(sys);
    double lo = 0.0;
    double hi = 2.0 * standalone_metrics(sys.mems).v_spi;
    if (!has_stable(sys, lo, opts)) {
        throw BracketError("no stable equilibrium at zero bias");
    }
    if (has_stable(sys, hi, opts)) {
        throw BracketError("stable equilibrium persists above twice the standalone pull-in voltage");
    }
    const double v = bisect([&](double vv) { return !has_stable(sys, vv, opts); }, lo, hi, opts.voltage_tol);
    // Locate the fold from the last voltage that still has a stable state.
    double v_below = v - opts.voltage_tol;
    auto eq = find_equilibria(sys, v_below, opts);
    while (std::none_of(eq.begin(), eq.end(), [](const Equilibrium& e) { return e.kind == EquilibriumKind::stable; })) {
        v_below -= opts.voltage_tol;
        eq = find_equilibria(sys, v_below, opts);
    }
    double x_s = 0.0;
    double x_u = sys.contact_position();
    for (std::size_t i = 0; i < eq.size(); ++i) {
        if (eq[i].kind == EquilibriumKind::stable) {
            x_s = eq[i].x;
            if (i + 1 < eq.size()) {
                x_u = eq[i + 1].x;
            }
            break;
        }
    }
    // F < 0 between the pair; the fold is where that dip closes.
    const double x = golden_max([&](double xx) { return -net_force(xx, v, sys); }, x_s, x_u, 1e-12);
    return {v, x};
}

namespace {

struct Barrier {
    bool pulled = true;
    double x_u = 0.0;
};

Barrier dynamic_barrier(const HybridSystem& sys, double v, const SolverOptions& opts) {
    const auto eq = find_equilibria(sys, v, opts);
    const double u0 = hybrid_potential(0.0, v, sys);
    Barrier b;
    bool first = true;
    double u_max = -std::numeric_limits<double>::infinity();
    for (const auto& e : eq) {
        if (e.kind != EquilibriumKind::unstable) {
            continue;
        }
        if (first) {
            b.x_u = e.x;
            first = false;
        }
        u_max = std::max(u_max, e.u);
    }
    // Force still pointing away from contact at the stopper acts as a barrier too.
    const double x_c = sys.contact_position();
    if (net_force(x_c, v, sys) <= 0.0) {
        u_max = std::max(u_max, hybrid_potential(x_c, v, sys));
    }
    b.pulled = net_force(0.0, v, sys) > 0.0 && u0 > u_max;
    return b;
}

}  // namespace

PullIn dynamic_pull_in(const HybridSystem& sys, const SolverOptions& opts) {
    require_contact_gap(sys);
    const double hi = static_pull_in(sys, opts).voltage + opts.voltage_tol;
    if (dynamic_barrier(sys, 0.0, opts).pulled) {
        throw BracketError("released at zero bias is not a pull-in bracket");
    }
    const double v = bisect([&](double vv) { return dynamic_barrier(sys, vv, opts).pulled; }, 0.0, hi,
                            opts.voltage_tol);
    // X_HDPI: the barrier position just below threshold.
    double v_below = v - 0.5 * opts.voltage_tol;
    Barrier b = dynamic_barrier(sys, v_below, opts);
    while (b.pulled && v_below > 0.0) {
        v_below -= 0.5 * opts.voltage_tol;
        b = dynamic_barrier(sys, v_below, opts);
    }
    return {v, b.x_u};
}

PhaseTrajectory phase_trajectory(const HybridSystem& sys, double v_in, double x0, double xdot0, ChargeBranch branch,
                                 const SolverOptions& opts) {
    require_contact_gap(sys);
    const double x_c = sys.contact_position();
    const double x_min = -opts.swing_extent * sys.mems.gap;
    if (!(x0 <= x_c) || !(x0 >= x_min)) {
        throw DomainError("initial displacement outside [-g_o, contact position]");
    }
    auto grid = displacement_grid(sys, x_min, x_c, opts.grid_points, opts);
    grid.push_back(x0);
    sort_unique(grid);

    LandscapeCurve c;
    if (branch == ChargeBranch::principal) {
        c = evaluate_principal(sys, v_in, grid);
    } else {
        std::vector<double> outward(grid.rbegin(), grid.rend());
        c = trace_contact_branch(sys, v_in, outward, +1);
    }
    const std::size_t n = c.x.size();
    const std::size_t i0 = static_cast<std::size_t>(std::lower_bound(c.x.begin(), c.x.end(), x0) - c.x.begin());
    const double m = sys.mems.m;
    const double e = c.u[i0] + 0.5 * m * xdot0 * xdot0;

    PhaseTrajectory t;
    t.v_in = v_in;
    t.energy = e;

    const double f0 = c.force[i0];
    if (xdot0 == 0.0 && i0 == n - 1 && f0 >= 0.0) {
        // Held against the stopper.
        t.motion = Motion::open;
        t.right_turn = c.x[i0];
        t.x = {c.x[i0]};
        t.xdot = {0.0};
        return t;
    }
    if (xdot0 == 0.0 && f0 == 0.0) {
        t.motion = Motion::closed;
        t.left_turn = t.right_turn = c.x[i0];
        t.x = {c.x[i0]};
        t.xdot = {0.0};
        return t;
    }

    const bool scan_left = !(xdot0 == 0.0 && f0 > 0.0);
    const bool scan_right = !(xdot0 == 0.0 && f0 < 0.0);
    std::size_t lo = i0;
    std::size_t hi = i0;
    bool open = false;
    if (scan_left) {
        while (lo > 0 && c.u[lo - 1] <= e) {
            --lo;
        }
        if (lo == 0) {
            open = true;
        } else {
            const auto g = [&](double x) { return evaluate_u(sys, v_in, x, c.q[lo]) - e; };
            t.left_turn = refine_root(g, c.x[lo - 1], c.x[lo], opts.x_tol);
        }
    } else {
        t.left_turn = c.x[i0];
    }
    if (scan_right) {
        while (hi + 1 < n && c.u[hi + 1] <= e) {
            ++hi;
        }
        if (hi + 1 == n) {
            open = true;
        } else {
            const auto g = [&](double x) { return evaluate_u(sys, v_in, x, c.q[hi]) - e; };
            t.right_turn = refine_root(g, c.x[hi], c.x[hi + 1], opts.x_tol);
        }
    } else {
        t.right_turn = c.x[i0];
    }
    t.motion = open ? Motion::open : Motion::closed;

    std::vector<double> xs;
    std::vector<double> us;
    if (t.left_turn && *t.left_turn < c.x[lo]) {
        xs.push_back(*t.left_turn);
        us.push_back(e);
    }
    for (std::size_t i = lo; i <= hi; ++i) {
        xs.push_back(c.x[i]);
        us.push_back(std::min(c.u[i], e));
    }
    if (t.right_turn && *t.right_turn > c.x[hi]) {
        xs.push_back(*t.right_turn);
        us.push_back(e);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        t.x.push_back(xs[i]);
        t.xdot.push_back(std::sqrt(2.0 * (e - us[i]) / m));
    }
    for (std::size_t i = xs.size(); i-- > 0;) {
        t.x.push_back(xs[i]);
        t.xdot.push_back(-std::sqrt(2.0 * (e - us[i]) / m));
    }
    return t;
}

ReleaseCheck check_release(const HybridSystem& sys, double v_in, const SolverOptions& opts, int polarity) {
    require_contact_gap(sys);
    ReleaseCheck r;
    const double x_c = sys.contact_position();
    r.x_contact = x_c;
    double q = contact_charge(x_c, v_in, sys, polarity);
    r.u_contact = potential_at_charge(x_c, v_in, q, sys);
    double f_prev = force_at_charge(x_c, q, sys);
    if (f_prev >= 0.0) {
        r.barrier_x = x_c;
        return r;
    }
    const auto grid = grid_from_contact(sys, x_c, -opts.swing_extent * sys.mems.gap, opts);
    double x_prev = x_c;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double x = grid[i];
        const auto step = track_charge(x, v_in, sys, q);
        if (step.fold) {
            r.folds.push_back(x);
        }
        const double u = potential_at_charge(x, v_in, step.q, sys);
        const double f = force_at_charge(x, step.q, sys);
        if (u > r.u_contact) {
            r.barrier_x = x;
            return r;
        }
        if (f > 0.0) {
            // Force turned back toward contact: a free stable equilibrium.
            const double q_prev = q;
            const auto g = [&](double xx) { return force_at_charge(xx, track_charge(xx, v_in, sys, q_prev).q, sys); };
            r.x_stable = refine_root(g, x, x_prev, opts.x_tol);
            r.released = true;
            return r;
        }
        q = step.q;
        f_prev = f;
        x_prev = x;
    }
    return r;
}

std::optional<double> pull_out_voltage(const HybridSystem& sys, const SolverOptions& opts) {
    require_contact_gap(sys);
    const double top = static_pull_in(sys, opts).voltage;
    const auto released = [&](double v) { return check_release(sys, v, opts).released; };
    if (released(top)) {
        return top;
    }
    double v_hi = top;
    double v = top - opts.pull_out_scan_step;
    while (v >= opts.pull_out_floor) {
        if (released(v)) {
            const double lo = v;
            return bisect([&](double vv) { return !released(vv); }, lo, v_hi, opts.pull_out_tol);
        }
        v_hi = v;
        v -= opts.pull_out_scan_step;
    }
    return std::nullopt;
}

PullAnalysis analyze(const HybridSystem& sys, const SolverOptions& opts) {
    PullAnalysis a;
    a.adhesion = sys.adhesion.has_value();
    a.static_pull_in = static_pull_in(sys, opts);
    a.dynamic_pull_in = dynamic_pull_in(sys, opts);
    a.pull_out = pull_out_voltage(sys, opts);
    return a;
}

std::vector<GapSweepPoint> sweep_contact_gap(const HybridSystem& sys, std::span<const double> gcs,
                                             const SolverOptions& opts) {
    for (double gc : gcs) {
        if (!(gc > 0.0)) {
            throw ValidationError("contact gaps in a sweep must be positive");
        }
    }
    std::vector<GapSweepPoint> out(gcs.size());
    parallel_for(gcs.size(), [&](std::size_t i) {
        out[i].gc = gcs[i];
        out[i].v_hpo = pull_out_voltage(sys.with_contact_gap(gcs[i]), opts);
    });
    return out;
}

double min_contact_gap(const HybridSystem& sys, double v_test, const SolverOptions& opts) {
    const auto released = [&](double gc) { return check_release(sys.with_contact_gap(gc), v_test, opts).released; };
    if (released(opts.gc_lo) || !released(opts.gc_hi)) {
        throw BracketError("release predicate does not change sign over the contact-gap bracket");
    }
    double lo = opts.gc_lo;
    double hi = opts.gc_hi;
    while (hi - lo > opts.gc_tol) {
        const double mid = 0.5 * (lo + hi);
        if (released(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double retune_thickness(const HybridSystem& sys, double gc, double v_in, const SolverOptions& opts) {
    const double t_f = sys.ferro.thickness();
    if (!(t_f > 0.0)) {
        throw ValidationError("retuning needs a ferroelectric layer");
    }
    const auto released = [&](double t) {
        return check_release(sys.with_thickness(t).with_contact_gap(gc), v_in, opts).released;
    };
    double lo = opts.thickness_floor * t_f;
    double hi = t_f;
    if (!released(lo) || released(hi)) {
        throw BracketError("release predicate does not change sign over the thickness bracket");
    }
    while (hi - lo > opts.thickness_tol) {
        const double mid = 0.5 * (lo + hi);
        if (released(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace ncmems
