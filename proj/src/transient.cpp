#include "ncmems/transient.hpp"

#include <algorithm>
#include <cmath>

#include "ncmems/errors.hpp"
#include "ncmems/landscape.hpp"

namespace ncmems {

void Waveform::validate() const {
    if (!(t_rise >= 0.0)) {
        throw ValidationError("waveform rise time must be non-negative");
    }
    if (!(t_stop > 0.0)) {
        throw ValidationError("waveform stop time must be positive");
    }
    if (kind == WaveformKind::piecewise_linear) {
        if (pwl_t.size() != pwl_v.size() || pwl_t.empty()) {
            throw ValidationError("piecewise-linear waveform needs matching, non-empty breakpoint lists");
        }
        for (std::size_t i = 1; i < pwl_t.size(); ++i) {
            if (!(pwl_t[i] > pwl_t[i - 1])) {
                throw ValidationError("piecewise-linear breakpoints must have increasing times");
            }
        }
    }
}

double Waveform::voltage(double t) const {
    switch (kind) {
        case WaveformKind::step:
            return t >= 0.0 ? amplitude : offset;
        case WaveformKind::ramp:
            if (t <= 0.0) {
                return offset;
            }
            if (t >= t_rise) {
                return amplitude;
            }
            return offset + (amplitude - offset) * t / t_rise;
        case WaveformKind::piecewise_linear: {
            if (t <= pwl_t.front()) {
                return pwl_v.front();
            }
            if (t >= pwl_t.back()) {
                return pwl_v.back();
            }
            const auto it = std::upper_bound(pwl_t.begin(), pwl_t.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - pwl_t.begin());
            const double s = (t - pwl_t[i - 1]) / (pwl_t[i] - pwl_t[i - 1]);
            return pwl_v[i - 1] + s * (pwl_v[i] - pwl_v[i - 1]);
        }
    }
    return 0.0;
}

Waveform Waveform::step(double amplitude, double t_stop, double offset) {
    Waveform w;
    w.kind = WaveformKind::step;
    w.amplitude = amplitude;
    w.t_stop = t_stop;
    w.offset = offset;
    return w;
}

Waveform Waveform::ramp(double amplitude, double t_rise, double t_stop, double offset) {
    Waveform w;
    w.kind = t_rise > 0.0 ? WaveformKind::ramp : WaveformKind::step;
    w.amplitude = amplitude;
    w.t_rise = t_rise;
    w.t_stop = t_stop;
    w.offset = offset;
    return w;
}

Waveform Waveform::piecewise(std::vector<double> t, std::vector<double> v) {
    Waveform w;
    w.kind = WaveformKind::piecewise_linear;
    if (!t.empty()) {
        w.t_stop = t.back();
        w.amplitude = v.empty() ? 0.0 : v.back();
        w.offset = v.empty() ? 0.0 : v.front();
    }
    w.pwl_t = std::move(t);
    w.pwl_v = std::move(v);
    return w;
}

InputSpeed classify_input(double t_rise, double t_sys) {
    if (t_rise <= 0.1 * t_sys) {
        return InputSpeed::fast;
    }
    if (t_rise >= 10.0 * t_sys) {
        return InputSpeed::slow;
    }
    return InputSpeed::intermediate;
}

std::string_view input_speed_name(InputSpeed s) {
    switch (s) {
        case InputSpeed::fast:
            return "fast";
        case InputSpeed::slow:
            return "slow";
        case InputSpeed::intermediate:
            return "intermediate";
    }
    return "intermediate";
}

std::string_view event_name(EventKind k) {
    switch (k) {
        case EventKind::pull_in:
            return "pull_in";
        case EventKind::pull_out:
            return "pull_out";
        case EventKind::fold:
            return "fold";
    }
    return "fold";
}

double contact_region(const HybridSystem& sys) {
    const double gc = sys.adhesion ? sys.adhesion->contact_gap() : 0.0;
    return std::max(3.0 * gc, 1e-3 * sys.mems.travel());
}

namespace {

struct Accel {
    double a = 0.0;
    double q = 0.0;
};

Accel acceleration(const HybridSystem& sys, double x, double xdot, double v, double q_hint, double x_c) {
    const double xs = std::min(x, x_c);
    const double q = track_charge(xs, v, sys, q_hint).q;
    const double f = force_at_charge(xs, q, sys) - sys.mems.c * xdot;
    return {f / sys.mems.m, q};
}

TrajectorySample make_sample(const HybridSystem& sys, double t, double x, double xd, double q, double v, bool contact) {
    TrajectorySample s;
    s.t = t;
    s.x = x;
    s.v = xd;
    s.q = q;
    s.v_in = v;
    s.v_f = vf_of_q(q, sys.ferro);
    s.v_m = v - s.v_f;
    s.h = 0.5 * sys.mems.m * xd * xd + potential_at_charge(x, v, q, sys);
    s.contact = contact;
    return s;
}

}  // namespace

Trajectory simulate(const HybridSystem& sys, const Waveform& w, const SimulationOptions& opts) {
    sys.validate();
    w.validate();
    if (sys.adhesion && !(sys.adhesion->contact_gap() > 0.0)) {
        throw ValidationError("adhesion simulation needs a positive effective contact gap");
    }
    const double t_sys = system_timescales(sys.mems).t_sys;
    const double dt = opts.dt.value_or(t_sys / 2000.0);
    if (!(dt > 0.0)) {
        throw ValidationError("time step must be positive");
    }
    if (opts.record_every < 1) {
        throw ValidationError("record_every must be at least 1");
    }
    const double x_c = sys.contact_position();

    Trajectory traj;
    traj.dt = dt;
    double x = opts.x0;
    double xd = opts.xdot0;
    bool contact = opts.start_in_contact;
    const double v0 = w.voltage(0.0);
    double q = 0.0;
    if (contact) {
        x = x_c;
        xd = 0.0;
        // Pulled in at positive bias: the ferroelectric stays on that branch.
        q = contact_charge(x_c, v0, sys, +1);
    } else {
        if (!(x <= x_c)) {
            throw DomainError("initial displacement beyond the contact position");
        }
        q = solve_charge(x, v0, sys).q;
    }
    traj.samples.push_back(make_sample(sys, 0.0, x, xd, q, v0, contact));

    const auto steps = static_cast<long long>(std::ceil(w.t_stop / dt - 1e-9));
    for (long long n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double t1 = std::min(t + dt, w.t_stop);
        const double h = t1 - t;
        const double va = w.voltage(t);
        const double vm = w.voltage(t + 0.5 * h);
        const double vb = w.voltage(t1);
        try {
            if (contact) {
                const double qc = track_charge(x_c, vb, sys, q).q;
                if (force_at_charge(x_c, qc, sys) >= 0.0) {
                    q = qc;
                    if ((n + 1) % opts.record_every == 0 || n + 1 == steps) {
                        traj.samples.push_back(make_sample(sys, t1, x_c, 0.0, q, vb, true));
                    }
                    continue;
                }
                contact = false;
                x = x_c;
                xd = 0.0;
            }
            const Accel k1 = acceleration(sys, x, xd, va, q, x_c);
            const double x2 = x + 0.5 * h * xd;
            const double v2 = xd + 0.5 * h * k1.a;
            const Accel k2 = acceleration(sys, x2, v2, vm, k1.q, x_c);
            const double x3 = x + 0.5 * h * v2;
            const double v3 = xd + 0.5 * h * k2.a;
            const Accel k3 = acceleration(sys, x3, v3, vm, k2.q, x_c);
            const double x4 = x + h * v3;
            const double v4 = xd + h * k3.a;
            const Accel k4 = acceleration(sys, x4, v4, vb, k3.q, x_c);
            double xn = x + h / 6.0 * (xd + 2.0 * v2 + 2.0 * v3 + v4);
            double xdn = xd + h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
            if (xn >= x_c) {
                xn = x_c;
                xdn = 0.0;
                contact = true;
            }
            const auto step = track_charge(xn, vb, sys, q);
            if (step.fold) {
                traj.events.push_back({t1, EventKind::fold, xn});
            }
            if (!std::isfinite(xn) || !std::isfinite(xdn) || !std::isfinite(step.q)) {
                throw SolverError("non-finite state");
            }
            x = xn;
            xd = xdn;
            q = step.q;
        } catch (const Error& e) {
            traj.aborted = true;
            traj.abort_reason = e.what();
            break;
        }
        if ((n + 1) % opts.record_every == 0 || n + 1 == steps) {
            traj.samples.push_back(make_sample(sys, t1, x, xd, q, vb, contact));
        }
    }

    auto events = detect_events(traj, sys);
    events.insert(events.end(), traj.events.begin(), traj.events.end());
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
    traj.events = std::move(events);

    // Energy drift check, meaningful only for a conservative run.
    const auto& s = traj.samples;
    const bool constant_input =
        std::all_of(s.begin(), s.end(), [&](const TrajectorySample& p) { return p.v_in == s.front().v_in; });
    const bool touched = std::any_of(s.begin(), s.end(), [](const TrajectorySample& p) { return p.contact; });
    if (sys.mems.c == 0.0 && constant_input && !touched && !s.empty()) {
        const double h0 = s.front().h;
        double scale = std::fabs(h0);
        for (const auto& p : s) {
            scale = std::max(scale, 0.5 * sys.mems.m * p.v * p.v);
        }
        double drift = 0.0;
        if (scale > 0.0) {
            for (const auto& p : s) {
                drift = std::max(drift, std::fabs(p.h - h0) / scale);
            }
        }
        traj.max_drift = drift;
        traj.drift_warning = drift > opts.drift_bound;
    }
    return traj;
}

std::vector<Event> detect_events(const Trajectory& traj, const HybridSystem& sys) {
    std::vector<Event> out;
    const double x_c = sys.contact_position();
    const double band = contact_region(sys);
    bool held = !traj.samples.empty() && traj.samples.front().contact;
    bool prev_contact = held;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& p = traj.samples[i];
        if (p.contact && !prev_contact && !held) {
            out.push_back({p.t, EventKind::pull_in, p.x});
            held = true;
        }
        if (held && !p.contact && p.x < x_c - band) {
            out.push_back({p.t, EventKind::pull_out, p.x});
            held = false;
        }
        prev_contact = p.contact;
    }
    return out;
}

namespace {

struct State {
    double x = 0.0;
    double q = 0.0;
    bool contact = false;
};

// Overdamped settling: follow the force from x until it changes sign or the
// contact position is reached.
State settle_free(const HybridSystem& sys, double v, State s, const SolverOptions& opts) {
    const double x_c = sys.contact_position();
    const double x_min = -opts.swing_extent * sys.mems.gap;
    const double h = sys.mems.travel() / static_cast<double>(opts.grid_points);
    s.q = track_charge(s.x, v, sys, s.q).q;
    const double f0 = force_at_charge(s.x, s.q, sys);
    if (f0 == 0.0) {
        return s;
    }
    const double dir = f0 > 0.0 ? 1.0 : -1.0;
    for (;;) {
        double xn = s.x + dir * h;
        bool at_end = false;
        if (xn >= x_c) {
            xn = x_c;
            at_end = true;
        } else if (xn <= x_min) {
            xn = x_min;
            at_end = true;
        }
        const double qn = track_charge(xn, v, sys, s.q).q;
        const double fn = force_at_charge(xn, qn, sys);
        if ((fn > 0.0) != (dir > 0.0) || fn == 0.0) {
            double a = s.x;
            double b = xn;
            const double q_hint = s.q;
            for (int it = 0; it < 200 && std::fabs(b - a) > opts.x_tol; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = force_at_charge(mid, track_charge(mid, v, sys, q_hint).q, sys);
                if ((fm > 0.0) == (dir > 0.0) && fm != 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            s.x = 0.5 * (a + b);
            s.q = track_charge(s.x, v, sys, q_hint).q;
            return s;
        }
        s.x = xn;
        s.q = qn;
        if (at_end) {
            s.contact = dir > 0.0;
            return s;
        }
    }
}

}  // namespace

std::vector<QuasiStaticPoint> quasi_static_sweep(const HybridSystem& sys, std::span<const double> v,
                                                 SweepDirection direction, const SolverOptions& opts) {
    sys.validate();
    for (std::size_t i = 1; i < v.size(); ++i) {
        const bool ok = direction == SweepDirection::up ? v[i] >= v[i - 1] : v[i] <= v[i - 1];
        if (!ok) {
            throw ValidationError("quasi-static sweep voltages must be monotone in the sweep direction");
        }
    }
    std::vector<QuasiStaticPoint> out;
    if (v.empty()) {
        return out;
    }
    const double x_c = sys.contact_position();
    const int polarity = +1;
    State s;
    if (direction == SweepDirection::down) {
        s.contact = true;
        s.x = x_c;
        s.q = contact_charge(x_c, v.front(), sys, polarity);
    } else {
        s.q = solve_charge(0.0, v.front(), sys).q;
    }
    for (double vi : v) {
        if (s.contact) {
            s.q = track_charge(x_c, vi, sys, s.q).q;
            const auto rel = check_release(sys, vi, opts, polarity);
            if (rel.released && rel.x_stable) {
                // Carry the contact-branch charge out to the released position.
                const int n = 64;
                for (int i = 1; i <= n; ++i) {
                    const double xi = x_c + (*rel.x_stable - x_c) * static_cast<double>(i) / n;
                    s.q = track_charge(xi, vi, sys, s.q).q;
                }
                s.x = *rel.x_stable;
                s.contact = false;
                s = settle_free(sys, vi, s, opts);
            }
        } else {
            s = settle_free(sys, vi, s, opts);
        }
        out.push_back({vi, s.x, s.q, s.contact});
    }
    return out;
}

}  // namespace ncmems
