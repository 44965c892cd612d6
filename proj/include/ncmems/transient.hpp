#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncmems/hybrid.hpp"
#include "ncmems/options.hpp"

namespace ncmems {

enum class WaveformKind { step, ramp, piecewise_linear };

struct Waveform {
    WaveformKind kind = WaveformKind::step;
    double amplitude = 0.0;  // V
    double t_rise = 0.0;     // s; a step is ideal at t_rise = 0
    double t_stop = 0.0;     // s
    double offset = 0.0;     // level before the edge (V)
    // piecewise_linear only: (t, V) breakpoints, t increasing; held flat past the ends.
    std::vector<double> pwl_t;
    std::vector<double> pwl_v;

    void validate() const;
    [[nodiscard]] double voltage(double t) const;

    static Waveform step(double amplitude, double t_stop, double offset = 0.0);
    static Waveform ramp(double amplitude, double t_rise, double t_stop, double offset = 0.0);
    static Waveform piecewise(std::vector<double> t, std::vector<double> v);
};

enum class InputSpeed { fast, intermediate, slow };

/// fast: t_rise <= 0.1 t_sys, slow: t_rise >= 10 t_sys.
[[nodiscard]] InputSpeed classify_input(double t_rise, double t_sys);
[[nodiscard]] std::string_view input_speed_name(InputSpeed s);

struct SimulationOptions {
    std::optional<double> dt;  // default t_sys / 2000
    double x0 = 0.0;
    double xdot0 = 0.0;
    bool start_in_contact = false;  // overrides x0, xdot0 with (x_c, 0) on the contact charge branch
    int record_every = 1;
    double drift_bound = 1e-6;
};

struct TrajectorySample {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;  // velocity
    double q = 0.0;
    double v_f = 0.0;
    double v_m = 0.0;
    double h = 0.0;
    double v_in = 0.0;
    bool contact = false;
};

enum class EventKind { pull_in, pull_out, fold };
[[nodiscard]] std::string_view event_name(EventKind k);

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::pull_in;
    double x = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<Event> events;
    bool aborted = false;
    std::string abort_reason;
    bool drift_warning = false;
    double max_drift = 0.0;  // relative H drift; evaluated only for c = 0, constant input, no contact
    double dt = 0.0;
};

/// Fixed-step RK4 of m x'' = q^2/(2 eps0 A_M) - k x - c x' (+ F_LJ), with the
/// series charge re-solved at every stage by continuation from the last step.
/// The electrode stops inelastically at the contact position.
[[nodiscard]] Trajectory simulate(const HybridSystem& sys, const Waveform& w, const SimulationOptions& opts = {});

/// Pull-in / pull-out events from the recorded contact states. A pull-out
/// is reported once the electrode leaves the contact region.
[[nodiscard]] std::vector<Event> detect_events(const Trajectory& traj, const HybridSystem& sys);

enum class SweepDirection { up, down };

struct QuasiStaticPoint {
    double v_in = 0.0;
    double x = 0.0;
    double q = 0.0;
    bool contact = false;
};

/// Settled states for a monotone voltage list. Up-sweeps start free at
/// x = 0, down-sweeps start pulled in at the contact position.
[[nodiscard]] std::vector<QuasiStaticPoint> quasi_static_sweep(const HybridSystem& sys, std::span<const double> v,
                                                               SweepDirection direction,
                                                               const SolverOptions& opts = {});

/// Width of the band next to the contact position that still counts as contact.
[[nodiscard]] double contact_region(const HybridSystem& sys);

}  // namespace ncmems
