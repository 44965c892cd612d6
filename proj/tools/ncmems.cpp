// Command-line front end. Every subcommand writes CSV or JSON to --output
// (stdout by default); failures print a JSON object on stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncmems/config.hpp"
#include "ncmems/errors.hpp"
#include "ncmems/kernels.hpp"
#include "ncmems/landscape.hpp"
#include "ncmems/mems.hpp"
#include "ncmems/transient.hpp"

using namespace ncmems;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFormats = R"(Output formats (numbers printed with 17 significant digits, SI units):
  landscape  CSV  x,U,q,F
  phase      CSV  x,xdot
  transient  CSV  t,x,v,q,VF,VM,H
  sweep gc   CSV  gc,V_HPO        (V_HPO is "none" when never released)
  sweep vin  CSV  v_in,x,q,contact
  report, design, retune  JSON)";

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json opt_json(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

struct Globals {
    std::string config;
    std::string output;
    std::string profile;
    bool adhesion = false;
    std::string gc;
};

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) {
                throw IoError("cannot open output '" + path + "'");
            }
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    bool to_file() const { return file_.is_open(); }
    void finish() {
        out().flush();
        if (!out()) {
            throw IoError("write failed");
        }
    }

private:
    std::ofstream file_;
};

DeviceConfig load(const Globals& g) {
    DeviceConfig cfg = g.config.empty() ? default_config() : load_config(g.config);
    if (!g.profile.empty()) {
        cfg.solver = tolerance_profile(g.profile);
    }
    if (!g.gc.empty()) {
        AdhesionParams a = cfg.adhesion.value_or(default_adhesion());
        a.gc_override = parse_quantity(g.gc, Quantity::length);
        cfg.adhesion = a;
    }
    return cfg;
}

HybridSystem system_of(const DeviceConfig& cfg, const Globals& g) { return cfg.system(g.adhesion || cfg.adhesion_enabled); }

double length_arg(const std::string& s) { return parse_quantity(s, Quantity::length); }
double voltage_arg(const std::string& s) { return parse_quantity(s, Quantity::voltage); }
double time_arg(const std::string& s) { return parse_quantity(s, Quantity::time); }

ordered_json pull_json(const PullAnalysis& a) {
    return {{"v_hspi", a.static_pull_in.voltage},
            {"x_hspi", a.static_pull_in.displacement},
            {"v_hdpi", a.dynamic_pull_in.voltage},
            {"x_hdpi", a.dynamic_pull_in.displacement},
            {"v_hpo", opt_json(a.pull_out)}};
}

std::string fmt_v(const std::optional<double>& v) {
    if (!v) {
        return "not released";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f V", *v);
    return buf;
}

void print_table(std::ostream& os, const StandaloneMetrics& s, const TimescaleReport& ts, const PullAnalysis& h,
                 const std::optional<PullAnalysis>& adh) {
    char line[160];
    os << "quantity          standalone      hybrid";
    os << (adh ? "          hybrid+adhesion\n" : "\n");
    const auto row = [&](const char* name, const std::string& a, const std::string& b, const std::string& c) {
        std::snprintf(line, sizeof line, "%-17s %-15s %-16s %s\n", name, a.c_str(), b.c_str(), c.c_str());
        os << line;
    };
    const auto v = [](double x) { return fmt_v(x); };
    const auto um = [](double x) {
        char b[32];
        std::snprintf(b, sizeof b, "%.4f um", x * 1e6);
        return std::string(b);
    };
    row("static pull-in", v(s.v_spi), v(h.static_pull_in.voltage), adh ? v(adh->static_pull_in.voltage) : "");
    row("travel range", um(s.x_spi), um(h.static_pull_in.displacement),
        adh ? um(adh->static_pull_in.displacement) : "");
    row("dynamic pull-in", v(s.v_dpi), v(h.dynamic_pull_in.voltage), adh ? v(adh->dynamic_pull_in.voltage) : "");
    row("dynamic travel", um(s.x_dpi), um(h.dynamic_pull_in.displacement),
        adh ? um(adh->dynamic_pull_in.displacement) : "");
    row("pull-out", v(s.v_po), fmt_v(h.pull_out), adh ? fmt_v(adh->pull_out) : "");
    std::snprintf(line, sizeof line, "t_sys = %.4f us, f0 = %.1f Hz\n", ts.t_sys * 1e6, ts.f0);
    os << line;
}

int run_report(const Globals& g, bool table) {
    const DeviceConfig cfg = load(g);
    const HybridSystem base = cfg.system(false);
    const auto sa = standalone_metrics(cfg.mems);
    const auto ts = system_timescales(cfg.mems);
    const auto hyb = analyze(base, cfg.solver);
    std::optional<PullAnalysis> adh;
    if (g.adhesion || cfg.adhesion_enabled) {
        adh = analyze(system_of(cfg, g), cfg.solver);
    }
    ordered_json j;
    j["timescales"] = {{"f0", ts.f0}, {"t_sys", ts.t_sys}};
    j["standalone"] = {{"v_spi", sa.v_spi}, {"x_spi", sa.x_spi}, {"v_dpi", sa.v_dpi}, {"x_dpi", sa.x_dpi},
                       {"v_po", sa.v_po}};
    if (cfg.ferro.enabled()) {
        const auto r = design_ratios(cfg.mems, cfg.ferro);
        j["ferro"] = {{"thickness", cfg.ferro.thickness()}, {"area", cfg.ferro.area()},
                      {"r_alpha", r.r_alpha},            {"r_beta", r.r_beta},
                      {"zero_bias_stable", base.zero_bias_stable()}};
    }
    j["hybrid"] = pull_json(hyb);
    if (adh) {
        j["hybrid_adhesion"] = pull_json(*adh);
        j["hybrid_adhesion"]["gc"] = system_of(cfg, g).adhesion->contact_gap();
    }
    Sink sink(g.output);
    if (table && !sink.to_file()) {
        print_table(sink.out(), sa, ts, hyb, adh);
    } else {
        sink.out() << j.dump(2) << "\n";
        if (table) {
            print_table(std::cout, sa, ts, hyb, adh);
        }
    }
    sink.finish();
    return 0;
}

int run_landscape(const Globals& g, const std::string& vin, const std::string& branch, int points,
                  const std::string& xmin) {
    const DeviceConfig cfg = load(g);
    const HybridSystem sys = system_of(cfg, g);
    const double v = voltage_arg(vin);
    const double x_lo = xmin.empty() ? 0.0 : length_arg(xmin);
    const ChargeBranch b = branch == "contact" ? ChargeBranch::contact : ChargeBranch::principal;
    const auto c = sample_potential(sys, v, x_lo, sys.contact_position(), points, b, cfg.solver);
    Sink sink(g.output);
    auto& os = sink.out();
    os << "x,U,q,F\n";
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        os << num(c.x[i]) << ',' << num(c.u[i]) << ',' << num(c.q[i]) << ',' << num(c.force[i]) << '\n';
    }
    sink.finish();
    return 0;
}

int run_phase(const Globals& g, const std::string& vin, const std::string& x0s, double xdot0, const std::string& branch) {
    const DeviceConfig cfg = load(g);
    const HybridSystem sys = system_of(cfg, g);
    const ChargeBranch b = branch == "contact" ? ChargeBranch::contact : ChargeBranch::principal;
    const double x0 = x0s.empty() ? (b == ChargeBranch::contact ? sys.contact_position() : 0.0) : length_arg(x0s);
    const auto t = phase_trajectory(sys, voltage_arg(vin), x0, xdot0, b, cfg.solver);
    Sink sink(g.output);
    auto& os = sink.out();
    os << "x,xdot\n";
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        os << num(t.x[i]) << ',' << num(t.xdot[i]) << '\n';
    }
    sink.finish();
    std::cerr << (t.motion == Motion::closed ? "closed" : "open") << " trajectory, energy " << num(t.energy) << " J\n";
    return 0;
}

int run_design(const Globals& g, const std::string& vspi, const std::string& vpo) {
    const DeviceConfig cfg = load(g);
    DesignTargets t;
    t.v_hspi = voltage_arg(vspi);
    t.v_hpo = voltage_arg(vpo);
    FerroMaterial mat = cfg.material;
    if (mat.alpha_f == 0.0) {
        mat = default_config().material;
    }
    const auto d = design_ferroelectric(cfg.mems, t, mat);
    HybridSystem sys;
    sys.mems = cfg.mems;
    sys.ferro = d.device;
    const double check = static_pull_in(sys, cfg.solver).voltage;
    ordered_json j = {{"thickness", d.device.thickness()},
                      {"area", d.device.area()},
                      {"r_alpha", d.ratios.r_alpha},
                      {"r_beta", d.ratios.r_beta},
                      {"v_hspi_check", check}};
    Sink sink(g.output);
    sink.out() << j.dump(2) << "\n";
    sink.finish();
    return 0;
}

struct TransientArgs {
    std::string input = "step";
    std::string amplitude = "0";
    std::string offset = "0";
    std::string trise = "0";
    std::string tstop;
    std::string dt;
    std::string x0 = "0";
    bool contact_start = false;
    int record_every = 1;
    std::string events;
};

int run_transient(const Globals& g, const TransientArgs& a) {
    const DeviceConfig cfg = load(g);
    const HybridSystem sys = system_of(cfg, g);
    const double t_sys = system_timescales(cfg.mems).t_sys;
    const double t_stop = a.tstop.empty() ? 10.0 * t_sys : time_arg(a.tstop);
    const double amp = voltage_arg(a.amplitude);
    const double off = voltage_arg(a.offset);
    Waveform w;
    if (a.input == "step") {
        w = Waveform::step(amp, t_stop, off);
    } else if (a.input == "ramp") {
        w = Waveform::ramp(amp, time_arg(a.trise), t_stop, off);
    } else {
        throw ValidationError("--input must be step or ramp");
    }
    SimulationOptions o;
    if (!a.dt.empty()) {
        o.dt = time_arg(a.dt);
    }
    o.x0 = length_arg(a.x0);
    o.start_in_contact = a.contact_start;
    o.record_every = a.record_every;
    const auto tr = simulate(sys, w, o);
    Sink sink(g.output);
    auto& os = sink.out();
    os << "t,x,v,q,VF,VM,H\n";
    for (const auto& s : tr.samples) {
        os << num(s.t) << ',' << num(s.x) << ',' << num(s.v) << ',' << num(s.q) << ',' << num(s.v_f) << ','
           << num(s.v_m) << ',' << num(s.h) << '\n';
    }
    sink.finish();
    ordered_json ev = ordered_json::array();
    for (const auto& e : tr.events) {
        ev.push_back({{"t", e.t}, {"kind", std::string(event_name(e.kind))}, {"x", e.x}});
    }
    ordered_json info = {{"events", ev},
                         {"input_speed", std::string(input_speed_name(classify_input(w.t_rise, t_sys)))},
                         {"dt", tr.dt},
                         {"aborted", tr.aborted},
                         {"drift_warning", tr.drift_warning},
                         {"max_drift", tr.max_drift}};
    if (tr.aborted) {
        info["abort_reason"] = tr.abort_reason;
    }
    if (!a.events.empty()) {
        std::ofstream f(a.events);
        if (!f) {
            throw IoError("cannot open events file '" + a.events + "'");
        }
        f << info.dump(2) << "\n";
    }
    if (tr.drift_warning) {
        std::cerr << "warning: energy drift " << num(tr.max_drift) << " exceeds bound; reduce --dt\n";
    }
    return tr.aborted ? 4 : 0;
}

std::vector<double> spaced(double from, double to, int points, bool log) {
    if (points < 1) {
        throw ValidationError("--points must be at least 1");
    }
    std::vector<double> v;
    for (int i = 0; i < points; ++i) {
        const double s = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        v.push_back(log ? from * std::pow(to / from, s) : from + (to - from) * s);
    }
    return v;
}

int run_sweep(const Globals& g, const std::string& quantity, const std::string& from, const std::string& to,
              int points, bool log, const std::string& direction) {
    DeviceConfig cfg = load(g);
    Sink sink(g.output);
    auto& os = sink.out();
    if (quantity == "gc") {
        const double a = from.empty() ? 1e-9 : length_arg(from);
        const double b = to.empty() ? 100e-9 : length_arg(to);
        if (log && !(a > 0.0 && b > 0.0)) {
            throw ValidationError("log sweep needs positive bounds");
        }
        const auto gcs = spaced(a, b, points, log);
        const auto res = sweep_contact_gap(cfg.system(false), gcs, cfg.solver);
        os << "gc,V_HPO\n";
        for (const auto& p : res) {
            os << num(p.gc) << ',' << (p.v_hpo ? num(*p.v_hpo) : "none") << '\n';
        }
    } else if (quantity == "vin") {
        const HybridSystem sys = system_of(cfg, g);
        const bool up = direction != "down";
        const double hi = 1.25 * static_pull_in(sys, cfg.solver).voltage;
        double a = from.empty() ? (up ? 0.0 : hi) : voltage_arg(from);
        double b = to.empty() ? (up ? hi : -1.0) : voltage_arg(to);
        const auto vs = spaced(a, b, points, false);
        const auto res = quasi_static_sweep(sys, vs, up ? SweepDirection::up : SweepDirection::down, cfg.solver);
        os << "v_in,x,q,contact\n";
        for (const auto& p : res) {
            os << num(p.v_in) << ',' << num(p.x) << ',' << num(p.q) << ',' << (p.contact ? 1 : 0) << '\n';
        }
    } else {
        throw ValidationError("--quantity must be gc or vin");
    }
    sink.finish();
    return 0;
}

int run_retune(const Globals& g, const std::string& gc, const std::string& vin) {
    const DeviceConfig cfg = load(g);
    const HybridSystem sys = cfg.system(false);
    const double gcv = length_arg(gc);
    const double t = retune_thickness(sys, gcv, voltage_arg(vin), cfg.solver);
    const HybridSystem tuned = sys.with_thickness(t);
    const double v_hspi = static_pull_in(tuned.with_contact_gap(gcv), cfg.solver).voltage;
    ordered_json j = {{"thickness", t},
                      {"area", sys.ferro.area()},
                      {"gc", gcv},
                      {"v_hspi", v_hspi},
                      {"v_spi_standalone", standalone_metrics(cfg.mems).v_spi}};
    Sink sink(g.output);
    sink.out() << j.dump(2) << "\n";
    sink.finish();
    return 0;
}

int fail(int code, const char* kind, const std::string& message) {
    ordered_json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
    std::cerr << j.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ferroelectric negative-capacitance MEMS actuator analysis"};
    app.footer(kFormats);
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("-c,--config", g.config, "Device config (JSON); the built-in default device if omitted");
    app.add_option("-o,--output", g.output, "Output file (stdout if omitted)");
    app.add_option("--profile", g.profile, "Tolerance profile: default, fine, fast");
    app.add_flag("--adhesion", g.adhesion, "Include contact adhesion");
    app.add_option("--contact-gap", g.gc, "Override the effective contact gap, e.g. \"10 nm\"");
    std::string simd;
    app.add_option("--simd", simd, "Kernel variant: scalar or avx2");

    bool table = false;
    auto* report = app.add_subcommand("report", "Standalone and hybrid pull-in / pull-out figures (JSON)");
    report->add_flag("--table", table, "Print a console table");

    std::string vin = "0";
    std::string branch = "principal";
    int points = 4096;
    std::string xmin;
    auto* landscape = app.add_subcommand("landscape", "Potential energy versus displacement (CSV x,U,q,F)");
    landscape->add_option("--vin", vin, "Input voltage");
    landscape->add_option("--branch", branch, "Charge branch: principal or contact");
    landscape->add_option("--points", points, "Base grid points");
    landscape->add_option("--xmin", xmin, "Left end of the range (default 0)");

    std::string x0;
    double xdot0 = 0.0;
    auto* phase = app.add_subcommand("phase", "Phase trajectory at constant input (CSV x,xdot)");
    phase->add_option("--vin", vin, "Input voltage");
    phase->add_option("--x0", x0, "Initial displacement (default 0, or contact on the contact branch)");
    phase->add_option("--xdot0", xdot0, "Initial velocity (m/s)");
    phase->add_option("--branch", branch, "Charge branch: principal or contact");

    std::string vspi = "0.8";
    std::string vpo = "0";
    auto* design = app.add_subcommand("design", "Ferroelectric thickness and area for target voltages (JSON)");
    design->add_option("--vspi", vspi, "Target hybrid static pull-in voltage");
    design->add_option("--vpo", vpo, "Target hybrid pull-out voltage (only 0 is supported)");

    TransientArgs ta;
    auto* transient = app.add_subcommand("transient", "Time-domain simulation (CSV t,x,v,q,VF,VM,H)");
    transient->add_option("--input", ta.input, "step or ramp");
    transient->add_option("--amplitude", ta.amplitude, "Final input voltage");
    transient->add_option("--offset", ta.offset, "Input voltage before the edge");
    transient->add_option("--trise", ta.trise, "Ramp rise time");
    transient->add_option("--tstop", ta.tstop, "End time (default 10 t_sys)");
    transient->add_option("--dt", ta.dt, "Time step (default t_sys/2000)");
    transient->add_option("--x0", ta.x0, "Initial displacement");
    transient->add_flag("--contact-start", ta.contact_start, "Start at rest in contact");
    transient->add_option("--record-every", ta.record_every, "Keep every n-th step");
    transient->add_option("--events", ta.events, "Write events and diagnostics as JSON to this file");

    std::string quantity = "gc";
    std::string from;
    std::string to;
    int sweep_points = 25;
    bool log = false;
    std::string direction = "up";
    auto* sweep = app.add_subcommand("sweep", "Contact-gap sweep (CSV gc,V_HPO) or quasi-static voltage sweep");
    sweep->add_option("--quantity", quantity, "gc or vin");
    sweep->add_option("--from", from, "First value");
    sweep->add_option("--to", to, "Last value");
    sweep->add_option("--points", sweep_points, "Number of values");
    sweep->add_flag("--log", log, "Logarithmic spacing (gc only)");
    sweep->add_option("--direction", direction, "up or down (vin only)");

    std::string gc = "10 nm";
    std::string retune_v = "0";
    auto* retune = app.add_subcommand("retune", "Thinner ferroelectric that releases with adhesion (JSON)");
    retune->add_option("--gc", gc, "Effective contact gap");
    retune->add_option("--vin", retune_v, "Voltage at which release is required");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(1, "usage", e.what());
    }

    try {
        if (simd == "scalar") {
            kernels::set_isa(kernels::Isa::scalar);
        } else if (simd == "avx2") {
            kernels::set_isa(kernels::Isa::avx2);
        } else if (!simd.empty()) {
            throw ValidationError("--simd must be scalar or avx2");
        }
        if (*report) {
            return run_report(g, table);
        }
        if (*landscape) {
            return run_landscape(g, vin, branch, points, xmin);
        }
        if (*phase) {
            return run_phase(g, vin, x0, xdot0, branch);
        }
        if (*design) {
            return run_design(g, vspi, vpo);
        }
        if (*transient) {
            return run_transient(g, ta);
        }
        if (*sweep) {
            return run_sweep(g, quantity, from, to, sweep_points, log, direction);
        }
        if (*retune) {
            return run_retune(g, gc, retune_v);
        }
    } catch (const BracketError& e) {
        return fail(2, "bracket", e.what());
    } catch (const SolverError& e) {
        return fail(2, "solver", e.what());
    } catch (const IoError& e) {
        return fail(3, "io", e.what());
    } catch (const InfeasibleDesignError& e) {
        return fail(1, "infeasible_design", e.what());
    } catch (const DomainError& e) {
        return fail(1, "domain", e.what());
    } catch (const ValidationError& e) {
        return fail(1, "validation", e.what());
    } catch (const Error& e) {
        return fail(1, "error", e.what());
    }
    return 0;
}
