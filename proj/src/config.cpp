#include "qxfer/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qxfer {

namespace {

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

using Sections = std::map<std::string, std::vector<Entry>>;

const std::vector<std::string> kKnownSections = {
    "",  // top level
    "params", "schedule", "integrator", "quad", "sweep", "physical", "angles"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw config_error("config: " + where + ": " + what);
}

Sections tokenize(const std::string& text) {
    Sections out;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                bad("line " + std::to_string(lineno), "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (std::find(kKnownSections.begin(), kKnownSections.end(), section) ==
                kKnownSections.end())
                bad("line " + std::to_string(lineno),
                    "unknown section [" + section + "]");
            out[section];  // a section may legitimately be empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            bad("line " + std::to_string(lineno), "expected key = value");
        Entry e;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty() || e.value.empty())
            bad("line " + std::to_string(lineno), "expected key = value");
        out[section].push_back(e);
    }
    return out;
}

std::string path_of(const std::string& section, const std::string& key) {
    return section.empty() ? key : "[" + section + "] " + key;
}

double parse_double(const std::string& section, const Entry& e) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0' || !std::isfinite(v))
        bad(path_of(section, e.key), "'" + e.value + "' is not a finite number");
    return v;
}

int parse_int(const std::string& section, const Entry& e) {
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
        bad(path_of(section, e.key), "'" + e.value + "' is not an integer");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& section, const Entry& e) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    bad(path_of(section, e.key), "'" + e.value + "' is not a boolean (true/false)");
}

void check_positive(const std::string& section, const Entry& e, double v) {
    if (!(v > 0.0)) bad(path_of(section, e.key), "must be > 0");
}

void apply_profile(SystemParams& p, const std::string& section, const Entry& e) {
    if (e.value == "table1") {
        p = SystemParams{};
    } else if (e.value == "rb87-ghz") {
        // Table 1's 87Rb frequency column, renormalized by E_hfs = 6.8 GHz.
        // The couplings are quoted as 1.0 GHz there, slightly below the
        // 0.15 E_hfs of the dimensionless column.
        p = SystemParams{};
        const double e_hfs = 6.8;
        p.w_e_minus_down = 68.0 / e_hfs;
        p.w_up_minus_down = 6.8 / e_hfs;
        p.omega_bs = 1.0 / e_hfs;
        p.omega_ex = 1.0 / e_hfs;
        p.delta1 = 10.2 / e_hfs;
        p.delta2 = 0.0;
    } else {
        bad(path_of(section, e.key),
            "unknown profile '" + e.value + "' (expected table1 or rb87-ghz)");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::Transfer: return "transfer";
        case Mode::AvgFidelity: return "avg-fidelity";
        case Mode::RampSweep: return "ramp-sweep";
        case Mode::EstimateParams: return "estimate-params";
    }
    return "?";
}

Mode mode_from_name(std::string_view name) {
    if (name == "transfer") return Mode::Transfer;
    if (name == "avg-fidelity") return Mode::AvgFidelity;
    if (name == "ramp-sweep") return Mode::RampSweep;
    if (name == "estimate-params") return Mode::EstimateParams;
    throw config_error(
        "config: mode: unknown mode '" + std::string(name) +
        "' (expected transfer, avg-fidelity, ramp-sweep or estimate-params)");
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = t_ramp_min;
        return g;
    }
    for (int i = 0; i < points; ++i) {
        const double u = static_cast<double>(i) / (points - 1);
        g[i] = log_spacing
                   ? t_ramp_min * std::pow(t_ramp_max / t_ramp_min, u)
                   : t_ramp_min + u * (t_ramp_max - t_ramp_min);
    }
    return g;
}

void SweepSpec::validate() const {
    if (!(t_ramp_min > 0.0))
        throw std::domain_error("SweepSpec: t_ramp_min must be > 0");
    if (!(t_ramp_max >= t_ramp_min))
        throw std::domain_error("SweepSpec: t_ramp_max must be >= t_ramp_min");
    if (points < 1) throw std::domain_error("SweepSpec: points must be >= 1");
    if (log_spacing && points > 1 && t_ramp_max == t_ramp_min)
        throw std::domain_error("SweepSpec: degenerate log grid");
}

RunConfig parse_config(const std::string& text, std::optional<Mode> cli_mode) {
    const Sections sections = tokenize(text);
    RunConfig cfg;

    // top level: mode only
    std::optional<Mode> doc_mode;
    if (auto it = sections.find(""); it != sections.end()) {
        for (const Entry& e : it->second) {
            if (e.key == "mode")
                doc_mode = mode_from_name(e.value);
            else
                bad(e.key, "unknown top-level key");
        }
    }
    if (doc_mode && cli_mode && *doc_mode != *cli_mode)
        bad("mode", "document says '" + std::string(mode_name(*doc_mode)) +
                        "' but the command line says '" +
                        std::string(mode_name(*cli_mode)) + "'");
    cfg.mode = cli_mode ? *cli_mode : doc_mode.value_or(Mode::Transfer);

    // [params]: profile first, then explicit overrides
    if (auto it = sections.find("params"); it != sections.end()) {
        for (const Entry& e : it->second)
            if (e.key == "profile") apply_profile(cfg.params, "params", e);
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            if (k == "profile") continue;
            if (k == "w_e_minus_down") cfg.params.w_e_minus_down = parse_double("params", e);
            else if (k == "w_up_minus_down") cfg.params.w_up_minus_down = parse_double("params", e);
            else if (k == "omega_bs") cfg.params.omega_bs = parse_double("params", e);
            else if (k == "omega_ex") cfg.params.omega_ex = parse_double("params", e);
            else if (k == "delta1") cfg.params.delta1 = parse_double("params", e);
            else if (k == "delta2") cfg.params.delta2 = parse_double("params", e);
            else if (k == "epsilon") cfg.params.epsilon = parse_double("params", e);
            else if (k == "bs_counter_rotating") cfg.params.bs_counter_rotating = parse_bool("params", e);
            else if (k == "laser_counter_rotating") cfg.params.laser_counter_rotating = parse_bool("params", e);
            else bad(path_of("params", k), "unknown key");
        }
        try {
            cfg.params.validate();
        } catch (const std::domain_error& err) {
            bad("params", err.what());
        }
    }

    // [schedule]: defaults derive from the (possibly overridden) params
    cfg.schedule = default_schedule(cfg.params);
    if (auto it = sections.find("schedule"); it != sections.end()) {
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            if (k == "w_off") cfg.schedule.w_off = parse_double("schedule", e);
            else if (k == "t_ramp") cfg.schedule.t_ramp_nominal = parse_double("schedule", e);
            else if (k == "t_hold") cfg.schedule.t_hold = parse_double("schedule", e);
            else if (k == "t_pre") cfg.schedule.t_pre = parse_double("schedule", e);
            else if (k == "t_post") cfg.schedule.t_post = parse_double("schedule", e);
            else if (k == "optimize_hold") cfg.optimize_hold = parse_bool("schedule", e);
            else bad(path_of("schedule", k), "unknown key");
        }
        try {
            cfg.schedule.validate();
        } catch (const std::domain_error& err) {
            bad("schedule", err.what());
        }
    }

    if (auto it = sections.find("integrator"); it != sections.end()) {
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            if (k == "dt_max") cfg.integrator.dt_max = parse_double("integrator", e);
            else if (k == "steps_per_fast_period") cfg.integrator.steps_per_fast_period = parse_int("integrator", e);
            else if (k == "tolerance") cfg.integrator.tolerance = parse_double("integrator", e);
            else if (k == "n_report") cfg.integrator.n_report = parse_int("integrator", e);
            else bad(path_of("integrator", k), "unknown key");
        }
        try {
            cfg.integrator.validate();
        } catch (const std::domain_error& err) {
            bad("integrator", err.what());
        }
    }

    if (auto it = sections.find("quad"); it != sections.end()) {
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            if (k == "n_theta") cfg.quad.n_theta = parse_int("quad", e);
            else if (k == "n_phi") cfg.quad.n_phi = parse_int("quad", e);
            else if (k == "haar") cfg.haar = parse_bool("quad", e);
            else bad(path_of("quad", k), "unknown key");
        }
        try {
            cfg.quad.validate();
        } catch (const std::domain_error& err) {
            bad("quad", err.what());
        }
    }

    if (auto it = sections.find("sweep"); it != sections.end()) {
        SweepSpec sweep;
        bool has_min = false, has_max = false, has_points = false;
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            if (k == "t_ramp_min") { sweep.t_ramp_min = parse_double("sweep", e); has_min = true; }
            else if (k == "t_ramp_max") { sweep.t_ramp_max = parse_double("sweep", e); has_max = true; }
            else if (k == "points") { sweep.points = parse_int("sweep", e); has_points = true; }
            else if (k == "spacing") {
                if (e.value == "log") sweep.log_spacing = true;
                else if (e.value == "linear") sweep.log_spacing = false;
                else bad(path_of("sweep", k), "expected linear or log");
            }
            else bad(path_of("sweep", k), "unknown key");
        }
        if (!has_min) bad("[sweep] t_ramp_min", "missing required key");
        if (!has_max) bad("[sweep] t_ramp_max", "missing required key");
        if (!has_points) bad("[sweep] points", "missing required key");
        try {
            sweep.validate();
        } catch (const std::domain_error& err) {
            bad("sweep", err.what());
        }
        cfg.sweep = sweep;
    }
    if (cfg.mode == Mode::RampSweep && !cfg.sweep)
        bad("[sweep]", "missing required section for mode ramp-sweep "
                       "(t_ramp_min, t_ramp_max, points)");

    if (auto it = sections.find("angles"); it != sections.end()) {
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            if (k == "theta_over_pi") cfg.angles.theta = parse_double("angles", e) * constants::pi;
            else if (k == "phi_over_pi") cfg.angles.phi = parse_double("angles", e) * constants::pi;
            else bad(path_of("angles", k), "unknown key");
        }
        try {
            cfg.angles.validate();
        } catch (const std::domain_error& err) {
            bad("angles", err.what());
        }
    }

    if (auto it = sections.find("physical"); it != sections.end()) {
        for (const Entry& e : it->second) {
            const std::string& k = e.key;
            double v = parse_double("physical", e);
            check_positive("physical", e, v);
            if (k == "n_up") cfg.physical.n_up = v;
            else if (k == "n_down") cfg.physical.n_down = v;
            else if (k == "omega_single_bs_hz") cfg.physical.omega_single_bs = v;
            else if (k == "omega_single_ex_hz") cfg.physical.omega_single_ex = v;
            else if (k == "loop_current_a") cfg.physical.loop_current = v;
            else if (k == "loop_radius_m") cfg.physical.loop_radius = v;
            else if (k == "separation_m") cfg.physical.separation = v;
            else if (k == "e_hfs_hz") cfg.physical.e_hfs_hz = v;
            else bad(path_of("physical", k), "unknown key");
        }
        try {
            cfg.physical.validate();
        } catch (const std::domain_error& err) {
            bad("physical", err.what());
        }
    }

    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path,
                            std::optional<Mode> cli_mode) {
    std::ifstream in(path);
    if (!in) throw io_error("io: cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), cli_mode);
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "mode = " << mode_name(cfg.mode) << "\n\n";
    out << "[params]\n";
    out << "w_e_minus_down = " << fmt(cfg.params.w_e_minus_down) << "\n";
    out << "w_up_minus_down = " << fmt(cfg.params.w_up_minus_down) << "\n";
    out << "omega_bs = " << fmt(cfg.params.omega_bs) << "\n";
    out << "omega_ex = " << fmt(cfg.params.omega_ex) << "\n";
    out << "delta1 = " << fmt(cfg.params.delta1) << "\n";
    out << "delta2 = " << fmt(cfg.params.delta2) << "\n";
    out << "epsilon = " << fmt(cfg.params.epsilon) << "\n";
    out << "bs_counter_rotating = " << (cfg.params.bs_counter_rotating ? "true" : "false") << "\n";
    out << "laser_counter_rotating = " << (cfg.params.laser_counter_rotating ? "true" : "false") << "\n";
    out << "\n[schedule]\n";
    out << "w_off = " << fmt(cfg.schedule.w_off) << "\n";
    out << "t_ramp = " << fmt(cfg.schedule.t_ramp_nominal) << "\n";
    out << "t_hold = " << fmt(cfg.schedule.t_hold) << "\n";
    out << "t_pre = " << fmt(cfg.schedule.t_pre) << "\n";
    out << "t_post = " << fmt(cfg.schedule.t_post) << "\n";
    out << "optimize_hold = " << (cfg.optimize_hold ? "true" : "false") << "\n";
    out << "\n[integrator]\n";
    out << "dt_max = " << fmt(cfg.integrator.dt_max) << "\n";
    out << "steps_per_fast_period = " << cfg.integrator.steps_per_fast_period << "\n";
    out << "tolerance = " << fmt(cfg.integrator.tolerance) << "\n";
    out << "n_report = " << cfg.integrator.n_report << "\n";
    out << "\n[quad]\n";
    out << "n_theta = " << cfg.quad.n_theta << "\n";
    out << "n_phi = " << cfg.quad.n_phi << "\n";
    out << "haar = " << (cfg.haar ? "true" : "false") << "\n";
    if (cfg.sweep) {
        out << "\n[sweep]\n";
        out << "t_ramp_min = " << fmt(cfg.sweep->t_ramp_min) << "\n";
        out << "t_ramp_max = " << fmt(cfg.sweep->t_ramp_max) << "\n";
        out << "points = " << cfg.sweep->points << "\n";
        out << "spacing = " << (cfg.sweep->log_spacing ? "log" : "linear") << "\n";
    }
    out << "\n[angles]\n";
    out << "theta_over_pi = " << fmt(cfg.angles.theta / constants::pi) << "\n";
    out << "phi_over_pi = " << fmt(cfg.angles.phi / constants::pi) << "\n";
    out << "\n[physical]\n";
    out << "n_up = " << fmt(cfg.physical.n_up) << "\n";
    out << "n_down = " << fmt(cfg.physical.n_down) << "\n";
    out << "omega_single_bs_hz = " << fmt(cfg.physical.omega_single_bs) << "\n";
    out << "omega_single_ex_hz = " << fmt(cfg.physical.omega_single_ex) << "\n";
    out << "loop_current_a = " << fmt(cfg.physical.loop_current) << "\n";
    out << "loop_radius_m = " << fmt(cfg.physical.loop_radius) << "\n";
    out << "separation_m = " << fmt(cfg.physical.separation) << "\n";
    out << "e_hfs_hz = " << fmt(cfg.physical.e_hfs_hz) << "\n";
    return out.str();
}

std::string config_reference() {
    return
        "mode                             transfer | avg-fidelity | ramp-sweep | estimate-params\n"
        "[params]   profile               table1 | rb87-ghz (applied before other keys)\n"
        "[params]   w_e_minus_down        > w_up_minus_down       [E_hfs]   default 100\n"
        "[params]   w_up_minus_down       > 0                     [E_hfs]   default 1\n"
        "[params]   omega_bs              >= 0                    [E_hfs]   default 0.15\n"
        "[params]   omega_ex              >= 0                    [E_hfs]   default 0.15\n"
        "[params]   delta1                > 0                     [E_hfs]   default 1.5\n"
        "[params]   delta2                finite                  [E_hfs]   default 0\n"
        "[params]   epsilon               must be 0                         default 0\n"
        "[params]   bs_counter_rotating   bool                              default false\n"
        "[params]   laser_counter_rotating bool                             default true\n"
        "[schedule] w_off                 in (0, 0.99)                      default 0.25\n"
        "[schedule] t_ramp                >= 0                    [1/E_hfs] default 7.5\n"
        "[schedule] t_hold                >= 0                    [1/E_hfs] default pi/(2 Omega)\n"
        "[schedule] t_pre                 >= 0                    [1/E_hfs] default 10\n"
        "[schedule] t_post                >= 0                    [1/E_hfs] default 0.1 t_hold\n"
        "[schedule] optimize_hold         bool                              default false\n"
        "[integrator] dt_max              > 0                     [1/E_hfs] default 1e-3\n"
        "[integrator] steps_per_fast_period >= 8                            default 40\n"
        "[integrator] tolerance           > 0 (norm-drift budget)           default 1e-9\n"
        "[integrator] n_report            >= 2                              default 2000\n"
        "[quad]     n_theta               odd, >= 3                         default 33\n"
        "[quad]     n_phi                 >= 4                              default 64\n"
        "[quad]     haar                  bool (sin-theta measure)          default false\n"
        "[sweep]    t_ramp_min            > 0 (required for ramp-sweep)\n"
        "[sweep]    t_ramp_max            >= t_ramp_min (required)\n"
        "[sweep]    points                >= 1 (required)\n"
        "[sweep]    spacing               linear | log                      default linear\n"
        "[angles]   theta_over_pi         in [0, 1]                         default 1\n"
        "[angles]   phi_over_pi           in [0, 2)                         default 0\n"
        "[physical] n_up, n_down          >= 1                              default 5e5\n"
        "[physical] omega_single_bs_hz    > 0                               default 1e3\n"
        "[physical] omega_single_ex_hz    > 0                               default 1e6\n"
        "[physical] loop_current_a        > 0                               default 1e-6\n"
        "[physical] loop_radius_m         > 0                               default 1e-6\n"
        "[physical] separation_m          > 0                               default 25e-6\n"
        "[physical] e_hfs_hz              > 0                               default 6.8e9\n";
}

}  // namespace qxfer
