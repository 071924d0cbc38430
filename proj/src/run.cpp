#include "qxfer/run.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace qxfer {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class OutputFile {
public:
    OutputFile(const std::filesystem::path& path) : path_(path), out_(path) {
        if (!out_) throw io_error("io: cannot open " + path.string() + " for writing");
    }
    ~OutputFile() {
        try {
            close();
        } catch (...) {
        }
    }
    std::ofstream& stream() { return out_; }
    /// Must be called on the success path; throws io_error on short writes.
    void close() {
        if (!out_.is_open()) return;
        out_.flush();
        const bool ok = static_cast<bool>(out_);
        out_.close();
        if (!ok) throw io_error("io: failed writing " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

void write_text(const std::filesystem::path& path, const std::string& text,
                std::vector<std::filesystem::path>& written) {
    OutputFile f(path);
    f.stream() << text;
    f.close();
    written.push_back(path);
}

void write_transfer_trace(const std::filesystem::path& path,
                          const TransferResult& r,
                          std::vector<std::filesystem::path>& written) {
    OutputFile f(path);
    f.stream() << "t,F,P0,P1,P2,P3,P4,P5,W\n";
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        f.stream() << fmt(r.times[k]) << ',' << fmt(r.fidelity[k]);
        for (int i = 0; i < kDim; ++i) f.stream() << ',' << fmt(r.populations[k][i]);
        f.stream() << ',' << fmt(r.window_values[k]) << '\n';
    }
    f.close();
    written.push_back(path);
}

void write_avg_trace(const std::filesystem::path& path,
                     const AveragedFidelityResult& r, const RampSchedule& sched,
                     std::vector<std::filesystem::path>& written) {
    OutputFile f(path);
    f.stream() << "t,F_avg,W\n";
    for (std::size_t k = 0; k < r.times.size(); ++k)
        f.stream() << fmt(r.times[k]) << ',' << fmt(r.f_avg[k]) << ','
                   << fmt(window(r.times[k], sched)) << '\n';
    f.close();
    written.push_back(path);
}

void write_sweep(const std::filesystem::path& path,
                 const std::vector<SweepPoint>& points,
                 std::vector<std::filesystem::path>& written) {
    OutputFile f(path);
    f.stream() << "measured_ramp_time,f_avg_final\n";
    for (const SweepPoint& p : points) {
        if (!p.ok()) continue;
        f.stream() << fmt(p.measured_ramp_time) << ',' << fmt(p.f_avg_final) << '\n';
    }
    f.close();
    written.push_back(path);
}

}  // namespace

RunSummary run(const RunConfig& cfg_in) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = cfg_in;

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw io_error("io: cannot create output directory " +
                           cfg.out_dir.string() + ": " + ec.message());

    RunSummary summary;
    summary.mode = cfg.mode;
    auto& s = summary.scalars;

    switch (cfg.mode) {
        case Mode::Transfer: {
            if (cfg.optimize_hold) {
                const HoldOptimum opt =
                    optimize_hold(cfg.params, cfg.schedule, cfg.integrator);
                cfg.schedule.t_hold = opt.t_hold;
            }
            const TransferResult r =
                fidelity_trace(cfg.angles, cfg.params, cfg.schedule, cfg.integrator);
            write_transfer_trace(cfg.out_dir / "trace.csv", r,
                                 summary.files_written);
            s["f_final"] = r.f_final;
            s["measured_ramp_time"] = r.measured_ramp_time;
            s["norm_drift"] = r.norm_drift;
            s["t_f"] = cfg.schedule.total_duration();
            s["t_hold"] = cfg.schedule.t_hold;
            s["theta_over_pi"] = cfg.angles.theta / constants::pi;
            s["phi_over_pi"] = cfg.angles.phi / constants::pi;
            break;
        }
        case Mode::AvgFidelity: {
            if (cfg.optimize_hold) {
                const HoldOptimum opt =
                    optimize_hold(cfg.params, cfg.schedule, cfg.integrator);
                cfg.schedule.t_hold = opt.t_hold;
            }
            const AveragedFidelityResult r = averaged_fidelity(
                cfg.params, cfg.schedule, cfg.integrator, cfg.quad, cfg.haar,
                cfg.threads);
            write_avg_trace(cfg.out_dir / "trace.csv", r, cfg.schedule,
                            summary.files_written);
            s["f_avg_final"] = r.f_avg_final;
            s["measured_ramp_time"] = measured_ramp_time(cfg.schedule);
            s["unitarity_defect"] = r.unitarity_defect;
            s["t_f"] = cfg.schedule.total_duration();
            s["t_hold"] = cfg.schedule.t_hold;
            break;
        }
        case Mode::RampSweep: {
            const std::vector<double> grid = cfg.sweep->grid();
            if (cfg.optimize_hold) {
                RampSchedule smallest = cfg.schedule;
                smallest.t_ramp_nominal = grid.front();
                const HoldOptimum opt =
                    optimize_hold(cfg.params, smallest, cfg.integrator);
                cfg.schedule.t_hold = opt.t_hold;
            }
            const std::vector<SweepPoint> points =
                ramp_sweep(cfg.params, cfg.schedule, grid, cfg.integrator,
                           cfg.quad, cfg.haar, cfg.threads);
            write_sweep(cfg.out_dir / "sweep.csv", points, summary.files_written);
            const SweepPoint* best = nullptr;
            int failed = 0;
            for (const SweepPoint& p : points) {
                if (!p.ok()) { ++failed; continue; }
                if (!best || p.f_avg_final > best->f_avg_final) best = &p;
            }
            if (best) {
                s["best_f_avg_final"] = best->f_avg_final;
                s["best_measured_ramp_time"] = best->measured_ramp_time;
                s["best_t_ramp_nominal"] = best->t_ramp_nominal;
                // the theta = pi transfer at the selected sweep point
                RampSchedule at_best = cfg.schedule;
                at_best.t_ramp_nominal = best->t_ramp_nominal;
                const BlochAngles pole{constants::pi, 0.0};
                s["f_final_at_best"] =
                    fidelity_trace(pole, cfg.params, at_best, cfg.integrator)
                        .f_final;
            }
            s["t_hold"] = cfg.schedule.t_hold;
            s["points_ok"] = static_cast<double>(points.size() - failed);
            s["points_failed"] = static_cast<double>(failed);
            break;
        }
        case Mode::EstimateParams: {
            const ParameterEstimate e =
                estimate_parameters(cfg.physical, cfg.params.delta1, cfg.angular);
            s["angular"] = cfg.angular ? 1.0 : 0.0;
            s["omega_bs_hz"] = e.omega_bs_hz;
            s["omega_ex_hz"] = e.omega_ex_hz;
            s["delta1_hz"] = e.delta1_hz;
            s["two_photon_hz"] = e.two_photon_hz;
            s["transfer_time_s"] = e.transfer_time_s;
            s["transfer_time_ns"] = e.transfer_time_s * 1e9;
            s["loop_field_tesla"] = e.loop_field_tesla;
            s["omega_single_bs_est_rad_s"] = e.omega_single_bs_est;
            s["squid_splitting_hz"] = e.squid_splitting_hz;
            s["squid_splitting_ghz"] = e.squid_splitting_hz * 1e-9;
            break;
        }
    }

    summary.resolved_config = render_config(cfg);
    write_text(cfg.out_dir / "resolved.cfg", summary.resolved_config,
               summary.files_written);

    nlohmann::ordered_json j;
    j["mode"] = std::string(mode_name(cfg.mode));
    for (const auto& [key, value] : s) j[key] = value;
    write_text(cfg.out_dir / "summary.json", j.dump(2) + "\n",
               summary.files_written);

    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return summary;
}

}  // namespace qxfer
