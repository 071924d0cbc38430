#include "qxfer/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qxfer {

namespace {

// Precomputed pieces of H(t) = diag(base + delta(t) z) + laser(t) + BS, with
// the window breakpoints flattened out of the hot loop.
struct Rhs {
    // window segments
    double t1, t2, t3, t4, t_f, w_off, rise, t_ramp;
    // parameters
    double we, wu, delta_scale, omega_ex, omega_bs, omega_l;
    bool laser_counter, bs_counter;

    Rhs(HSource source, const SystemParams& p, const RampSchedule& s) {
        t1 = s.t_pre;
        t2 = t1 + s.t_ramp_nominal;
        t3 = t2 + s.t_hold;
        t4 = t3 + s.t_ramp_nominal;
        t_f = t4 + s.t_post;
        w_off = s.w_off;
        rise = 1.0 - s.w_off;
        t_ramp = s.t_ramp_nominal;
        we = p.w_e_minus_down;
        wu = p.w_up_minus_down;
        delta_scale = p.w_up_minus_down + p.delta1;
        omega_ex = p.omega_ex;
        omega_bs = source == HSource::Coupled ? p.omega_bs : 0.0;
        omega_l = p.laser_frequency();
        laser_counter = p.laser_counter_rotating;
        bs_counter = p.bs_counter_rotating;
    }

    double window_at(double t) const {
        if (t < t1) return w_off;
        if (t < t2) {
            const double u = (t - t1) / t_ramp;
            return w_off + rise * u * u * (3.0 - 2.0 * u);
        }
        if (t < t3) return 1.0;
        if (t < t4) {
            const double u = (t - t3) / t_ramp;
            return 1.0 - rise * u * u * (3.0 - 2.0 * u);
        }
        return w_off;
    }

    // out = -i H(t) v, columnwise for matrices.
    template <typename Mat>
    void operator()(double t, const Mat& v, Mat& out) const {
        const double half_delta = 0.5 * delta_scale * window_at(t);
        Complex drive, drive_conj;
        if (laser_counter) {
            drive = -2.0 * omega_ex * std::cos(omega_l * t);
            drive_conj = drive;
        } else {
            drive = -omega_ex * std::exp(Complex(0.0, -omega_l * t));
            drive_conj = std::conj(drive);
        }
        out.row(0) = (we + half_delta) * v.row(0) + drive * v.row(2);
        out.row(1) = (we - half_delta) * v.row(1) + drive * v.row(3);
        out.row(2) = (wu + half_delta) * v.row(2) + drive_conj * v.row(0);
        out.row(3) = (wu - half_delta) * v.row(3) + drive_conj * v.row(1) -
                     omega_bs * v.row(4);
        out.row(4) = half_delta * v.row(4) - omega_bs * v.row(3);
        out.row(5) = -half_delta * v.row(5);
        if (bs_counter) {
            out.row(2) -= omega_bs * v.row(5);
            out.row(5) -= omega_bs * v.row(2);
        }
        out *= Complex(0.0, -1.0);
    }
};

double fastest_scale(const SystemParams& p) {
    const double delta_max = p.w_up_minus_down + p.delta1;
    double lam = std::max(p.w_e_minus_down, p.w_up_minus_down) + 0.5 * delta_max;
    // small headroom for the coupling blocks
    return lam + 2.0 * (p.omega_ex + p.omega_bs);
}

template <typename Mat>
struct Run {
    std::vector<double> times;
    std::vector<Mat> samples;
};

template <typename Mat>
Run<Mat> integrate(const Mat& y0, HSource source, const SystemParams& params,
                   const RampSchedule& schedule, const IntegratorConfig& config) {
    params.validate();
    schedule.validate();
    config.validate();

    const Rhs rhs(source, params, schedule);
    const double t_f = rhs.t_f;
    const int n_segments = config.n_report - 1;

    Run<Mat> run;
    run.times.reserve(config.n_report);
    run.samples.reserve(config.n_report);
    run.times.push_back(0.0);
    run.samples.push_back(y0);
    if (t_f == 0.0) {
        for (int k = 1; k < config.n_report; ++k) {
            run.times.push_back(0.0);
            run.samples.push_back(y0);
        }
        return run;
    }

    const double dt_cap = integration_step(params, schedule, config);
    const double seg_len = t_f / n_segments;
    const long steps_per_seg =
        std::max<long>(1, static_cast<long>(std::ceil(seg_len / dt_cap)));
    const double dt = seg_len / static_cast<double>(steps_per_seg);

    Mat y = y0, k1 = y0, k2 = y0, k3 = y0, k4 = y0, tmp = y0;
    for (int seg = 0; seg < n_segments; ++seg) {
        const double t_seg = seg * seg_len;
        for (long i = 0; i < steps_per_seg; ++i) {
            const double t = t_seg + i * dt;
            rhs(t, y, k1);
            tmp = y + (0.5 * dt) * k1;
            rhs(t + 0.5 * dt, tmp, k2);
            tmp = y + (0.5 * dt) * k2;
            rhs(t + 0.5 * dt, tmp, k3);
            tmp = y + dt * k3;
            rhs(t + dt, tmp, k4);
            y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        run.times.push_back((seg + 1) * seg_len);
        run.samples.push_back(y);
    }
    run.times.back() = t_f;
    return run;
}

}  // namespace

StateVector::StateVector(const Vector6c& a, double norm_tol) : amps(a) {
    const double n = amps.norm();
    if (std::abs(n - 1.0) > norm_tol)
        throw std::invalid_argument("StateVector: norm " + std::to_string(n) +
                                    " is not 1 within tolerance");
}

StateVector StateVector::normalized(const Vector6c& a) {
    const double n = a.norm();
    if (n == 0.0) throw std::invalid_argument("StateVector: zero vector");
    return StateVector(a / n);
}

void IntegratorConfig::validate() const {
    if (!(dt_max > 0.0))
        throw std::domain_error("IntegratorConfig: dt_max must be > 0");
    if (steps_per_fast_period < 8)
        throw std::domain_error(
            "IntegratorConfig: steps_per_fast_period must be >= 8");
    if (!(tolerance > 0.0))
        throw std::domain_error("IntegratorConfig: tolerance must be > 0");
    if (n_report < 2)
        throw std::domain_error("IntegratorConfig: n_report must be >= 2");
}

double integration_step(const SystemParams& params, const RampSchedule&,
                        const IntegratorConfig& config) {
    const double t_fast = 2.0 * constants::pi / fastest_scale(params);
    return std::min(config.dt_max, t_fast / config.steps_per_fast_period);
}

StateTrajectory evolve_state(const StateVector& psi0, HSource source,
                             const SystemParams& params,
                             const RampSchedule& schedule,
                             const IntegratorConfig& config) {
    auto run = integrate<Vector6c>(psi0.amps, source, params, schedule, config);
    StateTrajectory out;
    out.times = std::move(run.times);
    out.states = std::move(run.samples);
    for (const auto& s : out.states)
        out.norm_drift = std::max(out.norm_drift, std::abs(s.norm() - 1.0));
    if (out.norm_drift > config.tolerance) {
        std::ostringstream msg;
        msg << "evolve_state: norm drift " << out.norm_drift
            << " exceeds tolerance " << config.tolerance
            << "; reduce the step (dt_max) or tighten tolerance";
        throw integration_error(msg.str(), out.norm_drift);
    }
    return out;
}

PropagatorTrajectory evolve_propagator_trajectory(HSource source,
                                                  const SystemParams& params,
                                                  const RampSchedule& schedule,
                                                  const IntegratorConfig& config) {
    auto run = integrate<Matrix6c>(Matrix6c::Identity(), source, params,
                                   schedule, config);
    PropagatorTrajectory out;
    out.times = std::move(run.times);
    out.us = std::move(run.samples);
    for (const auto& u : out.us) {
        const double defect =
            (u.adjoint() * u - Matrix6c::Identity()).cwiseAbs().maxCoeff();
        out.unitarity_defect = std::max(out.unitarity_defect, defect);
    }
    // 10x headroom over the per-trajectory budget for the 6-column spread
    if (out.unitarity_defect > 10.0 * config.tolerance) {
        std::ostringstream msg;
        msg << "evolve_propagator: unitarity defect " << out.unitarity_defect
            << " exceeds 10 x tolerance " << config.tolerance
            << "; reduce the step (dt_max) or tighten tolerance";
        throw integration_error(msg.str(), out.unitarity_defect);
    }
    return out;
}

Propagator evolve_propagator(HSource source, const SystemParams& params,
                             const RampSchedule& schedule,
                             const IntegratorConfig& config) {
    IntegratorConfig ends_only = config;
    ends_only.n_report = 2;
    auto traj = evolve_propagator_trajectory(source, params, schedule, ends_only);
    Propagator p;
    p.u = traj.final_u();
    p.t_start = traj.times.front();
    p.t_end = traj.times.back();
    p.unitarity_defect = traj.unitarity_defect;
    return p;
}

}  // namespace qxfer
