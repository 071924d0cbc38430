#include "qxfer/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace qxfer {

namespace {
double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

// Inverse of the smoothstep on [0, 1] by bisection; s is clamped to [0, 1].
double smoothstep_inverse(double s) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (smoothstep(mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}
}  // namespace

double window(double t, const RampSchedule& schedule) {
    schedule.validate();
    const double t1 = schedule.t_pre;
    const double t2 = t1 + schedule.t_ramp_nominal;
    const double t3 = t2 + schedule.t_hold;
    const double t4 = t3 + schedule.t_ramp_nominal;
    const double t_f = t4 + schedule.t_post;
    if (t < 0.0 || t > t_f)
        throw std::domain_error("window: t outside [0, t_f]");
    const double w_off = schedule.w_off;
    const double rise = 1.0 - w_off;
    if (t < t1) return w_off;
    if (t < t2) return w_off + rise * smoothstep((t - t1) / schedule.t_ramp_nominal);
    if (t < t3) return 1.0;
    if (t < t4) return 1.0 - rise * smoothstep((t - t3) / schedule.t_ramp_nominal);
    return w_off;
}

ScheduleSample sample_schedule(double t, const SystemParams& params,
                               const RampSchedule& schedule) {
    ScheduleSample s;
    s.t = t;
    s.w = window(t, schedule);
    s.delta = (params.w_up_minus_down + params.delta1) * s.w;
    return s;
}

double measured_ramp_time(const RampSchedule& schedule) {
    schedule.validate();
    // Delta is proportional to W, so the 1%/99% thresholds translate
    // directly into window values.
    const double w_lo = 1.01 * schedule.w_off;
    const double w_hi = 0.99;
    if (w_lo >= w_hi)
        throw std::domain_error("measured_ramp_time: ramp window degenerate");
    if (schedule.t_ramp_nominal == 0.0) return 0.0;
    const double rise = 1.0 - schedule.w_off;
    const double u_lo = smoothstep_inverse((w_lo - schedule.w_off) / rise);
    const double u_hi = smoothstep_inverse((w_hi - schedule.w_off) / rise);
    return (u_hi - u_lo) * schedule.t_ramp_nominal;
}

Matrix6c build_h(double t, const SystemParams& params,
                 const RampSchedule& schedule) {
    params.validate();
    const double delta = sample_schedule(t, params, schedule).delta;
    const double we = params.w_e_minus_down;
    const double wu = params.w_up_minus_down;

    Matrix6c h = Matrix6c::Zero();
    h(0, 0) = we + delta / 2.0;
    h(1, 1) = we - delta / 2.0;
    h(2, 2) = wu + delta / 2.0;
    h(3, 3) = wu - delta / 2.0;
    h(4, 4) = +delta / 2.0;
    h(5, 5) = -delta / 2.0;

    const double omega = params.laser_frequency();
    if (params.laser_counter_rotating) {
        const Complex drive = -2.0 * params.omega_ex * std::cos(omega * t);
        h(0, 2) = drive; h(2, 0) = drive;
        h(1, 3) = drive; h(3, 1) = drive;
    } else {
        // Co-rotating exponential alone: e^{-i w t} on the raising
        // (virtual -> Rydberg) side.
        const Complex drive = -params.omega_ex * std::exp(Complex(0.0, -omega * t));
        h(0, 2) = drive; h(2, 0) = std::conj(drive);
        h(1, 3) = drive; h(3, 1) = std::conj(drive);
    }

    h(3, 4) = -params.omega_bs; h(4, 3) = -params.omega_bs;
    if (params.bs_counter_rotating) {
        h(2, 5) = -params.omega_bs; h(5, 2) = -params.omega_bs;
    }
    return h;
}

Matrix6c build_h0(double t, const SystemParams& params,
                  const RampSchedule& schedule) {
    SystemParams uncoupled = params;
    uncoupled.omega_bs = 0.0;
    return build_h(t, uncoupled, schedule);
}

}  // namespace qxfer
