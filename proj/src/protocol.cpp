#include "qxfer/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace qxfer {

namespace {

constexpr int kI01 = static_cast<int>(BasisState::S01);
constexpr int kI10 = static_cast<int>(BasisState::S10);
constexpr int kI00 = static_cast<int>(BasisState::S00);

void run_pair(const std::function<void()>& a, const std::function<void()>& b,
              int threads) {
    if (threads >= 2) {
        std::thread t(a);
        b();
        t.join();
    } else {
        a();
        b();
    }
}

// Trapezoid weights over n nodes spanning [0, span].
std::vector<double> trapezoid_weights(int n, double span) {
    std::vector<double> w(n, span / (n - 1));
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

}  // namespace

void BlochAngles::validate() const {
    if (!(theta >= 0.0 && theta <= constants::pi))
        throw std::domain_error("BlochAngles: theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * constants::pi))
        throw std::domain_error("BlochAngles: phi must lie in [0, 2 pi)");
}

void QuadratureSpec::validate() const {
    if (n_theta < 3 || n_theta % 2 == 0)
        throw std::domain_error("QuadratureSpec: n_theta must be odd and >= 3");
    if (n_phi < 4) throw std::domain_error("QuadratureSpec: n_phi must be >= 4");
}

StateVector prepare_initial(const BlochAngles& angles) {
    angles.validate();
    Vector6c a = Vector6c::Zero();
    a(kI00) = std::cos(angles.theta / 2.0);
    a(kI01) = std::polar(std::sin(angles.theta / 2.0), angles.phi);
    return StateVector::normalized(a);
}

StateVector prepare_target(const BlochAngles& angles) {
    angles.validate();
    Vector6c a = Vector6c::Zero();
    a(kI00) = std::cos(angles.theta / 2.0);
    a(kI10) = std::polar(std::sin(angles.theta / 2.0), angles.phi);
    return StateVector::normalized(a);
}

TransferResult fidelity_trace(const BlochAngles& angles,
                              const SystemParams& params,
                              const RampSchedule& schedule,
                              const IntegratorConfig& config) {
    const StateVector psi0 = prepare_initial(angles);
    const StateVector target0 = prepare_target(angles);
    const StateTrajectory coupled =
        evolve_state(psi0, HSource::Coupled, params, schedule, config);
    const StateTrajectory reference =
        evolve_state(target0, HSource::Uncoupled, params, schedule, config);

    TransferResult out;
    out.times = coupled.times;
    out.norm_drift = std::max(coupled.norm_drift, reference.norm_drift);
    out.measured_ramp_time = measured_ramp_time(schedule);
    const std::size_t n = coupled.states.size();
    out.fidelity.resize(n);
    out.populations.resize(n);
    out.window_values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.fidelity[k] = std::abs(reference.states[k].dot(coupled.states[k]));
        for (int i = 0; i < kDim; ++i)
            out.populations[k][i] = std::norm(coupled.states[k](i));
        out.window_values[k] = window(out.times[k], schedule);
    }
    out.f_final = out.fidelity.back();
    return out;
}

AveragedFidelityResult averaged_fidelity(const SystemParams& params,
                                         const RampSchedule& schedule,
                                         const IntegratorConfig& config,
                                         const QuadratureSpec& quad, bool haar,
                                         int threads) {
    quad.validate();
    PropagatorTrajectory uh, uh0;
    run_pair(
        [&] {
            uh = evolve_propagator_trajectory(HSource::Coupled, params, schedule,
                                              config);
        },
        [&] {
            uh0 = evolve_propagator_trajectory(HSource::Uncoupled, params,
                                               schedule, config);
        },
        threads);

    const auto wt = trapezoid_weights(quad.n_theta, constants::pi);
    const auto wp = trapezoid_weights(quad.n_phi, 2.0 * constants::pi);
    // Flat measure 1/(2 pi^2) as printed; Haar variant sin(theta)/(4 pi).
    const double norm = haar ? 1.0 / (4.0 * constants::pi)
                             : 1.0 / (2.0 * constants::pi * constants::pi);

    std::vector<double> cth(quad.n_theta), sth(quad.n_theta), jac(quad.n_theta);
    for (int i = 0; i < quad.n_theta; ++i) {
        const double theta = constants::pi * i / (quad.n_theta - 1);
        cth[i] = std::cos(theta / 2.0);
        sth[i] = std::sin(theta / 2.0);
        jac[i] = haar ? std::sin(theta) : 1.0;
    }
    std::vector<Complex> eip(quad.n_phi);
    for (int j = 0; j < quad.n_phi; ++j) {
        const double phi = 2.0 * constants::pi * j / (quad.n_phi - 1);
        eip[j] = std::polar(1.0, phi);
    }

    AveragedFidelityResult out;
    out.times = uh.times;
    out.unitarity_defect = std::max(uh.unitarity_defect, uh0.unitarity_defect);
    out.f_avg.resize(out.times.size());
    for (std::size_t k = 0; k < out.times.size(); ++k) {
        // 2x2 relevant block of M = U_H0^dag U_H: rows {00, 10}, cols {00, 01}
        const Matrix6c& u = uh.us[k];
        const Matrix6c& u0 = uh0.us[k];
        const Complex m00_00 = u0.col(kI00).dot(u.col(kI00));
        const Complex m00_01 = u0.col(kI00).dot(u.col(kI01));
        const Complex m10_00 = u0.col(kI10).dot(u.col(kI00));
        const Complex m10_01 = u0.col(kI10).dot(u.col(kI01));
        double acc = 0.0;
        for (int i = 0; i < quad.n_theta; ++i) {
            const double cc = cth[i] * cth[i];
            const double sc = sth[i] * cth[i];
            const double ss = sth[i] * sth[i];
            const Complex base = cc * m00_00 + ss * m10_01;
            double row = 0.0;
            for (int j = 0; j < quad.n_phi; ++j) {
                const double f =
                    std::abs(base + sc * (eip[j] * m00_01 + std::conj(eip[j]) * m10_00));
                row += wp[j] * f;
            }
            acc += wt[i] * jac[i] * row;
        }
        out.f_avg[k] = norm * acc;
    }
    out.f_avg_final = out.f_avg.back();
    return out;
}

std::vector<SweepPoint> ramp_sweep(const SystemParams& params,
                                   const RampSchedule& base,
                                   const std::vector<double>& t_ramp_values,
                                   const IntegratorConfig& config,
                                   const QuadratureSpec& quad, bool haar,
                                   int threads) {
    if (t_ramp_values.empty())
        throw std::domain_error("ramp_sweep: empty ramp-time list");
    if (!std::is_sorted(t_ramp_values.begin(), t_ramp_values.end()))
        throw std::domain_error("ramp_sweep: ramp times must be monotone increasing");

    std::vector<SweepPoint> points(t_ramp_values.size());
    const auto eval_point = [&](std::size_t i) {
        SweepPoint& p = points[i];
        p.t_ramp_nominal = t_ramp_values[i];
        RampSchedule schedule = base;
        schedule.t_ramp_nominal = t_ramp_values[i];
        try {
            p.measured_ramp_time = measured_ramp_time(schedule);
            p.f_avg_final =
                averaged_fidelity(params, schedule, config, quad, haar).f_avg_final;
        } catch (const std::exception& e) {
            p.error = e.what();
        }
    };

    const int workers = std::max(1, std::min<int>(threads, points.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < points.size(); ++i) eval_point(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < points.size(); i += workers)
                    eval_point(i);
            });
        for (auto& t : pool) t.join();
    }
    std::sort(points.begin(), points.end(),
              [](const SweepPoint& a, const SweepPoint& b) {
                  return a.measured_ramp_time < b.measured_ramp_time;
              });
    return points;
}

HoldOptimum optimize_hold(const SystemParams& params,
                          const RampSchedule& schedule,
                          const IntegratorConfig& config, double lo, double hi) {
    params.validate();
    if (lo < 0.0 || hi < 0.0) {
        double center;
        if (params.omega_bs > 0.0 && params.omega_ex > 0.0) {
            center = transfer_time(
                two_photon_rabi(params.omega_ex, params.omega_bs, params.delta1));
        } else {
            center = schedule.t_hold;
        }
        lo = 0.5 * center;
        hi = 2.0 * center;
    }
    if (!(hi > lo) || !(lo >= 0.0))
        throw std::domain_error("optimize_hold: degenerate search interval");

    const BlochAngles transfer{constants::pi, 0.0};
    const auto objective = [&](double t_hold) {
        RampSchedule s = schedule;
        s.t_hold = t_hold;
        return fidelity_trace(transfer, params, s, config).f_final;
    };

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    double seen_min = std::min(f1, f2), seen_max = std::max(f1, f2);
    const double width_tol = 1.0e-4 * (hi - lo);
    while (b - a > width_tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective(x2);
        }
        seen_min = std::min(seen_min, std::min(f1, f2));
        seen_max = std::max(seen_max, std::max(f1, f2));
    }
    HoldOptimum out;
    if (seen_max - seen_min < 1.0e-12) {
        // flat objective (no transfer channel): report the interval midpoint
        out.t_hold = 0.5 * (lo + hi);
        out.f_final = seen_max;
    } else {
        out.t_hold = 0.5 * (a + b);
        out.f_final = std::max(f1, f2);
    }
    return out;
}

RampSchedule default_schedule(const SystemParams& params) {
    params.validate();
    const double tau = transfer_time(
        two_photon_rabi(params.omega_ex, params.omega_bs, params.delta1));
    // Table-1 protocol shape rescaled by the transfer time.
    const RampSchedule table1;
    const double scale = tau / table1.t_hold;
    RampSchedule s;
    s.w_off = table1.w_off;
    s.t_hold = tau;
    s.t_post = 0.1 * tau;
    s.t_pre = table1.t_pre * scale;
    s.t_ramp_nominal = table1.t_ramp_nominal * scale;
    return s;
}

}  // namespace qxfer
