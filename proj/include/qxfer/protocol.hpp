#pragma once

// The state-transfer experiment: Bloch-sphere initial states, coupled vs
// uncoupled evolution, the fidelity trace F(t) = |<target(t)|psi(t)>|, its
// Bloch-sphere average with the flat dtheta dphi / (2 pi^2) measure, the
// ramp-time sweep, and hold-time tuning.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qxfer/propagator.hpp"

namespace qxfer {

struct BlochAngles {
    double theta = constants::pi;  ///< polar angle in [0, pi]
    double phi = 0.0;              ///< azimuth in [0, 2 pi)

    void validate() const;
};

/// cos(theta/2)|00> + e^{i phi} sin(theta/2)|01>
StateVector prepare_initial(const BlochAngles& angles);

/// cos(theta/2)|00> + e^{i phi} sin(theta/2)|10>
StateVector prepare_target(const BlochAngles& angles);

struct TransferResult {
    std::vector<double> times;
    std::vector<double> fidelity;                     ///< F(t) in [0, 1]
    std::vector<std::array<double, kDim>> populations;  ///< coupled trajectory
    std::vector<double> window_values;                ///< W(t) on the grid
    double f_final = 0.0;
    double measured_ramp_time = 0.0;
    double norm_drift = 0.0;  ///< worse of the two trajectories
};

TransferResult fidelity_trace(const BlochAngles& angles,
                              const SystemParams& params,
                              const RampSchedule& schedule,
                              const IntegratorConfig& config);

/// Composite-trapezoid rule on [0, pi] x [0, 2 pi].
struct QuadratureSpec {
    int n_theta = 33;  ///< odd, >= 3
    int n_phi = 64;    ///< >= 4

    void validate() const;
};

struct AveragedFidelityResult {
    std::vector<double> times;
    std::vector<double> f_avg;
    double f_avg_final = 0.0;
    double unitarity_defect = 0.0;
};

/// Evolves U_H(t) and U_H0(t) once, then evaluates F(theta, phi; t) in closed
/// form from the 2x2 relevant block of U_H0^dag(t) U_H(t) at each quadrature
/// node.  The default measure is the flat dtheta dphi / (2 pi^2); `haar`
/// switches to the sin(theta) dtheta dphi / (4 pi) average for comparison.
AveragedFidelityResult averaged_fidelity(const SystemParams& params,
                                         const RampSchedule& schedule,
                                         const IntegratorConfig& config,
                                         const QuadratureSpec& quad,
                                         bool haar = false, int threads = 1);

struct SweepPoint {
    double t_ramp_nominal = 0.0;
    double measured_ramp_time = 0.0;
    double f_avg_final = 0.0;
    std::string error;  ///< nonempty if this point failed

    bool ok() const { return error.empty(); }
};

/// One averaged_fidelity evaluation per ramp time in `t_ramp_values`
/// (monotone increasing), holding everything else in `base` fixed.  Failed
/// points carry their diagnostic and the sweep continues.  Output sorted by
/// measured ramp time.
std::vector<SweepPoint> ramp_sweep(const SystemParams& params,
                                   const RampSchedule& base,
                                   const std::vector<double>& t_ramp_values,
                                   const IntegratorConfig& config,
                                   const QuadratureSpec& quad,
                                   bool haar = false, int threads = 1);

struct HoldOptimum {
    double t_hold = 0.0;
    double f_final = 0.0;
};

/// Golden-section maximization of f_final at theta = pi over
/// t_hold in [lo, hi]; the default interval is [0.5, 2] x pi/(2 Omega) around
/// the analytic transfer time (or around the schedule's own t_hold when the
/// two-photon coupling vanishes).  If the objective is flat over the interval
/// the midpoint is returned.  Deterministic.
HoldOptimum optimize_hold(const SystemParams& params,
                          const RampSchedule& schedule,
                          const IntegratorConfig& config, double lo = -1.0,
                          double hi = -1.0);

/// Table-1-tuned protocol for the given parameters: w_off = 0.25,
/// t_hold = pi/(2 Omega), lead-out 0.1 of the transfer time, with the lead-in
/// and ramp durations that maximize the swept averaged fidelity.
RampSchedule default_schedule(const SystemParams& params);

}  // namespace qxfer
