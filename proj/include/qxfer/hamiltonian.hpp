#pragma once

// Assembly of the six-state time-dependent Hamiltonian
//   H(t) = A(t) (x) I_2  +  I_3 (x) (Delta(t)/2) sigma_z  -  C (x) sigma_x
// and the window function W(t) that ramps the flux-qubit splitting
// Delta(t) = (E_hfs + delta1) W(t) into and out of resonance.

#include <Eigen/Dense>
#include <complex>

#include "qxfer/model.hpp"

namespace qxfer {

using Complex = std::complex<double>;
using Matrix6c = Eigen::Matrix<Complex, kDim, kDim>;
using Vector6c = Eigen::Matrix<Complex, kDim, 1>;

/// One point of the Delta(t) timeline.
struct ScheduleSample {
    double t = 0.0;      ///< time [1/E_hfs]
    double w = 0.0;      ///< window value W(t)
    double delta = 0.0;  ///< flux-qubit splitting Delta(t) = (1 + delta1) W(t)
};

/// Window value W(t) on [0, t_f]: w_off on the flats, 1 on the plateau,
/// cubic smoothstep 3u^2 - 2u^3 on each ramp.  C^1 everywhere.
/// Throws std::domain_error for t outside [0, t_f].
double window(double t, const RampSchedule& schedule);

ScheduleSample sample_schedule(double t, const SystemParams& params,
                               const RampSchedule& schedule);

/// Elapsed time between the up-ramp crossings Delta = 1.01 Delta_off and
/// Delta = 0.99 Delta_on, found by bisection on the closed-form window.
/// This is the abscissa of the ramp-time sweep.
double measured_ramp_time(const RampSchedule& schedule);

/// Full coupled Hamiltonian at time t.  The laser block is
/// -2 Omega_ex cos(w t) on the Rydberg<->virtual pairs (or the co-rotating
/// exponential when params.laser_counter_rotating is false); the BEC-SQUID
/// block carries -Omega_BS on |v0><01| (+ h.c.), plus |v1><00| (+ h.c.) when
/// params.bs_counter_rotating is set.  Hermitian by construction.
Matrix6c build_h(double t, const SystemParams& params,
                 const RampSchedule& schedule);

/// Uncoupled Hamiltonian: identical to build_h with Omega_BS = 0, same
/// Delta(t) schedule and laser drive.
Matrix6c build_h0(double t, const SystemParams& params,
                  const RampSchedule& schedule);

}  // namespace qxfer
