#include "qxfer/model.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qxfer {

namespace {
constexpr std::array<std::string_view, kDim> kLabels = {"11", "10", "v1",
                                                        "v0", "01", "00"};

[[noreturn]] void fail(const std::string& msg) { throw std::domain_error(msg); }

void require(bool ok, const char* msg) {
    if (!ok) fail(msg);
}
}  // namespace

std::string_view basis_label(BasisState s) {
    return kLabels[static_cast<int>(s)];
}

BasisState basis_from_label(std::string_view label) {
    for (int i = 0; i < kDim; ++i) {
        if (kLabels[i] == label) return static_cast<BasisState>(i);
    }
    fail("basis_from_label: unknown label '" + std::string(label) + "'");
}

void SystemParams::validate() const {
    require(std::isfinite(delta1) && delta1 > 0.0, "SystemParams: delta1 must be > 0");
    require(omega_bs >= 0.0, "SystemParams: omega_bs must be >= 0");
    require(omega_ex >= 0.0, "SystemParams: omega_ex must be >= 0");
    require(w_up_minus_down > 0.0,
            "SystemParams: w_up_minus_down must be > 0");
    require(w_e_minus_down > w_up_minus_down,
            "SystemParams: w_e_minus_down must exceed w_up_minus_down");
    require(std::isfinite(delta2), "SystemParams: delta2 must be finite");
    // Only the degenerate current-basis point is modeled; a nonzero bias
    // would rotate the flux-qubit eigenbasis and change the coupling pattern.
    require(epsilon == 0.0, "SystemParams: epsilon must be 0 (degenerate bias)");
}

void RampSchedule::validate() const {
    require(w_off > 0.0 && w_off < 0.99,
            "RampSchedule: w_off must lie in (0, 0.99)");
    require(t_ramp_nominal >= 0.0, "RampSchedule: t_ramp_nominal must be >= 0");
    require(t_hold >= 0.0, "RampSchedule: t_hold must be >= 0");
    require(t_pre >= 0.0, "RampSchedule: t_pre must be >= 0");
    require(t_post >= 0.0, "RampSchedule: t_post must be >= 0");
}

void PhysicalInputs::validate() const {
    require(n_up >= 1.0, "PhysicalInputs: n_up must be >= 1");
    require(n_down >= 1.0, "PhysicalInputs: n_down must be >= 1");
    require(omega_single_bs > 0.0, "PhysicalInputs: omega_single_bs must be > 0");
    require(omega_single_ex > 0.0, "PhysicalInputs: omega_single_ex must be > 0");
    require(loop_current > 0.0, "PhysicalInputs: loop_current must be > 0");
    require(loop_radius > 0.0, "PhysicalInputs: loop_radius must be > 0");
    require(separation > 0.0, "PhysicalInputs: separation must be > 0");
    require(e_hfs_hz > 0.0, "PhysicalInputs: e_hfs_hz must be > 0");
}

double bosonic_rabi(double n_up, double n_down, double omega_single) {
    if (!(n_up >= 1.0)) fail("bosonic_rabi: n_up must be >= 1");
    if (!(n_down >= 1.0)) fail("bosonic_rabi: n_down must be >= 1");
    if (!(omega_single > 0.0)) fail("bosonic_rabi: omega_single must be > 0");
    return std::sqrt(n_up * n_down) * omega_single;
}

double two_photon_rabi(double omega_ex, double omega_bs, double delta1) {
    if (!(delta1 > 0.0)) fail("two_photon_rabi: delta1 must be > 0");
    return std::abs(omega_ex) * std::abs(omega_bs) / delta1;
}

double transfer_time(double omega_two_photon) {
    if (!(omega_two_photon > 0.0))
        fail("transfer_time: no coupling, infinite transfer time");
    return constants::pi / (2.0 * omega_two_photon);
}

double stark_balanced_delta2(double omega_bs, double omega_ex, double delta1) {
    if (!(delta1 > 0.0)) fail("stark_balanced_delta2: delta1 must be > 0");
    return (omega_bs * omega_bs - omega_ex * omega_ex) / delta1;
}

double loop_field_on_axis(double current, double radius, double distance) {
    if (!(current > 0.0)) fail("loop_field_on_axis: current must be > 0");
    if (!(radius > 0.0)) fail("loop_field_on_axis: radius must be > 0");
    if (!(distance >= 0.0)) fail("loop_field_on_axis: distance must be >= 0");
    const double r2 = radius * radius;
    const double d2 = r2 + distance * distance;
    return constants::mu0 * current * r2 / (2.0 * d2 * std::sqrt(d2));
}

double single_atom_magnetic_rabi(double field) {
    if (!(field >= 0.0)) fail("single_atom_magnetic_rabi: field must be >= 0");
    return constants::mu_bohr * field / constants::hbar;
}

ParameterEstimate estimate_parameters(const PhysicalInputs& in, double delta1_sim,
                                      bool angular) {
    in.validate();
    if (!(delta1_sim > 0.0)) fail("estimate_parameters: delta1_sim must be > 0");

    ParameterEstimate out;
    out.omega_bs_hz = bosonic_rabi(in.n_up, in.n_down, in.omega_single_bs);
    out.omega_ex_hz = std::sqrt(in.n_up) * in.omega_single_ex;
    out.delta1_hz = 10.0 * out.omega_bs_hz;
    out.two_photon_hz =
        two_photon_rabi(out.omega_ex_hz, out.omega_bs_hz, out.delta1_hz);
    const double rate = angular ? 2.0 * constants::pi * out.two_photon_hz
                                : out.two_photon_hz;
    out.transfer_time_s = transfer_time(rate);
    out.loop_field_tesla =
        loop_field_on_axis(in.loop_current, in.loop_radius, in.separation);
    out.omega_single_bs_est = single_atom_magnetic_rabi(out.loop_field_tesla);
    out.squid_splitting_hz = (1.0 + delta1_sim) * in.e_hfs_hz;
    return out;
}

}  // namespace qxfer
