#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qxfer/protocol.hpp"

namespace py = pybind11;
using namespace qxfer;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Six-state flux-qubit / BEC-Rydberg state-transfer simulator";

    py::enum_<BasisState>(m, "BasisState")
        .value("S11", BasisState::S11)
        .value("S10", BasisState::S10)
        .value("Sv1", BasisState::Sv1)
        .value("Sv0", BasisState::Sv0)
        .value("S01", BasisState::S01)
        .value("S00", BasisState::S00);

    py::enum_<HSource>(m, "HSource")
        .value("Coupled", HSource::Coupled)
        .value("Uncoupled", HSource::Uncoupled);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("w_e_minus_down", &SystemParams::w_e_minus_down)
        .def_readwrite("w_up_minus_down", &SystemParams::w_up_minus_down)
        .def_readwrite("omega_bs", &SystemParams::omega_bs)
        .def_readwrite("omega_ex", &SystemParams::omega_ex)
        .def_readwrite("delta1", &SystemParams::delta1)
        .def_readwrite("delta2", &SystemParams::delta2)
        .def_readwrite("epsilon", &SystemParams::epsilon)
        .def_readwrite("bs_counter_rotating", &SystemParams::bs_counter_rotating)
        .def_readwrite("laser_counter_rotating",
                       &SystemParams::laser_counter_rotating)
        .def("laser_frequency", &SystemParams::laser_frequency)
        .def("validate", &SystemParams::validate);

    py::class_<RampSchedule>(m, "RampSchedule")
        .def(py::init<>())
        .def_readwrite("w_off", &RampSchedule::w_off)
        .def_readwrite("t_ramp_nominal", &RampSchedule::t_ramp_nominal)
        .def_readwrite("t_hold", &RampSchedule::t_hold)
        .def_readwrite("t_pre", &RampSchedule::t_pre)
        .def_readwrite("t_post", &RampSchedule::t_post)
        .def("total_duration", &RampSchedule::total_duration)
        .def("validate", &RampSchedule::validate);

    py::class_<PhysicalInputs>(m, "PhysicalInputs")
        .def(py::init<>())
        .def_readwrite("n_up", &PhysicalInputs::n_up)
        .def_readwrite("n_down", &PhysicalInputs::n_down)
        .def_readwrite("omega_single_bs", &PhysicalInputs::omega_single_bs)
        .def_readwrite("omega_single_ex", &PhysicalInputs::omega_single_ex)
        .def_readwrite("loop_current", &PhysicalInputs::loop_current)
        .def_readwrite("loop_radius", &PhysicalInputs::loop_radius)
        .def_readwrite("separation", &PhysicalInputs::separation)
        .def_readwrite("e_hfs_hz", &PhysicalInputs::e_hfs_hz);

    py::class_<ParameterEstimate>(m, "ParameterEstimate")
        .def_readonly("omega_bs_hz", &ParameterEstimate::omega_bs_hz)
        .def_readonly("omega_ex_hz", &ParameterEstimate::omega_ex_hz)
        .def_readonly("delta1_hz", &ParameterEstimate::delta1_hz)
        .def_readonly("two_photon_hz", &ParameterEstimate::two_photon_hz)
        .def_readonly("transfer_time_s", &ParameterEstimate::transfer_time_s)
        .def_readonly("loop_field_tesla", &ParameterEstimate::loop_field_tesla)
        .def_readonly("omega_single_bs_est", &ParameterEstimate::omega_single_bs_est)
        .def_readonly("squid_splitting_hz", &ParameterEstimate::squid_splitting_hz);

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init<>())
        .def_readwrite("dt_max", &IntegratorConfig::dt_max)
        .def_readwrite("steps_per_fast_period",
                       &IntegratorConfig::steps_per_fast_period)
        .def_readwrite("tolerance", &IntegratorConfig::tolerance)
        .def_readwrite("n_report", &IntegratorConfig::n_report);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<>())
        .def(py::init<const Vector6c&, double>(), py::arg("amps"),
             py::arg("norm_tol") = 1e-9)
        .def_static("normalized", &StateVector::normalized)
        .def_readwrite("amps", &StateVector::amps);

    py::class_<StateTrajectory>(m, "StateTrajectory")
        .def_readonly("times", &StateTrajectory::times)
        .def_readonly("states", &StateTrajectory::states)
        .def_readonly("norm_drift", &StateTrajectory::norm_drift)
        .def("final_state", &StateTrajectory::final_state);

    py::class_<Propagator>(m, "Propagator")
        .def_readonly("u", &Propagator::u)
        .def_readonly("t_start", &Propagator::t_start)
        .def_readonly("t_end", &Propagator::t_end)
        .def_readonly("unitarity_defect", &Propagator::unitarity_defect);

    py::class_<PropagatorTrajectory>(m, "PropagatorTrajectory")
        .def_readonly("times", &PropagatorTrajectory::times)
        .def_readonly("us", &PropagatorTrajectory::us)
        .def_readonly("unitarity_defect", &PropagatorTrajectory::unitarity_defect);

    py::class_<BlochAngles>(m, "BlochAngles")
        .def(py::init<>())
        .def(py::init([](double theta, double phi) {
                 BlochAngles a{theta, phi};
                 a.validate();
                 return a;
             }),
             py::arg("theta"), py::arg("phi") = 0.0)
        .def_readwrite("theta", &BlochAngles::theta)
        .def_readwrite("phi", &BlochAngles::phi);

    py::class_<TransferResult>(m, "TransferResult")
        .def_readonly("times", &TransferResult::times)
        .def_readonly("fidelity", &TransferResult::fidelity)
        .def_readonly("populations", &TransferResult::populations)
        .def_readonly("window_values", &TransferResult::window_values)
        .def_readonly("f_final", &TransferResult::f_final)
        .def_readonly("measured_ramp_time", &TransferResult::measured_ramp_time)
        .def_readonly("norm_drift", &TransferResult::norm_drift);

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("n_theta", &QuadratureSpec::n_theta)
        .def_readwrite("n_phi", &QuadratureSpec::n_phi);

    py::class_<AveragedFidelityResult>(m, "AveragedFidelityResult")
        .def_readonly("times", &AveragedFidelityResult::times)
        .def_readonly("f_avg", &AveragedFidelityResult::f_avg)
        .def_readonly("f_avg_final", &AveragedFidelityResult::f_avg_final)
        .def_readonly("unitarity_defect",
                      &AveragedFidelityResult::unitarity_defect);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("t_ramp_nominal", &SweepPoint::t_ramp_nominal)
        .def_readonly("measured_ramp_time", &SweepPoint::measured_ramp_time)
        .def_readonly("f_avg_final", &SweepPoint::f_avg_final)
        .def_readonly("error", &SweepPoint::error)
        .def("ok", &SweepPoint::ok);

    py::class_<HoldOptimum>(m, "HoldOptimum")
        .def_readonly("t_hold", &HoldOptimum::t_hold)
        .def_readonly("f_final", &HoldOptimum::f_final);

    m.def("basis_label", [](BasisState s) { return std::string(basis_label(s)); });
    m.def("bosonic_rabi", &bosonic_rabi, py::arg("n_up"), py::arg("n_down"),
          py::arg("omega_single"));
    m.def("two_photon_rabi", &two_photon_rabi, py::arg("omega_ex"),
          py::arg("omega_bs"), py::arg("delta1"));
    m.def("transfer_time", &transfer_time, py::arg("omega_two_photon"));
    m.def("stark_balanced_delta2", &stark_balanced_delta2, py::arg("omega_bs"),
          py::arg("omega_ex"), py::arg("delta1"));
    m.def("loop_field_on_axis", &loop_field_on_axis, py::arg("current"),
          py::arg("radius"), py::arg("distance"));
    m.def("single_atom_magnetic_rabi", &single_atom_magnetic_rabi,
          py::arg("field"));
    m.def("estimate_parameters", &estimate_parameters, py::arg("inputs"),
          py::arg("delta1_sim"), py::arg("angular") = false);

    m.def("window", &window, py::arg("t"), py::arg("schedule"));
    m.def("measured_ramp_time", &measured_ramp_time, py::arg("schedule"));
    m.def("build_h", &build_h, py::arg("t"), py::arg("params"),
          py::arg("schedule"));
    m.def("build_h0", &build_h0, py::arg("t"), py::arg("params"),
          py::arg("schedule"));

    m.def("integration_step", &integration_step, py::arg("params"),
          py::arg("schedule"), py::arg("config"));
    m.def("evolve_state", &evolve_state, py::arg("psi0"), py::arg("source"),
          py::arg("params"), py::arg("schedule"), py::arg("config"));
    m.def("evolve_propagator", &evolve_propagator, py::arg("source"),
          py::arg("params"), py::arg("schedule"), py::arg("config"));
    m.def("evolve_propagator_trajectory", &evolve_propagator_trajectory,
          py::arg("source"), py::arg("params"), py::arg("schedule"),
          py::arg("config"));

    m.def("prepare_initial", &prepare_initial, py::arg("angles"));
    m.def("prepare_target", &prepare_target, py::arg("angles"));
    m.def("fidelity_trace", &fidelity_trace, py::arg("angles"), py::arg("params"),
          py::arg("schedule"), py::arg("config"));
    m.def("averaged_fidelity", &averaged_fidelity, py::arg("params"),
          py::arg("schedule"), py::arg("config"), py::arg("quad"),
          py::arg("haar") = false, py::arg("threads") = 1);
    m.def("ramp_sweep", &ramp_sweep, py::arg("params"), py::arg("base"),
          py::arg("t_ramp_values"), py::arg("config"), py::arg("quad"),
          py::arg("haar") = false, py::arg("threads") = 1);
    m.def("optimize_hold", &optimize_hold, py::arg("params"), py::arg("schedule"),
          py::arg("config"), py::arg("lo") = -1.0, py::arg("hi") = -1.0);
    m.def("default_schedule", &default_schedule, py::arg("params"));

    py::register_exception<integration_error>(m, "IntegrationError",
                                              PyExc_RuntimeError);
}
