import math

import numpy as np
import pytest

import qxfer


def survey_config(n_report=101):
    cfg = qxfer.IntegratorConfig()
    cfg.dt_max = 4e-4
    cfg.tolerance = 1e-4
    cfg.n_report = n_report
    return cfg


def short_schedule():
    s = qxfer.RampSchedule()
    s.w_off = 0.25
    s.t_ramp_nominal = 4.0
    s.t_hold = 20.0
    s.t_pre = 3.0
    s.t_post = 5.0
    return s


def test_scaling_calculus():
    assert qxfer.two_photon_rabi(0.15, 0.15, 1.5) == pytest.approx(0.015)
    assert qxfer.transfer_time(0.015) == pytest.approx(104.71975511965977)
    assert qxfer.bosonic_rabi(5e5, 5e5, 1e3) == pytest.approx(5e8)
    assert qxfer.stark_balanced_delta2(0.15, 0.15, 1.5) == 0.0
    with pytest.raises(Exception):
        qxfer.transfer_time(0.0)


def test_estimate_parameters():
    est = qxfer.estimate_parameters(qxfer.PhysicalInputs(), 1.5)
    assert 5e-9 < est.transfer_time_s < 50e-9
    assert est.squid_splitting_hz == pytest.approx(17.0e9)


def test_hamiltonian_structure():
    params = qxfer.SystemParams()
    sched = short_schedule()
    t = sched.t_pre + sched.t_ramp_nominal + 1.0  # on the plateau
    h = np.asarray(qxfer.build_h(t, params, sched))
    assert h.shape == (6, 6)
    assert np.max(np.abs(h - h.conj().T)) == 0.0
    assert h[4, 3] == pytest.approx(-0.15)
    assert (h[4, 4] - h[5, 5]).real == pytest.approx(2.5)
    h0 = np.asarray(qxfer.build_h0(t, params, sched))
    assert np.count_nonzero(h - h0) == 2


def test_dark_state_evolution():
    params = qxfer.SystemParams()
    psi0 = qxfer.prepare_initial(qxfer.BlochAngles(0.0))
    traj = qxfer.evolve_state(psi0, qxfer.HSource.Coupled, params,
                              short_schedule(), survey_config())
    states = np.asarray(traj.states)
    assert np.all(states[:, :5] == 0)
    assert np.allclose(np.abs(states[:, 5]), 1.0, atol=1e-3)


def test_transfer_trace():
    params = qxfer.SystemParams()
    res = qxfer.fidelity_trace(qxfer.BlochAngles(math.pi), params,
                               short_schedule(), survey_config())
    fid = np.asarray(res.fidelity)
    pops = np.asarray(res.populations)
    assert fid.min() >= 0.0 and fid.max() <= 1.0 + 1e-12
    assert np.allclose(pops.sum(axis=1), 1.0, atol=1e-3)
    assert res.f_final == fid[-1]
    assert 0.0 < res.measured_ramp_time < short_schedule().t_ramp_nominal


def test_averaged_fidelity_identity():
    params = qxfer.SystemParams()
    none = qxfer.RampSchedule()
    none.t_ramp_nominal = 0.0
    none.t_pre = 0.0
    none.t_post = 0.0
    none.t_hold = 0.0
    res = qxfer.averaged_fidelity(params, none, survey_config(2),
                                  qxfer.QuadratureSpec())
    assert res.f_avg_final == pytest.approx(0.5, abs=1e-6)


def test_propagator_unitarity():
    params = qxfer.SystemParams()
    prop = qxfer.evolve_propagator(qxfer.HSource.Coupled, params,
                                   short_schedule(), survey_config(2))
    u = np.asarray(prop.u)
    assert np.max(np.abs(u.conj().T @ u - np.eye(6))) < 1e-3
    assert prop.unitarity_defect < 1e-3
