"""End-to-end smoke tests of the python bindings."""

import math

import numpy as np
import pytest

import ncval


def pauli():
    return ncval.pauli_system()


def test_version_and_registry():
    assert ncval.__version__
    names = ncval.suite_names()
    assert len(names) == 7
    assert "homomorphism" in names
    assert ncval.describe("ccr")


def test_operator_and_state_round_trip():
    p = pauli()
    assert p.sigma_x.is_hermitian()
    sz = np.asarray(p.sigma_z.matrix)
    assert sz[0, 0] == 1 and sz[1, 1] == -1

    psi = ncval.gauge_fix(np.array([1.0, 1.0j], dtype=complex))
    amps = np.asarray(psi.amplitudes)
    assert amps[0].imag == 0.0
    assert abs(np.vdot(amps, amps) - 1.0) < 1e-12
    assert abs(ncval.expectation(p.sigma_y, psi) - 1.0) < 1e-12


def test_star_product_is_a_homomorphism():
    rng = ncval.CounterRng(7, 1)
    a = ncval.random_operator(rng, 4)
    b = ncval.random_operator(rng, 4)
    psi = ncval.random_state(rng, 4)
    u, v = ncval.ncvalue(a, psi), ncval.ncvalue(b, psi)
    left = ncval.star_product(u, v)
    right = ncval.ncvalue(a @ b, psi)
    assert abs(left.f - right.f) < 1e-10
    assert np.max(np.abs(np.asarray(left.hess) - np.asarray(right.hess))) < 1e-10

    back = ncval.reconstruct_operator(u)
    assert np.max(np.abs(np.asarray(back.matrix) - np.asarray(a.matrix))) < 1e-9


def test_multiplicativity_defect_on_the_ground_state():
    sys = ncval.build_oscillator(8)
    defect = ncval.multiplicativity_defect(
        sys.position, sys.momentum, ncval.fock_state(sys, 0)
    )
    assert abs(defect - 0.5j) < 1e-12


def test_dynamics_pictures_agree():
    p = pauli()
    h = p.sigma_z
    psi = ncval.gauge_fix(np.array([1.0, 1.0], dtype=complex))
    times = [0.1 * (k + 1) for k in range(20)]
    report = ncval.picture_equivalence_check(h, p.sigma_x, psi, times)
    assert report.max_value_deviation < 1e-10

    cfg = ncval.StepperConfig()
    cfg.dt = 1e-3
    flow = ncval.realcoord_flow(h, psi, [math.pi], cfg)
    exact = ncval.schrodinger_propagate(h, psi, [math.pi])
    assert ncval.ray_distance(flow.states[0], exact.states[0]) < 1e-8
    assert flow.meta.propagator == "realcoord_rk4"


def test_hamilton_flow_matches_heisenberg():
    sys = ncval.build_oscillator(8)
    h = ncval.make_separable_hamiltonian(
        [ncval.HamiltonianTerm(0, 2, 0.5), ncval.HamiltonianTerm(2, 0, 0.5)]
    )
    times = [math.pi / 2]
    flow = ncval.hamilton_system_flow(h, sys, times)
    heis = ncval.heisenberg_propagate(sys.hamiltonian, sys.position, times)
    got = np.asarray(flow.position[0].matrix)[:6, :6]
    want = np.asarray(heis.operators[0].matrix)[:6, :6]
    assert np.max(np.abs(got - want)) < 1e-6


def test_ehrenfest_rides_the_classical_orbit():
    sys = ncval.build_oscillator(32)
    times = [2 * math.pi * (k + 1) / 32 for k in range(32)]
    trace = ncval.ehrenfest_trace(sys, ncval.coherent_state(sys, 1.0), times)
    assert trace.max_position_deviation < 1e-6
    assert abs(trace.x_expect[7] - math.sqrt(2) * math.cos(times[7])) < 1e-6


def test_tomography_round_trip():
    p = pauli()
    psi = ncval.gauge_fix(np.array([0.8, 0.6j], dtype=complex))
    truth = ncval.pure_density(psi)
    basis = ncval.gellmann_basis(2)
    means = [ncval.density_expectation(g, truth).real for g in basis]
    rho, cond = ncval.reconstruct_density(basis, means)
    assert ncval.trace_distance(rho, truth) < 1e-10
    assert cond >= 1.0

    records = [
        (a, ncval.sample_measurement(a, psi, 20000, seed))
        for seed, a in enumerate([p.sigma_x, p.sigma_y, p.sigma_z])
    ]
    sampled, _ = ncval.reconstruct_density_from_records(records)
    assert ncval.trace_distance(sampled, truth) < 0.05
    assert ncval.purity(sampled) <= 1.0 + 1e-9

    with pytest.raises(ncval.IncompleteObservableSet):
        ncval.reconstruct_density([p.sigma_z], [0.3])


def test_measurement_statistics():
    p = pauli()
    psi = ncval.gauge_fix(np.array([1.0, 0.0], dtype=complex))
    record = ncval.sample_measurement(p.sigma_x, psi, 100000, 7, "sx")
    freq = record.counts[1] / record.shots
    assert 0.495 <= freq <= 0.505
    est = ncval.estimate_expectation(record)
    assert abs(est.mean) < 0.02
    assert est.standard_error < 0.005


def test_suite_run_end_to_end(tmp_path):
    cfg = ncval.SuiteConfig()
    cfg.dims = [4]
    cfg.trials = 5
    cfg.output_dir = str(tmp_path)
    report = ncval.run_suite("degeneracy", cfg)
    assert report.passed
    assert report.suite == "degeneracy"
    assert "variance_gap_error" in report.metrics
    assert report.failures == []
    assert '"suite"' in report.to_json_string()

    cfg.tolerances = {"tol_ccr": 1e-18}
    bad = ncval.run_suite("ccr", cfg)
    assert not bad.passed
    assert bad.failures


def test_io_round_trip(tmp_path):
    p = pauli()
    path = str(tmp_path / "op.json")
    ncval.save_operator(p.sigma_y, path)
    back = ncval.load_operator(path)
    assert np.array_equal(np.asarray(back.matrix), np.asarray(p.sigma_y.matrix))
