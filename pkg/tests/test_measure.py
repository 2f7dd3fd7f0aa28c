import numpy as np
import pytest

from jchsim.evolve import PropagationPlan, exact_propagate, propagate, trotter_step_circuit
from jchsim.measure import (ConfidenceInterval, OverlapEstimate, Trajectory,
                            confidence_interval, csp_circuit, csp_overlap,
                            depolarize, excitation_ops, lambda_exact,
                            lambda_from_overlap, noisy_variance_trajectory,
                            order_parameter, vacuum_overlap,
                            variance_per_state, variance_trajectory)
from jchsim.model import CavityParams, LatticeSpec, build_jch
from jchsim.pauli import PauliSum, matrix_of, multiply
from jchsim.prep import init_circuit, mott_state, theta_from_detuning
from jchsim.sim import Circuit, Rotation, Statevector, expectation, run_circuit


def ry_circuit(angle, n=1, qubit=0):
    return Circuit(n, [Rotation("y", angle, qubit)])


def test_lambda_zero_for_identical_states():
    sv = Statevector.zero(2)
    assert lambda_exact(sv, sv, 2) == 0.0


def test_lambda_quarter_overlap():
    assert abs(lambda_from_overlap(0.25, 2) - 1.0) < 1e-14


def test_lambda_orthogonal_is_infinite():
    a = Statevector.from_amplitudes(1, {0: 1.0})
    b = Statevector.from_amplitudes(1, {1: 1.0})
    assert lambda_exact(a, b, 1) == float("inf")


def test_lambda_monotone_in_overlap():
    ps = [0.9, 0.5, 0.1, 0.01]
    lams = [lambda_from_overlap(p, 2) for p in ps]
    assert all(b > a for a, b in zip(lams, lams[1:]))


def test_csp_circuit_width():
    c = csp_circuit(ry_circuit(0.3), ry_circuit(0.9))
    assert c.n_qubits == 3


def test_cswap_network_matches_canonical_swap():
    # the CSP circuit on basis-state preparations realizes controlled swap
    from jchsim.measure import _cswap_gates
    gates = _cswap_gates(0, 1, 2, 3)
    unitary = np.eye(8, dtype=complex)
    for g in gates:
        th = g.angle
        p = matrix_of(__import__("jchsim.pauli", fromlist=["PauliTerm"]).PauliTerm(g.axes), 3)
        unitary = (np.cos(th) * np.eye(8) - 1j * np.sin(th) * p) @ unitary
    ref = np.eye(8)[:, [0, 1, 2, 3, 4, 6, 5, 7]]  # swap |101> and |110>
    assert np.max(np.abs(unitary - ref)) < 1e-12


def test_cswap_gate_level_cost():
    # documented construction: 3 weight-2 + 3 weight-3 exponentials
    # -> 3*2 + 3*4 = 18 CNOTs per controlled swap before compilation
    from jchsim.evolve import count_two_qubit_gates
    from jchsim.measure import _cswap_gates
    c = Circuit(3, _cswap_gates(0, 1, 2, 3))
    assert count_two_qubit_gates(c) == 18


def test_csp_identical_states_converges_to_one():
    est = csp_overlap(ry_circuit(0.7), ry_circuit(0.7), shots=200000, seed=5)
    assert est.protocol == "csp"
    assert abs(est.p - 1.0) < 0.01


def test_csp_orthogonal_states_near_zero_and_sometimes_negative():
    phi = ry_circuit(0.0)
    psi = ry_circuit(np.pi)
    estimates = [csp_overlap(phi, psi, shots=1024, seed=s).p for s in range(100)]
    assert abs(np.mean(estimates)) < 0.02
    assert any(p < 0 for p in estimates)  # negative runs are kept, not discarded


def test_csp_unbiased_at_known_overlap():
    a, b = 0.8, 2.1
    p_true = np.cos((b - a) / 2) ** 2
    samples = [csp_overlap(ry_circuit(a), ry_circuit(b), 1024, seed=100 + r).p
               for r in range(15)]
    ci = 2.576 * np.std(samples, ddof=1) / np.sqrt(15)
    assert abs(np.mean(samples) - p_true) <= ci


def test_vacuum_identical_circuits_certain():
    for shots in (1, 16, 4096):
        est = vacuum_overlap(ry_circuit(1.1), ry_circuit(1.1), shots=shots, seed=0)
        assert est.p == 1.0
        assert est.lam == 0.0


def test_vacuum_unbiased_at_known_overlap():
    a, b = 0.5, 1.7
    p_true = np.cos((b - a) / 2) ** 2
    shots = 10 ** 5
    est = vacuum_overlap(ry_circuit(a), ry_circuit(b), shots=shots, seed=9)
    sigma = np.sqrt(p_true * (1 - p_true) / shots)
    assert abs(est.p - p_true) < 5 * sigma


def test_vacuum_on_jch_states_matches_statevector():
    g = 0.1
    delta = 1e4 * g
    h = build_jch(CavityParams.with_detuning(delta, g=g), LatticeSpec(L=2))
    theta = theta_from_detuning(g, 1, delta)
    prep_phi = init_circuit(theta, 2)
    psi0 = mott_state(theta, 2)
    step = trotter_step_circuit(h, 0.5)
    m = 16  # tJ = 0.8, at the cusp
    prep_psi = Circuit(6, prep_phi.gates + step.gates * m)
    trotter_state = run_circuit(prep_psi, Statevector.zero(6))
    p_true = abs(psi0.overlap(trotter_state)) ** 2
    shots = 1024
    assert p_true < 1 / shots  # overlap below shot resolution
    estimates = [vacuum_overlap(prep_phi, prep_psi, shots=shots, seed=s, L=2)
                 for s in range(10)]
    # unbiased: the mean tracks the tiny true overlap within 5 sigma
    sigma = np.sqrt(p_true / (10 * shots))
    assert abs(np.mean([e.p for e in estimates]) - p_true) < 5 * sigma
    # and typical single runs see no all-zeros event at all: singular flag
    assert any(e.singular and e.p == 0.0 for e in estimates)


def test_excitation_ops_reference_coefficients():
    ops = excitation_ops(2)
    n_ex = ops.N_ex
    assert abs(n_ex.coefficient("IIIIII") - 4.0) < 1e-14
    for axes, c in [("ZIIIII", -0.5), ("IZIIII", -1.0), ("IIZIII", -0.5),
                    ("IIIZII", -0.5), ("IIIIZI", -1.0), ("IIIIIZ", -0.5)]:
        assert abs(n_ex.coefficient(axes) - c) < 1e-14
    sq = ops.n_i_sq[0]
    for axes, c in [("IIIIII", 5.5), ("ZIIIII", -2.0), ("IZIIII", -4.0),
                    ("IIZIII", -2.0), ("ZZIIII", 1.0), ("IZZIII", 1.0),
                    ("ZIZIII", 0.5)]:
        assert abs(sq.coefficient(axes) - c) < 1e-14


def test_excitation_ops_match_dense_number_operator():
    ops = excitation_ops(1)
    n_dense = np.diag([0.0, 1, 2, 3])
    sigma_ee = np.diag([0.0, 1.0])
    expected = np.kron(np.eye(2), n_dense) + np.kron(sigma_ee, np.eye(4))
    assert np.max(np.abs(ops.n_i[0].matrix() - expected)) < 1e-12
    assert np.max(np.abs(ops.n_i_sq[0].matrix() - expected @ expected)) < 1e-12


def test_excitation_ops_all_diagonal():
    ops = excitation_ops(2)
    for op in (ops.N_ex, ops.Q_ex, *ops.n_i, *ops.n_i_sq):
        assert all(all(c in "IZ" for c in axes) for axes, _ in op.items())


def test_variance_zero_on_mott_state():
    ops = excitation_ops(2)
    for theta in (0.0, 0.7, np.pi / 2):
        sv = mott_state(theta, 2)
        assert abs(variance_per_state(sv, ops)) < 1e-12


def test_variance_shortcut_agrees_on_symmetric_trajectory():
    g = 0.1
    h = build_jch(CavityParams.with_detuning(g, g=g), LatticeSpec(L=2))
    theta = theta_from_detuning(g, 1, g)
    psi0 = mott_state(theta, 2)
    states = [psi0] + exact_propagate(psi0, h, [2.5, 5.0, 7.5, 10.0])
    ops = excitation_ops(2)
    for s in states:
        full = variance_per_state(s, ops, shortcut=False)
        half = variance_per_state(s, ops, shortcut=True)
        assert abs(full - half) < 1e-10


def test_variance_peak_near_hopping_cusp():
    g = 0.1
    delta = 1e4 * g
    h = build_jch(CavityParams.with_detuning(delta, g=g), LatticeSpec(L=2))
    psi0 = mott_state(theta_from_detuning(g, 1, delta), 2)
    times = np.linspace(0.05, 10.0, 200)
    states = exact_propagate(psi0, h, list(times))
    ops = excitation_ops(2)
    values = [variance_per_state(s, ops) for s in states]
    t_peak = times[int(np.argmax(values))] * 0.1  # in units of 1/J
    assert 0.75 <= t_peak <= 0.85


def test_variance_trajectory_shots_consistent_with_exact():
    g = 0.1
    h = build_jch(CavityParams.with_detuning(g, g=g), LatticeSpec(L=2))
    psi0 = mott_state(theta_from_detuning(g, 1, g), 2)
    times = [0.0, 2.5, 5.0, 7.5, 10.0]
    states = [psi0] + exact_propagate(psi0, h, times[1:])
    exact = variance_trajectory(states, times, 2)
    noisy = variance_trajectory(states, times, 2, shots=20000, seed=3, n_runs=4)
    assert exact.ci == []
    assert len(noisy.ci) == len(times)
    for a, b in zip(exact.values, noisy.values):
        assert abs(a - b) < 0.1


def test_trajectory_validation():
    with pytest.raises(ValueError):
        Trajectory([0.0, 1.0], [1.0])
    with pytest.raises(ValueError):
        Trajectory([0.0, 0.0], [1.0, 1.0])


def test_order_parameter_constant_trajectory():
    traj = Trajectory([0.0, 1.0, 2.0], [0.4, 0.4, 0.4])
    assert abs(order_parameter(traj) - 0.4) < 1e-14


def test_order_parameter_left_endpoint_rule():
    traj = Trajectory(list(np.arange(5.0)), [1.0, 2.0, 3.0, 4.0, 100.0])
    assert order_parameter(traj) == 2.5  # final sample excluded


def test_order_parameter_rejects_empty():
    with pytest.raises(ValueError):
        order_parameter(Trajectory([0.0], [1.0]))


def test_confidence_interval_all_equal():
    ci = confidence_interval([0.5, 0.5, 0.5], L=2)
    assert ci.ci == 0.0
    assert not ci.singular


def test_confidence_interval_reference_value():
    # P = 0.5, sigma_P = 0.05, L = 2, N = 15: CI = 2.576*0.05/(2*0.5*ln2)/sqrt15
    rng = np.random.default_rng(0)
    samples = list(0.5 + 0.05 * rng.standard_normal(15))
    ci = confidence_interval(samples, L=2)
    expected = 2.576 * (ci.sigma_p / (2 * ci.mean_p * np.log(2))) / np.sqrt(15)
    assert abs(ci.ci - expected) < 1e-12
    manual = 2.576 * (0.05 / (2 * 0.5 * np.log(2))) / np.sqrt(15)
    assert abs(manual - 0.0480) < 5e-4


def test_confidence_interval_flags_nonpositive_mean():
    ci = confidence_interval([0.01, -0.02, 0.005, -0.01], L=2)
    assert ci.singular
    assert ci.ci == float("inf")


def test_depolarize_zero_probability_identity():
    sv = mott_state(0.4, 2)
    out = depolarize(sv, 0.0, np.random.default_rng(0))
    assert np.max(np.abs(out.amplitudes - sv.amplitudes)) < 1e-15


def test_depolarize_p_one_touches_every_qubit():
    sv = Statevector.zero(4)
    rng = np.random.default_rng(1)
    out = depolarize(sv, 1.0, rng)
    assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12


def test_depolarize_rejects_bad_p():
    with pytest.raises(ValueError):
        depolarize(Statevector.zero(1), 1.5, np.random.default_rng(0))


def test_noise_plateau_at_full_depolarization():
    g = 0.1
    delta = g
    h = build_jch(CavityParams.with_detuning(delta, g=g), LatticeSpec(L=2))
    psi0 = mott_state(theta_from_detuning(g, 1, delta), 2)
    step = trotter_step_circuit(h, 0.5)
    traj = noisy_variance_trajectory(psi0, step, n_steps=6, L=2, noise_p=1.0,
                                     shots_per_realization=256,
                                     n_realizations=400, seed=13)
    assert abs(traj.values[-1] - 3.0) <= 0.1
    assert abs(traj.values[4] - 3.0) <= 0.1


def channel_variance(psi0, step, n_steps, noise_p, n_realizations, seed):
    """Noise-averaged variance from exact per-realization expectations."""
    from jchsim.measure import _derive_seed
    ops = excitation_ops(2)
    acc_n = np.zeros(2)
    acc_n2 = np.zeros(2)
    for r in range(n_realizations):
        rng = np.random.default_rng(_derive_seed(seed, r, 0))
        state = psi0.copy()
        for _ in range(n_steps):
            state = run_circuit(step, state)
            state = depolarize(state, noise_p, rng)
        for i in range(2):
            acc_n[i] += expectation(state, ops.n_i[i])
            acc_n2[i] += expectation(state, ops.n_i_sq[i])
    acc_n /= n_realizations
    acc_n2 /= n_realizations
    return float(np.sum(acc_n2 - acc_n ** 2))


def test_noise_interpolates_between_exact_and_plateau_at_small_p():
    # the channel variance climbs from the noiseless value toward the
    # infinite-noise plateau; monotonicity holds in the small-p regime
    # (large p overshoots the plateau transiently before settling at 3)
    g = 0.1
    delta = g
    h = build_jch(CavityParams.with_detuning(delta, g=g), LatticeSpec(L=2))
    psi0 = mott_state(theta_from_detuning(g, 1, delta), 2)
    step = trotter_step_circuit(h, 0.5)
    values = [channel_variance(psi0, step, 5, p, 200, seed=3)
              for p in (0.0, 0.1, 0.3)]
    assert values[0] < values[1] < values[2]
    assert all(v <= 3.3 for v in values)
