"""Experiment orchestration shared by the service and the CLI.

Every experiment produces rows under one stable schema:

    experiment, delta_over_g, time_over_T, value, ci, shots, n_trotter,
    run_index, seed, flags

Cells that do not apply stay empty; singular overlaps carry value "inf"
and the flag "singular"; summary rows (mean over runs plus confidence
interval) use run_index -1 and the flag "summary".  Sweep points run in
parallel but rows are rebuilt in deterministic order, and all shot seeds
derive from (seed, detuning index, step, run), so reruns with one config
are byte-identical.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import ExperimentConfig, validate
from .evolve import (PropagationPlan, benchmark_uv, count_two_qubit_gates,
                     exact_propagate, format_matrix, propagate,
                     trotter_step_circuit)
from .measure import (Trajectory, confidence_interval, lambda_from_overlap,
                      noisy_variance_trajectory, order_parameter,
                      variance_trajectory, _derive_seed)
from .model import CavityParams, LatticeSpec, build_jch
from .prep import init_circuit, mott_state, theta_from_detuning
from .sim import Circuit, Statevector, run_circuit, sample

COLUMNS = ("experiment", "delta_over_g", "time_over_T", "value", "ci",
           "shots", "n_trotter", "run_index", "seed", "flags")


class ConfigError(ValueError):
    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass
class ExperimentResult:
    columns: tuple = COLUMNS
    rows: list[dict] = field(default_factory=list)
    extras: dict = field(default_factory=dict)


def _cell(value) -> object:
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _row(config: ExperimentConfig, **kw) -> dict:
    base = {c: "" for c in COLUMNS}
    base["experiment"] = config.experiment
    base["seed"] = config.seed
    base["n_trotter"] = config.plan.n_trotter
    for k, v in kw.items():
        base[k] = _cell(v)
    return base


def _setup(config: ExperimentConfig, delta_over_g: float):
    p = config.params
    delta = delta_over_g * p.g
    params = CavityParams.with_detuning(delta, omega=p.omega, g=p.g, J=p.J)
    lattice = LatticeSpec(L=config.lattice.L)
    h = build_jch(params, lattice)
    theta = theta_from_detuning(p.g, 1, delta)
    total_time = config.plan.total_time_over_T / p.J
    plan = PropagationPlan(total_time=total_time,
                           n_time_steps=config.plan.n_time_steps,
                           n_trotter=config.plan.n_trotter,
                           term_order=config.plan.term_order)
    return h, theta, plan, lattice


def _trajectory_states(config, h, theta, plan, lattice):
    """States at t = 0, dt, ..., T plus the matching times in units of T."""
    psi0 = mott_state(theta, lattice.L)
    if config.exact_oracle:
        states = exact_propagate(psi0, h, list(plan.times()))
    else:
        states = propagate(psi0, h, plan)
    frac = config.plan.total_time_over_T / config.plan.n_time_steps
    times = [0.0] + [frac * (k + 1) for k in range(plan.n_time_steps)]
    return psi0, [psi0] + states, times


def _run_lambda_point(config: ExperimentConfig, det_idx: int) -> list[dict]:
    delta_over_g = config.detunings[det_idx]
    h, theta, plan, lattice = _setup(config, delta_over_g)
    psi0, states, times = _trajectory_states(config, h, theta, plan, lattice)
    rows = []
    if config.protocol == "statevector":
        for t, state in zip(times, states):
            lam = lambda_from_overlap(abs(psi0.overlap(state)) ** 2, lattice.L)
            rows.append(_row(config, delta_over_g=delta_over_g, time_over_T=t,
                             value=lam, run_index=0,
                             flags="singular" if math.isinf(lam) else ""))
        return rows

    # shot protocols measure the overlap against the preparation circuit
    from .measure import csp_circuit
    prep_phi = init_circuit(theta, lattice.L)
    step = trotter_step_circuit(h, plan.delta_t, plan.term_order)
    n = lattice.n_qubits
    for k, t in enumerate(times):
        prep_psi = Circuit(n, prep_phi.gates + step.gates * (plan.n_trotter * k))
        if config.protocol == "vacuum":
            circuit = prep_psi + prep_phi.inverse()
            final = run_circuit(circuit, Statevector.zero(n))
            estimate = _vacuum_estimate
        else:
            circuit = csp_circuit(prep_phi, prep_psi)
            final = run_circuit(circuit, Statevector.zero(circuit.n_qubits))
            estimate = _csp_estimate
        p_samples = []
        for r in range(config.n_runs):
            counts = sample(final, config.shots,
                            _derive_seed(config.seed, det_idx, k, r))
            p_samples.append(estimate(counts))
        for r, p_hat in enumerate(p_samples):
            lam = lambda_from_overlap(p_hat, lattice.L)
            rows.append(_row(config, delta_over_g=delta_over_g, time_over_T=t,
                             value=lam, shots=config.shots, run_index=r,
                             flags="singular" if math.isinf(lam) else ""))
        if config.n_runs > 1:
            ci = confidence_interval(p_samples, lattice.L)
            flags = "summary" + (",singular" if ci.singular else "")
            rows.append(_row(config, delta_over_g=delta_over_g, time_over_T=t,
                             value=ci.lam, ci=ci.ci, shots=config.shots,
                             run_index=-1, flags=flags))
    return rows


def _vacuum_estimate(counts) -> float:
    return counts.frequency(0)


def _csp_estimate(counts) -> float:
    anc_mask = 1 << (counts.n_qubits - 1)
    freq0 = sum(c for idx, c in counts.counts.items()
                if not idx & anc_mask) / counts.shots
    return 2 * freq0 - 1


def _variance_traj(config: ExperimentConfig, det_idx: int) -> Trajectory:
    delta_over_g = config.detunings[det_idx]
    h, theta, plan, lattice = _setup(config, delta_over_g)
    if config.noise_p > 0:
        psi0 = mott_state(theta, lattice.L)
        step = trotter_step_circuit(h, plan.delta_t, plan.term_order)
        frac = config.plan.total_time_over_T / plan.n_time_steps
        traj = noisy_variance_trajectory(
            psi0, step, plan.n_time_steps * plan.n_trotter, lattice.L,
            config.noise_p, config.shots, config.n_runs,
            _derive_seed(config.seed, det_idx, 0, 0))
        # keep only whole time steps when n_trotter > 1
        keep = [i for i in range(len(traj.values))
                if (i + 1) % plan.n_trotter == 0]
        values = [traj.values[i] for i in keep]
        times = [frac * (k + 1) for k in range(plan.n_time_steps)]
        return Trajectory(times, values, metadata={"noisy": True})
    psi0, states, times = _trajectory_states(config, h, theta, plan, lattice)
    shots = None if config.protocol == "statevector" else config.shots
    return variance_trajectory(states, times, lattice.L, shots=shots,
                               seed=_derive_seed(config.seed, det_idx, 1, 0),
                               n_runs=config.n_runs)


def _run_variance_point(config: ExperimentConfig, det_idx: int) -> list[dict]:
    delta_over_g = config.detunings[det_idx]
    traj = _variance_traj(config, det_idx)
    shots = "" if (config.protocol == "statevector" and not config.noise_p) \
        else config.shots
    flags = "noisy" if traj.metadata.get("noisy") else ""
    rows = []
    for i, (t, v) in enumerate(zip(traj.times, traj.values)):
        rows.append(_row(config, delta_over_g=delta_over_g, time_over_T=t,
                         value=v, ci=traj.ci[i] if traj.ci else None,
                         shots=shots, run_index=0, flags=flags))
    return rows


def _run_order_parameter_point(config: ExperimentConfig, det_idx: int) -> list[dict]:
    delta_over_g = config.detunings[det_idx]
    traj = _variance_traj(config, det_idx)
    op = order_parameter(traj)
    shots = "" if config.protocol == "statevector" else config.shots
    return [_row(config, delta_over_g=delta_over_g, value=op, shots=shots,
                 run_index=0)]


def _run_benchmark(config: ExperimentConfig) -> ExperimentResult:
    result = benchmark_uv(config.plan.n_trotter)
    text = ("U (exact):\n%s\n\nV (Trotterized, N=%d):\n%s\n\nrel_err = %.4f\n"
            % (format_matrix(result.u), result.n_trotter,
               format_matrix(result.v), result.rel_err))
    row = _row(config, value=result.rel_err, n_trotter=result.n_trotter)
    return ExperimentResult(rows=[row], extras={
        "text": text,
        "u": [[[float(z.real), float(z.imag)] for z in line] for line in result.u],
        "v": [[[float(z.real), float(z.imag)] for z in line] for line in result.v],
        "rel_err": result.rel_err,
        "n_trotter": result.n_trotter,
    })


def _run_gate_scaling(config: ExperimentConfig) -> ExperimentResult:
    rows = []
    counts = {}
    for L in range(config.scaling_l_min, config.scaling_l_max + 1):
        h = build_jch(CavityParams.with_detuning(
            config.detunings[0] * config.params.g, omega=config.params.omega,
            g=config.params.g, J=config.params.J), LatticeSpec(L=L))
        step = trotter_step_circuit(h, 0.05 / config.params.J,
                                    config.plan.term_order)
        counts[L] = count_two_qubit_gates(step)
        rows.append(_row(config, value=counts[L], flags=f"L={L}"))
    return ExperimentResult(rows=rows, extras={"counts": counts})


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    diagnostics = validate(config)
    if diagnostics:
        raise ConfigError(diagnostics)
    if config.experiment == "benchmark-uv":
        return _run_benchmark(config)
    if config.experiment == "gate-scaling":
        return _run_gate_scaling(config)
    point = {"lambda": _run_lambda_point,
             "variance": _run_variance_point,
             "order-parameter": _run_order_parameter_point}[config.experiment]
    indices = range(len(config.detunings))
    jobs = config.jobs or min(len(config.detunings), _cpu_count())
    if jobs > 1 and len(config.detunings) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda i: point(config, i), indices))
    else:
        chunks = [point(config, i) for i in indices]
    rows = [row for chunk in chunks for row in chunk]
    return ExperimentResult(rows=rows)


def _cpu_count() -> int:
    import os
    return os.cpu_count() or 1
