"""Observables and measurement protocols.

Overlap observable Lambda(t) = -(1/L) log2 |<psi0|psi(t)>|^2, measured
three ways: directly on statevectors, by the ancilla-based Canonical Swap
Test, or by the Vacuum Test (run psi's preparation followed by the inverse
of phi's and read the all-zeros frequency).  Excitation observables are
I/Z-only Pauli sums, so one Z-basis count set per time step feeds every
estimator.  A per-qubit depolarizing channel provides the infinite-noise
plateau check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import log2, pi, sqrt

import numpy as np

from .model import LatticeSpec, photon_number_sum
from .pauli import PauliSum, PauliTerm, multiply
from .sim import (Circuit, PauliExp, Rotation, ShotCounts, Statevector,
                  apply_pauli_term, estimate_z_observable, expectation,
                  run_circuit, sample)

Z_99 = 2.576  # 99% confidence factor


def lambda_from_overlap(p: float, L: int) -> float:
    """-(1/L) log2(p); +inf flags the singular zero-overlap point."""
    if p <= 0.0:
        return float("inf")
    return -log2(p) / L


def lambda_exact(psi0: Statevector, psit: Statevector, L: int) -> float:
    return lambda_from_overlap(abs(psi0.overlap(psit)) ** 2, L)


@dataclass(frozen=True)
class OverlapEstimate:
    """A single-run overlap estimate; CSP may legitimately report p < 0."""

    p: float
    lam: float
    shots: int
    protocol: str

    @property
    def singular(self) -> bool:
        return not np.isfinite(self.lam)


def _cswap_gates(control: int, a: int, b: int, n: int) -> list[PauliExp]:
    """Controlled swap as eight commuting Pauli exponentials.

    CSWAP = exp(i pi |1><1|_c (x) P_singlet) with P_singlet the projector
    (II - XX - YY - ZZ)/4 on the swapped pair; expanding gives angles
    -pi/8 * sign over {I,Z}_c (x) {II, XX, YY, ZZ}.  All eight strings
    commute, so the product is exact (the identity string keeps the global
    phase so the realization equals the canonical CSWAP matrix).  Gate-level
    CNOT costs follow from the standard ladder decomposition in ``evolve``.
    """
    gates = []
    for c_ax, pair_ax, sign in [
        ("I", "II", 1), ("I", "XX", -1), ("I", "YY", -1), ("I", "ZZ", -1),
        ("Z", "II", -1), ("Z", "XX", 1), ("Z", "YY", 1), ("Z", "ZZ", 1),
    ]:
        axes = ["I"] * n
        axes[control] = c_ax
        axes[a], axes[b] = pair_ax[0], pair_ax[1]
        gates.append(PauliExp("".join(axes), -sign * pi / 8))
    return gates


def csp_circuit(prep_phi: Circuit, prep_psi: Circuit) -> Circuit:
    """Ancilla on qubit 0, phi register on 1..w, psi register on w+1..2w."""
    w = prep_phi.n_qubits
    if prep_psi.n_qubits != w:
        raise ValueError("preparation circuits must share one width")
    n = 2 * w + 1
    circuit = Circuit(n)
    circuit.extend(prep_phi.shifted(1, n).gates)
    circuit.extend(prep_psi.shifted(1 + w, n).gates)
    circuit.append(Rotation("y", pi / 2, 0))
    for i in range(w):
        circuit.extend(_cswap_gates(0, 1 + i, 1 + w + i, n))
    circuit.append(Rotation("y", -pi / 2, 0))
    return circuit


def csp_overlap(prep_phi: Circuit, prep_psi: Circuit, shots: int, seed: int,
                L: int | None = None) -> OverlapEstimate:
    """Canonical Swap Test: p_hat = 2 * freq(ancilla = 0) - 1.

    The estimator is unbiased for |<phi|psi>|^2; near-zero overlaps can
    fluctuate to negative p_hat, which is kept (discarding it would bias
    the run average).
    """
    circuit = csp_circuit(prep_phi, prep_psi)
    state = run_circuit(circuit, Statevector.zero(circuit.n_qubits))
    counts = sample(state, shots, seed)
    anc_mask = 1 << (circuit.n_qubits - 1)  # ancilla is qubit 0 (MSB)
    freq0 = sum(c for idx, c in counts.counts.items() if not idx & anc_mask) / shots
    p_hat = 2 * freq0 - 1
    return OverlapEstimate(p_hat, lambda_from_overlap(p_hat, L or prep_phi.n_qubits // 3 or 1),
                           shots, "csp")


def vacuum_overlap(prep_phi: Circuit, prep_psi: Circuit, shots: int, seed: int,
                   L: int | None = None) -> OverlapEstimate:
    """Vacuum Test: p_hat = freq(all zeros) after prep_psi then prep_phi^-1."""
    if prep_phi.n_qubits != prep_psi.n_qubits:
        raise ValueError("preparation circuits must share one width")
    circuit = prep_psi + prep_phi.inverse()
    state = run_circuit(circuit, Statevector.zero(circuit.n_qubits))
    counts = sample(state, shots, seed)
    p_hat = counts.frequency(0)
    return OverlapEstimate(p_hat, lambda_from_overlap(p_hat, L or prep_phi.n_qubits // 3 or 1),
                           shots, "vacuum")


@dataclass(frozen=True)
class ExcitationOps:
    """Per-cavity polariton numbers and their squares, all I/Z-only."""

    n_i: list[PauliSum]
    n_i_sq: list[PauliSum]
    N_ex: PauliSum
    Q_ex: PauliSum


def excitation_ops(L: int) -> ExcitationOps:
    """n_i = 2 - 0.5 Z_a - Z_m - 0.5 Z_l per cavity; N_ex and Q_ex sum them."""
    lattice = LatticeSpec(L=L)
    n = lattice.n_qubits
    n_i, n_i_sq = [], []
    for i in range(L):
        atom, msb, lsb = lattice.cavity_qubits(i)
        sigma_ee = PauliSum(n, {"I" * n: 0.5, _z(atom, n): -0.5})
        photon = photon_number_sum(2).embed((msb, lsb), n)
        ni = photon + sigma_ee
        n_i.append(ni)
        n_i_sq.append(multiply(ni, ni))
    N_ex = n_i[0]
    Q_ex = n_i_sq[0]
    for i in range(1, L):
        N_ex = N_ex + n_i[i]
        Q_ex = Q_ex + n_i_sq[i]
    return ExcitationOps(n_i, n_i_sq, N_ex, Q_ex)


def _z(q: int, n: int) -> str:
    axes = ["I"] * n
    axes[q] = "Z"
    return "".join(axes)


@dataclass
class Trajectory:
    """Time series of one observable with optional confidence intervals."""

    times: list[float]
    values: list[float]
    ci: list[float] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if self.ci and len(self.ci) != len(self.times):
            raise ValueError("ci length mismatch")
        if any(t2 <= t1 for t1, t2 in zip(self.times, self.times[1:])):
            raise ValueError("times must be strictly increasing")


def variance_per_state(state: Statevector, ops: ExcitationOps,
                       shortcut: bool = False) -> float:
    """delta N^2 = sum_i (<n_i^2> - <n_i>^2) on one state.

    With ``shortcut`` only cavity 0 is measured and scaled by L (valid for
    identical cavities).
    """
    L = len(ops.n_i)
    cavities = [0] if shortcut else range(L)
    total = 0.0
    for i in cavities:
        mean = expectation(state, ops.n_i[i])
        total += expectation(state, ops.n_i_sq[i]) - mean ** 2
    return total * (L if shortcut else 1)


def variance_trajectory(states: list[Statevector], times: list[float], L: int,
                        shots: int | None = None, seed: int = 0, n_runs: int = 1,
                        shortcut: bool = False,
                        metadata: dict | None = None) -> Trajectory:
    """delta N^2 over a trajectory, exactly or from per-step Z-basis shots.

    In shots mode every n_i and n_i^2 at one time step is estimated from the
    same count set; n_runs independent count sets give the value mean and a
    99% confidence interval.
    """
    ops = excitation_ops(L)
    values, ci = [], []
    for step, state in enumerate(states):
        if shots is None:
            values.append(variance_per_state(state, ops, shortcut))
        else:
            runs = []
            for r in range(n_runs):
                counts = sample(state, shots, _derive_seed(seed, step, r))
                runs.append(_variance_from_counts(counts, ops, shortcut))
            values.append(float(np.mean(runs)))
            ci.append(Z_99 * float(np.std(runs, ddof=1)) / sqrt(n_runs)
                      if n_runs > 1 else 0.0)
    meta = {"n_runs": n_runs, "shots": shots, "shortcut": shortcut}
    meta.update(metadata or {})
    return Trajectory(list(times), values, ci, meta)


def _variance_from_counts(counts: ShotCounts, ops: ExcitationOps,
                          shortcut: bool = False) -> float:
    L = len(ops.n_i)
    cavities = [0] if shortcut else range(L)
    total = 0.0
    for i in cavities:
        mean = estimate_z_observable(counts, ops.n_i[i])
        total += estimate_z_observable(counts, ops.n_i_sq[i]) - mean ** 2
    return total * (L if shortcut else 1)


def order_parameter(traj: Trajectory) -> float:
    """Time average of delta N^2 over [0, T]: left-endpoint rectangle rule,
    i.e. the mean of all samples except the final one."""
    if len(traj.values) < 2:
        raise ValueError("trajectory must cover [0, T] with at least two samples")
    return float(np.mean(traj.values[:-1]))


@dataclass(frozen=True)
class ConfidenceInterval:
    mean_p: float
    sigma_p: float
    lam: float
    sigma_lambda: float
    ci: float
    singular: bool


def confidence_interval(p_samples: list[float], L: int,
                        z: float = Z_99) -> ConfidenceInterval:
    """Propagate the run scatter of P into Lambda.

    sigma_Lambda = |dLambda/dP| sigma_P with dLambda/dP = -1/(L P ln 2) at
    the mean P, and CI = z sigma_Lambda / sqrt(N_runs).  A nonpositive mean
    P makes Lambda and its interval diverge; the result is flagged singular.
    """
    if len(p_samples) < 2:
        raise ValueError("need at least two samples")
    mean_p = float(np.mean(p_samples))
    sigma_p = float(np.std(p_samples, ddof=1))
    n_runs = len(p_samples)
    if mean_p <= 0:
        return ConfidenceInterval(mean_p, sigma_p, float("inf"), float("inf"),
                                  float("inf"), True)
    lam = lambda_from_overlap(mean_p, L)
    sigma_lambda = sigma_p / (L * mean_p * np.log(2))
    return ConfidenceInterval(mean_p, sigma_p, lam, sigma_lambda,
                              z * sigma_lambda / sqrt(n_runs), False)


def depolarize(state: Statevector, p: float, rng: np.random.Generator) -> Statevector:
    """One stochastic depolarizing layer: with probability p per qubit apply
    a uniformly random X, Y or Z."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    out = state
    for q in range(state.n_qubits):
        if rng.random() < p:
            axes = ["I"] * state.n_qubits
            axes[q] = "XYZ"[rng.integers(3)]
            out = apply_pauli_term(out, PauliTerm("".join(axes)))
    return out


def noisy_variance_trajectory(psi0: Statevector, step_circuit: Circuit,
                              n_steps: int, L: int, noise_p: float,
                              shots_per_realization: int, n_realizations: int,
                              seed: int, times: list[float] | None = None) -> Trajectory:
    """Shot-estimated delta N^2(t) under stochastic depolarizing noise.

    Each realization propagates its own noisy trajectory; counts are pooled
    across realizations per time step (each hardware shot sees fresh noise),
    then the variance is computed from the pooled estimates.
    """
    ops = excitation_ops(L)
    pooled: list[dict[int, int]] = [dict() for _ in range(n_steps)]
    for r in range(n_realizations):
        rng = np.random.default_rng(_derive_seed(seed, r, 0))
        state = psi0.copy()
        for step in range(n_steps):
            state = run_circuit(step_circuit, state)
            state = depolarize(state, noise_p, rng)
            counts = sample(state, shots_per_realization,
                            _derive_seed(seed, r, step + 1))
            for idx, c in counts.counts.items():
                pooled[step][idx] = pooled[step].get(idx, 0) + c
    values = []
    for step in range(n_steps):
        counts = ShotCounts(psi0.n_qubits,
                            shots_per_realization * n_realizations, pooled[step])
        values.append(_variance_from_counts(counts, ops))
    times = times if times is not None else [float(k + 1) for k in range(n_steps)]
    return Trajectory(times, values,
                      metadata={"noise_p": noise_p,
                                "n_realizations": n_realizations,
                                "shots": shots_per_realization})


def _derive_seed(*parts: int) -> int:
    """Deterministic child seed from a tuple of integers."""
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])
