"""Dense statevector simulator.

Gates are single-qubit rotations, CNOTs, and Pauli-string exponentials.
Pauli exponentials act directly on the amplitudes via
exp(-i theta P) psi = cos(theta) psi - i sin(theta) P psi, which is exact;
a gate-level CNOT-ladder decomposition for resource counting lives in
``evolve``.  Sampling uses numpy's PCG64 generator, so shot counts are
reproducible across platforms for a fixed seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .pauli import PauliSum, PauliTerm, WidthMismatchError

NORM_TOL = 1e-10


class NumericalError(RuntimeError):
    """Norm drifted beyond tolerance; the simulation is unreliable."""


@dataclass
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ValueError("amplitude vector length must be 2**n_qubits")

    @classmethod
    def zero(cls, n_qubits: int) -> "Statevector":
        amps = np.zeros(1 << n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, n_qubits: int, amps: dict[int, complex] | np.ndarray,
                        normalize: bool = False) -> "Statevector":
        vec = np.zeros(1 << n_qubits, dtype=complex)
        if isinstance(amps, dict):
            for idx, a in amps.items():
                vec[idx] = a
        else:
            vec[:] = amps
        if normalize:
            vec = vec / np.linalg.norm(vec)
        sv = cls(n_qubits, vec)
        sv.check_norm()
        return sv

    def check_norm(self, tol: float = NORM_TOL) -> None:
        drift = abs(np.linalg.norm(self.amplitudes) - 1.0)
        if drift > tol:
            raise NumericalError(f"norm drift {drift:.3e} exceeds {tol:.1e}")

    def copy(self) -> "Statevector":
        return Statevector(self.n_qubits, self.amplitudes.copy())

    def overlap(self, other: "Statevector") -> complex:
        if other.n_qubits != self.n_qubits:
            raise WidthMismatchError("statevector widths differ")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def probabilities(self) -> np.ndarray:
        p = np.abs(self.amplitudes) ** 2
        p = np.clip(p, 0.0, None)
        return p / p.sum()


@dataclass(frozen=True)
class Rotation:
    """exp(-i angle/2 * sigma_axis) on one qubit."""

    axis: str  # 'x', 'y' or 'z'
    angle: float
    qubit: int

    def inverse(self) -> "Rotation":
        return Rotation(self.axis, -self.angle, self.qubit)


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int

    def inverse(self) -> "Cnot":
        return self


@dataclass(frozen=True)
class PauliExp:
    """exp(-i angle * P) for a unit-coefficient Pauli string."""

    axes: str
    angle: float

    def inverse(self) -> "PauliExp":
        return PauliExp(self.axes, -self.angle)


Gate = Union[Rotation, Cnot, PauliExp]


@dataclass
class Circuit:
    n_qubits: int
    gates: list = field(default_factory=list)

    def __post_init__(self) -> None:
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        if isinstance(gate, Rotation):
            if gate.axis not in "xyz":
                raise ValueError(f"unknown rotation axis {gate.axis!r}")
            if not 0 <= gate.qubit < self.n_qubits:
                raise ValueError("rotation target out of range")
        elif isinstance(gate, Cnot):
            if not (0 <= gate.control < self.n_qubits
                    and 0 <= gate.target < self.n_qubits):
                raise ValueError("cnot qubit out of range")
            if gate.control == gate.target:
                raise ValueError("cnot control equals target")
        elif isinstance(gate, PauliExp):
            if len(gate.axes) != self.n_qubits:
                raise WidthMismatchError("pauli exponential width mismatch")
        else:
            raise TypeError(f"unknown gate {gate!r}")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, [g.inverse() for g in reversed(self.gates)])

    def shifted(self, offset: int, n_total: int) -> "Circuit":
        """Same circuit acting on qubits offset..offset+n-1 of a wider register."""
        out = Circuit(n_total)
        for g in self.gates:
            if isinstance(g, Rotation):
                out.append(Rotation(g.axis, g.angle, g.qubit + offset))
            elif isinstance(g, Cnot):
                out.append(Cnot(g.control + offset, g.target + offset))
            else:
                axes = "I" * offset + g.axes + "I" * (n_total - offset - len(g.axes))
                out.append(PauliExp(axes, g.angle))
        return out

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise WidthMismatchError("circuit widths differ")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def __len__(self) -> int:
        return len(self.gates)


def _rotation_matrix(axis: str, angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    if axis == "x":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if axis == "y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    return np.array([[c - 1j * s, 0], [0, c + 1j * s]], dtype=complex)


def apply_rotation(state: Statevector, gate: Rotation) -> Statevector:
    n = state.n_qubits
    u = _rotation_matrix(gate.axis, gate.angle)
    left = 1 << gate.qubit
    right = 1 << (n - 1 - gate.qubit)
    psi = state.amplitudes.reshape(left, 2, right)
    out = np.einsum("ab,ibj->iaj", u, psi)
    return Statevector(n, np.ascontiguousarray(out).reshape(-1))


def apply_cnot(state: Statevector, gate: Cnot) -> Statevector:
    n = state.n_qubits
    cbit = 1 << (n - 1 - gate.control)
    tbit = 1 << (n - 1 - gate.target)
    idx = np.arange(1 << n)
    flip = np.where((idx & cbit).astype(bool), idx ^ tbit, idx)
    out = np.empty_like(state.amplitudes)
    out[flip] = state.amplitudes
    return Statevector(n, out)


def apply_pauli_term(state: Statevector, term: PauliTerm) -> Statevector:
    """P|psi> including the term's coefficient."""
    mask, phase = term.action(state.n_qubits)
    out = np.empty_like(state.amplitudes)
    idx = np.arange(len(out))
    out[idx ^ mask] = phase * state.amplitudes
    return Statevector(state.n_qubits, out)


def apply_pauli_exp(state: Statevector, term: PauliTerm | str, theta: float) -> Statevector:
    """exp(-i theta P)|psi> for a unit-coefficient Pauli string P."""
    if isinstance(term, str):
        term = PauliTerm(term)
    if abs(term.coeff - 1.0) > 1e-12:
        raise ValueError("pauli exponential expects a unit coefficient; "
                         "fold the weight into the angle")
    if term.n_qubits != state.n_qubits:
        raise WidthMismatchError("pauli exponential width mismatch")
    if term.is_identity:
        return Statevector(state.n_qubits,
                           np.exp(-1j * theta) * state.amplitudes)
    rotated = apply_pauli_term(state, term)
    amps = np.cos(theta) * state.amplitudes - 1j * np.sin(theta) * rotated.amplitudes
    return Statevector(state.n_qubits, amps)


def run_circuit(circuit: Circuit, initial: Statevector) -> Statevector:
    if circuit.n_qubits != initial.n_qubits:
        raise WidthMismatchError("circuit and state widths differ")
    state = initial
    for gate in circuit.gates:
        if isinstance(gate, Rotation):
            state = apply_rotation(state, gate)
        elif isinstance(gate, Cnot):
            state = apply_cnot(state, gate)
        elif isinstance(gate, PauliExp):
            state = apply_pauli_exp(state, PauliTerm(gate.axes), gate.angle)
        else:
            raise TypeError(f"unknown gate {gate!r}")
    return state


def expectation(state: Statevector, op: PauliSum) -> float:
    """<psi|op|psi> for a Hermitian operator."""
    if not op.is_hermitian:
        raise ValueError("expectation requires a Hermitian operator")
    total = 0.0 + 0j
    for term in op.terms():
        total += state.overlap(apply_pauli_term(state, term))
    if abs(total.imag) > 1e-10:
        raise NumericalError(f"imaginary expectation {total.imag:.3e}")
    return float(total.real)


@dataclass
class ShotCounts:
    n_qubits: int
    shots: int
    counts: dict[int, int]

    def frequency(self, index: int) -> float:
        return self.counts.get(index, 0) / self.shots

    def bitstrings(self) -> dict[str, int]:
        return {format(k, f"0{self.n_qubits}b"): v for k, v in self.counts.items()}


def sample(state: Statevector, shots: int, seed: int) -> ShotCounts:
    """Multinomial Z-basis sampling; deterministic for a fixed seed (PCG64)."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, state.probabilities())
    nz = np.nonzero(draws)[0]
    return ShotCounts(state.n_qubits, shots, {int(i): int(draws[i]) for i in nz})


def estimate_z_observable(counts: ShotCounts, op: PauliSum) -> float:
    """Shot average of an I/Z-only observable evaluated on the counts."""
    n = counts.n_qubits
    total = 0.0
    for axes, coeff in op.items():
        if any(c in "XY" for c in axes):
            raise ValueError("observable must contain only I and Z axes")
        if abs(coeff.imag) > 1e-10:
            raise ValueError("observable must be Hermitian")
        zmask = 0
        for q, c in enumerate(axes):
            if c == "Z":
                zmask |= 1 << (n - 1 - q)
        acc = 0
        for index, count in counts.counts.items():
            parity = bin(index & zmask).count("1") & 1
            acc += count * (1 - 2 * parity)
        total += coeff.real * acc / counts.shots
    return total
