"""Initial Mott-insulator state: one polariton |n,-> per cavity.

The mixing angle follows tan(theta_n) = 2 g sqrt(n) / Delta with
Delta = |omega0 - omega| (the detuning only enters through its magnitude).
The per-cavity amplitudes put cos(theta/2) on |g> (x) |n photons> and
-sin(theta/2) on |e> (x) |n-1 photons>, i.e. for n = 1 the qubit states
|001> and |100>.  This is the standard lower-polariton assignment: at
large detuning the photon branch survives (the lattice then shows the
hopping-driven overlap collapse), at resonance the two branches mix with
equal weight, and theta itself is the single parametrized rotation angle
of the preparation circuit.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import atan, cos, sin, sqrt, pi

from .sim import Circuit, Cnot, Rotation, Statevector, run_circuit

ATOM, PHOTON_MSB, PHOTON_LSB = 0, 1, 2


def theta_from_detuning(g: float, n: int, delta: float) -> float:
    """Polariton mixing angle theta = atan(2 g sqrt(n) / Delta), in (0, pi/2)."""
    if delta <= 0:
        raise ValueError("delta must be positive; pass |omega0 - omega|")
    if g <= 0:
        raise ValueError("g must be positive")
    if n < 1:
        raise ValueError("n must be >= 1")
    return atan(2 * g * sqrt(n) / delta)


@dataclass(frozen=True)
class CavityInit:
    """Initial photons per cavity and the polariton mixing angle."""

    theta: float
    n: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.theta <= pi / 2:
            raise ValueError("theta must lie in [0, pi/2]")
        if self.n < 1:
            raise ValueError("n must be >= 1")

    @property
    def amplitudes(self) -> tuple[float, float]:
        """(photon-branch, atom-branch) amplitudes (cos(theta/2), -sin(theta/2))."""
        return cos(self.theta / 2), -sin(self.theta / 2)


def cavity_state_amplitudes(init: CavityInit) -> dict[int, float]:
    """Amplitude map over the 3-qubit cavity basis [atom, MSB, LSB].

    cos(theta/2) on |g>|n> (index n) and -sin(theta/2) on |e>|n-1>
    (index 4 + n - 1); all other amplitudes vanish.
    """
    if init.n > 3:
        raise ValueError("photon register holds at most 3 photons")
    c, s = init.amplitudes
    return {init.n: c, (1 << 2) | (init.n - 1): s}


def cavity_statevector(init: CavityInit) -> Statevector:
    return Statevector.from_amplitudes(3, cavity_state_amplitudes(init))


def mott_state(theta: float, L: int, n: int = 1) -> Statevector:
    """Direct amplitude construction of the L-cavity product state."""
    import numpy as np

    cav = cavity_statevector(CavityInit(theta, n)).amplitudes
    amps = cav
    for _ in range(L - 1):
        amps = np.kron(amps, cav)
    return Statevector(3 * L, amps)


def cavity_circuit(theta: float) -> Circuit:
    """Givens-style 3-qubit block: |000> -> cos(t/2)|001> - sin(t/2)|100>.

    RY(theta) splits the atom qubit, the CNOT copies the excitation onto
    the photon LSB and the RY(pi) flip completes the basis permutation that
    swaps the rotation's |000> branch onto |001> (RY avoids the global
    phase an X gate would introduce).
    """
    circuit = Circuit(3)
    circuit.append(Rotation("y", theta, ATOM))
    circuit.append(Cnot(ATOM, PHOTON_LSB))
    circuit.append(Rotation("y", pi, PHOTON_LSB))
    return circuit


def init_circuit(theta: float, L: int) -> Circuit:
    """Identical per-cavity blocks on qubits [3i, 3i+1, 3i+2]."""
    if L < 1:
        raise ValueError("L must be >= 1")
    block = cavity_circuit(theta)
    out = Circuit(3 * L)
    for i in range(L):
        out.extend(block.shifted(3 * i, 3 * L).gates)
    return out


def prepared_state(theta: float, L: int) -> Statevector:
    return run_circuit(init_circuit(theta, L), Statevector.zero(3 * L))
