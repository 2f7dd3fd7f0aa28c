"""Rabi, Jaynes-Cummings and Jaynes-Cummings-Hubbard qubit Hamiltonians.

Register layout: cavity i occupies qubits [3i, 3i+1, 3i+2] ordered as
[atom, photon MSB, photon LSB].  The excited atomic state is the qubit
state |1>, so the atomic gap term reads (omega0/2)(I - Z) and the
per-cavity excitation number is 2 - 0.5 Z_a - Z_m - 0.5 Z_l.

The atomic ladder operators carry no 1/2: raising is X - iY (it maps the
ground |0> to the excited |1>), and the interaction
(g/2)(raise * b + lower * b+) expands to (g/2)[X (b + b+) + Y i(b+ - b)].
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bosons import binary_create
from .pauli import PauliSum

PHOTON_QUBITS = 2  # per cavity: allows up to 3 photons


@dataclass(frozen=True)
class CavityParams:
    """Single-cavity energies and couplings, atomic units."""

    omega: float = 1.0    # field frequency
    omega0: float = 1.0   # atomic gap
    g: float = 0.1        # atom-field coupling
    J: float = 0.1        # photon hopping

    def __post_init__(self) -> None:
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.g < 0 or self.J < 0:
            raise ValueError("couplings must be nonnegative")

    @property
    def detuning(self) -> float:
        return self.omega0 - self.omega

    @classmethod
    def with_detuning(cls, delta: float, omega: float = 1.0,
                      g: float = 0.1, J: float = 0.1) -> "CavityParams":
        return cls(omega=omega, omega0=omega + delta, g=g, J=J)


def chain_adjacency(L: int) -> np.ndarray:
    adj = np.zeros((L, L), dtype=int)
    for i in range(L - 1):
        adj[i, i + 1] = adj[i + 1, i] = 1
    return adj


@dataclass(frozen=True)
class LatticeSpec:
    """Cavity count and hopping graph; defaults to an open chain."""

    L: int = 2
    adjacency: np.ndarray = None
    photon_qubits_per_cavity: int = PHOTON_QUBITS

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError("L must be >= 1")
        adj = self.adjacency if self.adjacency is not None else chain_adjacency(self.L)
        adj = np.asarray(adj, dtype=int)
        if adj.shape != (self.L, self.L):
            raise ValueError("adjacency must be L x L")
        if np.any(adj != adj.T) or np.any(np.diag(adj) != 0):
            raise ValueError("adjacency must be symmetric with zero diagonal")
        if not set(np.unique(adj)) <= {0, 1}:
            raise ValueError("adjacency entries must be 0 or 1")
        object.__setattr__(self, "adjacency", adj)

    @property
    def qubits_per_cavity(self) -> int:
        return 1 + self.photon_qubits_per_cavity

    @property
    def n_qubits(self) -> int:
        return self.L * self.qubits_per_cavity

    def cavity_qubits(self, i: int) -> tuple[int, ...]:
        base = i * self.qubits_per_cavity
        return tuple(range(base, base + self.qubits_per_cavity))


def photon_number_sum(n_qubits: int) -> PauliSum:
    """Binary-encoded number operator: sum_j 2^(k-1-j) (I - Z_j)/2."""
    terms = {"I" * n_qubits: (2 ** n_qubits - 1) / 2.0}
    for q in range(n_qubits):
        axes = ["I"] * n_qubits
        axes[q] = "Z"
        terms["".join(axes)] = -(2 ** (n_qubits - 1 - q)) / 2.0
    return PauliSum(n_qubits, terms)


def _quadratures(n_photon_qubits: int) -> tuple[PauliSum, PauliSum]:
    """Hermitian combinations q = b + b+ and r = i(b+ - b)."""
    bdag = binary_create(n_photon_qubits)
    b = bdag.dagger()
    return b + bdag, (bdag - b) * 1j


def _jc_terms(p: CavityParams, n_photon_qubits: int, atom: int,
              photons: tuple[int, ...], n_total: int) -> PauliSum:
    """One cavity's JC pieces embedded into the full register."""
    number = photon_number_sum(n_photon_qubits).embed(photons, n_total)
    gap = PauliSum(n_total, {"I" * n_total: p.omega0 / 2}) + \
        PauliSum(n_total, {_z_at(atom, n_total): -p.omega0 / 2})
    q, r = _quadratures(n_photon_qubits)
    coupling = _axis_at("X", atom, n_total) * q.embed(photons, n_total) + \
        _axis_at("Y", atom, n_total) * r.embed(photons, n_total)
    return number * p.omega + gap + coupling * (p.g / 2)


def _z_at(q: int, n: int) -> str:
    axes = ["I"] * n
    axes[q] = "Z"
    return "".join(axes)


def _axis_at(axis: str, q: int, n: int) -> PauliSum:
    axes = ["I"] * n
    axes[q] = axis
    return PauliSum(n, {"".join(axes): 1.0})


def build_rabi(p: CavityParams, n_max: int = 3) -> PauliSum:
    """omega b+b + (omega0/4) sig+ sig- + g X (b + b+), atom on qubit 0.

    With the unhalved ladder operators, sig+ sig- equals 2(I - Z) on the
    atom qubit, so the gap term is (omega0/2)(I - Z).
    """
    n_ph = _photon_qubits_for(n_max)
    n = 1 + n_ph
    photons = tuple(range(1, n))
    number = photon_number_sum(n_ph).embed(photons, n)
    gap = PauliSum(n, {"I" * n: p.omega0 / 2, _z_at(0, n): -p.omega0 / 2})
    q, _ = _quadratures(n_ph)
    interaction = _axis_at("X", 0, n) * q.embed(photons, n)
    return number * p.omega + gap + interaction * p.g


def build_jc(p: CavityParams, n_max: int = 3) -> PauliSum:
    """omega b+b + (omega0/4) sig+ sig- + (g/2)(sig+ b + sig- b+)."""
    n_ph = _photon_qubits_for(n_max)
    n = 1 + n_ph
    return _jc_terms(p, n_ph, 0, tuple(range(1, n)), n)


def _photon_qubits_for(n_max: int) -> int:
    n_ph = int(np.log2(n_max + 1))
    if 2 ** n_ph - 1 != n_max:
        raise ValueError("n_max must be 2^k - 1 for the binary encoding")
    return n_ph


def build_jch(p: CavityParams, lattice: LatticeSpec = LatticeSpec()) -> PauliSum:
    """Sum of per-cavity JC terms minus J * sum_<ij> A_ij (b_i+ b_j + b_i b_j+).

    For L = 2 with two photon qubits per cavity the canonicalized sum has
    exactly 55 Pauli strings of maximum weight 4.
    """
    n = lattice.n_qubits
    n_ph = lattice.photon_qubits_per_cavity
    H = PauliSum(n)
    for i in range(lattice.L):
        qubits = lattice.cavity_qubits(i)
        H = H + _jc_terms(p, n_ph, qubits[0], qubits[1:], n)
    bdag = binary_create(n_ph)
    b = bdag.dagger()
    for i in range(lattice.L):
        for j in range(i + 1, lattice.L):
            if not lattice.adjacency[i, j]:
                continue
            pi = lattice.cavity_qubits(i)[1:]
            pj = lattice.cavity_qubits(j)[1:]
            bdi, bi = bdag.embed(pi, n), b.embed(pi, n)
            bdj, bj = bdag.embed(pj, n), b.embed(pj, n)
            H = H + (bdi * bj + bi * bdj) * (-p.J)
    return H
