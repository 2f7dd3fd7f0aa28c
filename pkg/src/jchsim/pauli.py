"""Pauli-string algebra on a fixed-width qubit register.

Operators are stored as weighted tensor products of single-qubit Paulis
("axes strings" over I/X/Y/Z).  All phases live in the coefficients; the
axes string itself is sign-free.  Basis convention used throughout the
package: qubit 0 is the most significant bit of the computational-basis
index, so the 6-qubit ket |100100> has index 0b100100.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

AXES = "IXYZ"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# (a, b) -> (phase, axis) with a*b = phase * axis
_SINGLE_PRODUCT = {
    ("X", "Y"): (1j, "Z"), ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"), ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"), ("X", "Z"): (-1j, "Y"),
}

DEFAULT_TOL = 1e-12


class WidthMismatchError(ValueError):
    """Raised when operands act on registers of different widths."""


def _check_axes(axes: str) -> None:
    if not axes or any(c not in AXES for c in axes):
        raise ValueError(f"invalid axes string {axes!r}")


@dataclass(frozen=True)
class PauliTerm:
    """A single weighted Pauli string, e.g. 0.5 * X on qubit 0 of 2 (axes 'XI')."""

    axes: str
    coeff: complex = 1.0

    def __post_init__(self) -> None:
        _check_axes(self.axes)
        if not np.isfinite(complex(self.coeff)):
            raise ValueError("non-finite coefficient")

    @property
    def n_qubits(self) -> int:
        return len(self.axes)

    @property
    def weight(self) -> int:
        return sum(c != "I" for c in self.axes)

    @property
    def is_identity(self) -> bool:
        return self.weight == 0

    @property
    def is_diagonal(self) -> bool:
        return all(c in "IZ" for c in self.axes)

    def __mul__(self, other: "PauliTerm") -> "PauliTerm":
        if len(self.axes) != len(other.axes):
            raise WidthMismatchError(
                f"widths {len(self.axes)} and {len(other.axes)} differ")
        phase = 1.0 + 0j
        out = []
        for a, b in zip(self.axes, other.axes):
            if a == "I":
                out.append(b)
            elif b == "I":
                out.append(a)
            elif a == b:
                out.append("I")
            else:
                p, c = _SINGLE_PRODUCT[(a, b)]
                phase *= p
                out.append(c)
        return PauliTerm("".join(out), phase * self.coeff * other.coeff)

    def action(self, n_qubits: int) -> tuple[int, np.ndarray]:
        """Sparse action on basis states: P|j> = phase[j] |j ^ flip_mask>.

        Returns (flip_mask, phase vector of length 2**n_qubits).  The term's
        coefficient is folded into the phases.
        """
        if len(self.axes) > n_qubits:
            raise WidthMismatchError(
                f"axes width {len(self.axes)} exceeds register {n_qubits}")
        dim = 1 << n_qubits
        idx = np.arange(dim)
        mask = 0
        phase = np.full(dim, self.coeff, dtype=complex)
        for q, c in enumerate(self.axes):
            bit = n_qubits - 1 - q
            if c == "X":
                mask |= 1 << bit
            elif c == "Y":
                mask |= 1 << bit
                phase = phase * (1j * (1 - 2.0 * ((idx >> bit) & 1)))
            elif c == "Z":
                phase = phase * (1 - 2.0 * ((idx >> bit) & 1))
        return mask, phase

    def matrix(self, n_qubits: int | None = None) -> np.ndarray:
        return matrix_of(self, n_qubits or self.n_qubits)

    def __repr__(self) -> str:
        return f"PauliTerm({self.axes!r}, {self.coeff!r})"


class PauliSum:
    """Canonicalized linear combination of Pauli strings of one width.

    Duplicate axes are merged and terms with |coeff| below ``tol`` dropped at
    construction, so two sums built from the same operator compare equal
    term-by-term.  Instances are immutable; arithmetic returns new sums.
    """

    __slots__ = ("n_qubits", "_terms")

    def __init__(self, n_qubits: int,
                 terms: Mapping[str, complex] | Iterable[tuple[str, complex]] = (),
                 tol: float = DEFAULT_TOL):
        self.n_qubits = int(n_qubits)
        acc: dict[str, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for axes, coeff in items:
            _check_axes(axes)
            if len(axes) != self.n_qubits:
                raise WidthMismatchError(
                    f"axes {axes!r} does not match width {self.n_qubits}")
            acc[axes] = acc.get(axes, 0.0) + complex(coeff)
        self._terms = {a: c for a, c in sorted(acc.items()) if abs(c) > tol}

    @classmethod
    def from_terms(cls, terms: Iterable[PauliTerm], n_qubits: int | None = None) -> "PauliSum":
        terms = list(terms)
        if n_qubits is None:
            if not terms:
                raise ValueError("cannot infer width from no terms")
            n_qubits = terms[0].n_qubits
        return cls(n_qubits, [(t.axes, t.coeff) for t in terms])

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {"I" * n_qubits: coeff})

    def items(self) -> Iterator[tuple[str, complex]]:
        return iter(self._terms.items())

    def terms(self) -> list[PauliTerm]:
        return [PauliTerm(a, c) for a, c in self._terms.items()]

    def coefficient(self, axes: str) -> complex:
        return self._terms.get(axes, 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self.terms())

    @property
    def max_weight(self) -> int:
        return max((sum(c != "I" for c in a) for a in self._terms), default=0)

    @property
    def is_hermitian(self) -> bool:
        return all(abs(c.imag) <= 1e-10 * max(1.0, abs(c)) for c in self._terms.values())

    def _binary(self, other: "PauliSum") -> None:
        if not isinstance(other, PauliSum):
            raise TypeError(f"expected PauliSum, got {type(other)}")
        if other.n_qubits != self.n_qubits:
            raise WidthMismatchError(
                f"widths {self.n_qubits} and {other.n_qubits} differ")

    def __add__(self, other: "PauliSum") -> "PauliSum":
        self._binary(other)
        merged = dict(self._terms)
        for a, c in other._terms.items():
            merged[a] = merged.get(a, 0.0) + c
        return PauliSum(self.n_qubits, merged)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (other * -1.0)

    def __mul__(self, other):
        if np.isscalar(other):
            return PauliSum(self.n_qubits,
                            {a: c * other for a, c in self._terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def dagger(self) -> "PauliSum":
        return PauliSum(self.n_qubits,
                        {a: np.conj(c) for a, c in self._terms.items()})

    def embed(self, positions: Iterable[int], n_total: int) -> "PauliSum":
        """Place this sum's qubits at the given register positions, I elsewhere."""
        positions = list(positions)
        if len(positions) != self.n_qubits:
            raise WidthMismatchError("position count does not match width")
        out = {}
        for axes, c in self._terms.items():
            full = ["I"] * n_total
            for p, a in zip(positions, axes):
                full[p] = a
            out["".join(full)] = c
        return PauliSum(n_total, out)

    def matrix(self) -> np.ndarray:
        return matrix_of(self, self.n_qubits)

    def to_text(self) -> str:
        """One term per line: 'coeff_re coeff_im AXES', canonical order."""
        lines = [f"{c.real:.17g} {c.imag:.17g} {a}" for a, c in self._terms.items()]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "PauliSum":
        terms = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            re_s, im_s, axes = line.split()
            terms.append((axes, complex(float(re_s), float(im_s))))
        if not terms:
            raise ValueError("no terms in text")
        return cls(len(terms[0][0]), terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PauliSum) and self.n_qubits == other.n_qubits
                and self._terms.keys() == other._terms.keys()
                and all(abs(self._terms[a] - other._terms[a]) <= 1e-12
                        for a in self._terms))

    def __repr__(self) -> str:
        return f"PauliSum({self.n_qubits}, {len(self)} terms)"


def matrix_of(op: PauliTerm | PauliSum, n_qubits: int) -> np.ndarray:
    """Dense Kronecker-product realization on ``n_qubits`` qubits.

    Axes shorter than the register are padded with identities on the right.
    """
    dim = 1 << n_qubits
    if isinstance(op, PauliTerm):
        if op.n_qubits > n_qubits:
            raise WidthMismatchError(
                f"axes width {op.n_qubits} exceeds register {n_qubits}")
        axes = op.axes + "I" * (n_qubits - op.n_qubits)
        out = np.array([[op.coeff]], dtype=complex)
        for c in axes:
            out = np.kron(out, PAULI_MATRICES[c])
        return out
    out = np.zeros((dim, dim), dtype=complex)
    for axes, coeff in op.items():
        mask, phase = PauliTerm(axes, coeff).action(n_qubits)
        idx = np.arange(dim)
        out[idx ^ mask, idx] += phase
    return out


def decompose(op: np.ndarray, n_qubits: int, tol: float = DEFAULT_TOL) -> PauliSum:
    """Expand a dense operator over the Pauli-string basis.

    Coefficients are C_l = Tr(P_l . op) / 2**n_qubits; strings with
    |C_l| < tol are dropped.  Exact (up to rounding) for any operator, since
    the 4**n strings form an orthogonal basis.
    """
    dim = 1 << n_qubits
    op = np.asarray(op, dtype=complex)
    if op.shape != (dim, dim):
        raise ValueError(f"operator shape {op.shape} is not ({dim}, {dim})")
    idx = np.arange(dim)
    terms = {}
    for combo in itertools.product(AXES, repeat=n_qubits):
        axes = "".join(combo)
        mask, phase = PauliTerm(axes).action(n_qubits)
        # Tr(P . op) = sum_j phase[j] * op[j, j ^ mask]
        coeff = np.dot(phase, op[idx, idx ^ mask]) / dim
        if abs(coeff) > tol:
            terms[axes] = coeff
    return PauliSum(n_qubits, terms, tol=tol)


def multiply(a: PauliSum, b: PauliSum) -> PauliSum:
    """Operator product, distributed term by term with Pauli phases."""
    if a.n_qubits != b.n_qubits:
        raise WidthMismatchError(f"widths {a.n_qubits} and {b.n_qubits} differ")
    acc: dict[str, complex] = {}
    for ta in a.terms():
        for tb in b.terms():
            t = ta * tb
            acc[t.axes] = acc.get(t.axes, 0.0) + t.coeff
    return PauliSum(a.n_qubits, acc)


def commutator_norm(a: PauliSum, b: PauliSum) -> float:
    """Max-abs entry of the dense commutator [a, b]."""
    comm = multiply(a, b) - multiply(b, a)
    if len(comm) == 0:
        return 0.0
    return float(np.max(np.abs(comm.matrix())))
