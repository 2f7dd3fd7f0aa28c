"""Truncated boson operators and their qubit encodings.

Three encodings are provided:

* one-to-one (unary): one qubit per Fock level, the occupied level carries
  the set bit;
* binary: Fock level m stored as the bit pattern of m, first photon qubit
  most significant;
* inverse Holstein-Primakoff: bosonic ladder operators expressed through
  higher-spin operators, b+ = S+ (S*I - S_z)^(-1/2), with the square root
  handled exactly by a Newton (forward-difference) polynomial in the number
  operator.

Ordering conventions.  The canonical truncated operators are "ascending":
the number operator is diag(0..n_max).  Spin matrices use the conventional
descending-m basis, so the raw HP operators come out with descending
occupation numbers (the number operator is diag(2S..0)).  Conjugating by
the index-reversal permutation - a sigma_x on every qubit when the
dimension is a power of two - converts raw HP matrices to the canonical
ordering; both forms are exposed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np

from .pauli import PauliSum, decompose


@dataclass(frozen=True)
class BosonOps:
    """Creation/annihilation/number matrices truncated at n_max photons."""

    n_max: int
    create: np.ndarray
    annihilate: np.ndarray
    number: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_max + 1


@dataclass(frozen=True)
class SpinOps:
    """Spin-S matrices in the descending-m basis (sz = diag(S, ..., -S))."""

    S: float
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray

    @property
    def dim(self) -> int:
        return int(round(2 * self.S)) + 1


def _check_spin(S: float) -> int:
    two_s = int(round(2 * S))
    if two_s < 1 or abs(2 * S - two_s) > 1e-12:
        raise ValueError(f"invalid spin {S}: 2S must be a positive integer")
    return two_s


def boson_ops(n_max: int) -> BosonOps:
    """Canonical ascending-ordered truncated boson operators."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    dim = n_max + 1
    create = np.zeros((dim, dim), dtype=complex)
    for m in range(n_max):
        create[m + 1, m] = sqrt(m + 1)
    annihilate = create.conj().T
    return BosonOps(n_max, create, annihilate, create @ annihilate)


def spin_ops(S: float) -> SpinOps:
    """Standard spin matrices, <m+-1|S+-|m> = sqrt(S(S+1) - m(m+-1))."""
    two_s = _check_spin(S)
    dim = two_s + 1
    m_values = S - np.arange(dim)  # descending: S, S-1, ..., -S
    sz = np.diag(m_values).astype(complex)
    s_plus = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        m = m_values[i]
        s_plus[i - 1, i] = sqrt(S * (S + 1) - m * (m + 1))
    s_minus = s_plus.conj().T
    sx = (s_plus + s_minus) / 2
    sy = (s_plus - s_minus) / 2j
    return SpinOps(S, sx, sy, sz, s_plus, s_minus)


def one_to_one_create(n_max: int) -> PauliSum:
    """Unary-encoded creation operator on n_max + 1 qubits.

    Fock level m is the basis state with qubit m set and all others clear.
    Each step m -> m+1 clears qubit m and sets qubit m+1:
    b+ = sum_i sqrt(i+1) * (1/4)(X_i + iY_i)(X_{i+1} - iY_{i+1}).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = n_max + 1
    terms: dict[str, complex] = {}
    # (X + iY)/2 clears a set bit; (X - iY)/2 sets a cleared bit
    pair = {("X", "X"): 1.0, ("X", "Y"): -1j, ("Y", "X"): 1j, ("Y", "Y"): 1.0}
    for i in range(n_max):
        for (a, b), phase in pair.items():
            axes = ["I"] * n
            axes[i], axes[i + 1] = a, b
            key = "".join(axes)
            terms[key] = terms.get(key, 0.0) + sqrt(i + 1) * phase / 4
    return PauliSum(n, terms)


def unary_index(m: int, n_max: int) -> int:
    """Basis index of the unary-encoded Fock level m (qubit 0 = MSB)."""
    if not 0 <= m <= n_max:
        raise ValueError(f"level {m} outside 0..{n_max}")
    return 1 << (n_max - m)


def unary_subspace_matrix(op: PauliSum, n_max: int) -> np.ndarray:
    """Restriction of a unary-register operator to the encoded Fock subspace."""
    full = op.matrix()
    idx = [unary_index(m, n_max) for m in range(n_max + 1)]
    return full[np.ix_(idx, idx)]


def binary_create(n_qubits: int) -> PauliSum:
    """Binary-encoded creation operator on n_qubits qubits (n_max = 2^n - 1).

    Obtained by trace decomposition of the truncated matrix; for 2 qubits
    this reproduces the closed three-term form
    (1/4)(I+Z)(x)sig- + (sqrt2/4) sig-(x)sig+ + (sqrt3/4)(I-Z)(x)sig-
    with sig+- = X +- iY.
    """
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    ops = boson_ops(2 ** n_qubits - 1)
    return decompose(ops.create, n_qubits)


@dataclass(frozen=True)
class NewtonSeries:
    """Polynomial p with p(n) = sqrt(1 - n/(2S)) at every integer n in [0, 2S].

    ``coeffs[j]`` multiplies the j-th power of the number operator.  The
    polynomial is the Newton forward-difference interpolant
    sum_k (Delta^k f)(0) * C(n, k), expanded into monomials; it is exact at
    all 2S + 1 nodes, unlike a truncated Taylor series of the square root.
    """

    S: float
    coeffs: np.ndarray

    def __call__(self, n: float) -> float:
        return float(np.polyval(self.coeffs[::-1], n))

    def diagonal(self, n_levels: int | None = None) -> np.ndarray:
        two_s = int(round(2 * self.S))
        n_levels = n_levels or two_s + 1
        return np.array([self(n) for n in range(n_levels)])


def newton_series(S: float) -> NewtonSeries:
    two_s = _check_spin(S)
    mono = np.zeros(two_s + 1)
    for k in range(two_s + 1):
        delta = sum((-1) ** (k - l) * sqrt(1 - l / two_s) * comb(k, l)
                    for l in range(k + 1))
        # expand the falling factorial n(n-1)...(n-k+1) into monomials
        ff = np.zeros(k + 1)
        ff[0] = 1.0
        for j in range(k):
            shifted = np.zeros(len(ff) + 1)
            shifted[1:] = ff
            shifted[:-1] -= j * ff
            ff = shifted[:k + 1]
        mono[:k + 1] += delta / factorial(k) * ff
    return NewtonSeries(S, mono)


def _reversal(dim: int) -> np.ndarray:
    return np.eye(dim)[::-1]


def _pad_pow2(op: np.ndarray) -> tuple[np.ndarray, int]:
    dim = op.shape[0]
    n_qubits = max(1, int(np.ceil(np.log2(dim))))
    full = 1 << n_qubits
    if full == dim:
        return op, n_qubits
    out = np.zeros((full, full), dtype=complex)
    out[:dim, :dim] = op
    return out, n_qubits


@dataclass(frozen=True)
class HpCreate:
    """Holstein-Primakoff creation operator in both orderings.

    ``dense_raw`` keeps the spin (descending-number) basis, e.g. for S = 3/2
    the superdiagonal reads sqrt3, sqrt2, 1.  ``dense`` is conjugated to the
    canonical ascending ordering and equals the truncated boson matrix.
    The Pauli forms realize each dense form on ceil(log2(2S+1)) qubits.
    """

    S: float
    dense_raw: np.ndarray
    dense: np.ndarray
    pauli_raw: PauliSum
    pauli: PauliSum


def hp_number(S: float, reorder: bool = False) -> np.ndarray:
    """Number operator S*I + S_z: diag(2S..0) raw, diag(0..2S) reordered."""
    two_s = _check_spin(S)
    raw = S * np.eye(two_s + 1) + spin_ops(S).sz
    if not reorder:
        return raw.astype(complex)
    rev = _reversal(two_s + 1)
    return (rev @ raw @ rev).astype(complex)


def hp_sqrt_inverse_diagonal(S: float) -> np.ndarray:
    """Pseudo-inverse of sqrt(S*I - S_z) = sqrt(2S) * h(number), raw ordering.

    The n = 2S level has a vanishing square root; its inverse entry is set
    to zero, which is unobservable because S+ annihilates the top state.
    """
    two_s = _check_spin(S)
    series = newton_series(S)
    number_diag = np.diag(hp_number(S)).real  # 2S, 2S-1, ..., 0
    vals = sqrt(two_s) * series.diagonal(two_s + 1)[number_diag.astype(int)]
    inv = np.where(np.abs(vals) > 1e-12, 1.0 / np.where(vals == 0, 1.0, vals), 0.0)
    return np.diag(inv).astype(complex)


def hp_create(S: float) -> HpCreate:
    two_s = _check_spin(S)
    sp = spin_ops(S).s_plus
    dense_raw = sp @ hp_sqrt_inverse_diagonal(S)
    rev = _reversal(two_s + 1)
    dense = rev @ dense_raw @ rev
    raw_padded, n_qubits = _pad_pow2(dense_raw)
    canon_padded, _ = _pad_pow2(dense)
    return HpCreate(S, dense_raw, dense,
                    decompose(raw_padded, n_qubits),
                    decompose(canon_padded, n_qubits))


def spin32_pauli() -> dict[str, PauliSum]:
    """Exact two-qubit Pauli realizations of the spin-3/2 operators.

    Returns doubled Cartesian components and the raw (descending) creation
    operator:
      2Sx = sqrt3 I(x)X + X(x)X + Y(x)Y
      2Sy = sqrt3 I(x)Y + Y(x)X - X(x)Y
      2Sz = 2 Z(x)I + I(x)Z
      b+  = (sqrt1/4)(I-Z)(x)sig+ + (sqrt2/4) sig+(x)sig- + (sqrt3/4)(I+Z)(x)sig+
    with sig+- = X +- iY.
    """
    s3 = sqrt(3)
    s2 = sqrt(2)
    sx2 = PauliSum(2, {"IX": s3, "XX": 1.0, "YY": 1.0})
    sy2 = PauliSum(2, {"IY": s3, "YX": 1.0, "XY": -1.0})
    sz2 = PauliSum(2, {"ZI": 2.0, "IZ": 1.0})
    # expand the sigma+- products into pure strings
    create = PauliSum(2, {
        # (1/4)(I - Z)(x)(X + iY)
        "IX": 0.25, "IY": 0.25j, "ZX": -0.25, "ZY": -0.25j,
        # (sqrt2/4)(X + iY)(x)(X - iY)
        "XX": s2 / 4, "XY": -1j * s2 / 4, "YX": 1j * s2 / 4, "YY": s2 / 4,
    }) + PauliSum(2, {
        # (sqrt3/4)(I + Z)(x)(X + iY)
        "IX": s3 / 4, "IY": 1j * s3 / 4, "ZX": s3 / 4, "ZY": 1j * s3 / 4,
    })
    return {"sx2": sx2, "sy2": sy2, "sz2": sz2, "create": create}
