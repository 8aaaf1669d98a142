"""Single-mode Fock spaces, ladder operators and dense state arithmetic.

Every state is a :class:`Ket` and every operator a :class:`LinOp`; both carry
the space they live on so that mixing incompatible objects fails loudly
instead of silently broadcasting.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import scipy.linalg
from scipy.sparse.csgraph import connected_components


class Statistics(str, enum.Enum):
    BOSON = "boson"
    FERMION = "fermion"


def as_statistics(kind: str | Statistics) -> Statistics:
    try:
        return Statistics(kind)
    except ValueError:
        raise ValueError(f"unknown statistics {kind!r}; expected 'boson' or 'fermion'") from None


@dataclass(frozen=True)
class FockSpace:
    """One mode: fermions have two levels, bosons are cut off at ``dim - 1`` quanta."""

    kind: Statistics
    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"Fock space needs dim >= 2, got {self.dim}")
        if self.kind is Statistics.FERMION and self.dim != 2:
            raise ValueError("fermionic mode must have dim 2")

    @property
    def cutoff(self) -> int:
        return self.dim - 1

    @property
    def is_fermion(self) -> bool:
        return self.kind is Statistics.FERMION


def make_space(kind: str | Statistics, cutoff: int | None = None) -> FockSpace:
    """Return a single-mode space; ``cutoff`` is the maximal boson number and is ignored for fermions."""
    kind = as_statistics(kind)
    if kind is Statistics.FERMION:
        return FockSpace(kind, 2)
    if cutoff is None or int(cutoff) < 1:
        raise ValueError(f"boson cutoff must be >= 1, got {cutoff}")
    return FockSpace(kind, int(cutoff) + 1)


def _check_same(s1: Any, s2: Any) -> None:
    if s1 != s2:
        raise ValueError(f"space mismatch: {s1} vs {s2}")


@dataclass(frozen=True, eq=False)
class Ket:
    space: Any
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.shape[0] != self.space.dim:
            raise ValueError(f"ket of length {amps.shape} does not fit space of dim {self.space.dim}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("ket amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    def __add__(self, other: Ket) -> Ket:
        _check_same(self.space, other.space)
        return Ket(self.space, self.amps + other.amps)

    def __sub__(self, other: Ket) -> Ket:
        _check_same(self.space, other.space)
        return Ket(self.space, self.amps - other.amps)

    def __mul__(self, c: complex) -> Ket:
        return Ket(self.space, complex(c) * self.amps)

    __rmul__ = __mul__

    def __neg__(self) -> Ket:
        return Ket(self.space, -self.amps)

    def norm(self) -> float:
        return norm(self)

    def __repr__(self):
        return f"Ket(dim={self.space.dim}, amps={np.array2string(self.amps, precision=4)})"


@dataclass(frozen=True, eq=False)
class LinOp:
    space: Any
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        if mat.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"operator of shape {mat.shape} does not fit space of dim {self.space.dim}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    def dag(self) -> LinOp:
        return LinOp(self.space, self.mat.conj().T)

    def __matmul__(self, other):
        if isinstance(other, LinOp):
            _check_same(self.space, other.space)
            return LinOp(self.space, self.mat @ other.mat)
        if isinstance(other, Ket):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: LinOp) -> LinOp:
        _check_same(self.space, other.space)
        return LinOp(self.space, self.mat + other.mat)

    def __sub__(self, other: LinOp) -> LinOp:
        _check_same(self.space, other.space)
        return LinOp(self.space, self.mat - other.mat)

    def __mul__(self, c: complex) -> LinOp:
        return LinOp(self.space, complex(c) * self.mat)

    __rmul__ = __mul__

    def __neg__(self) -> LinOp:
        return LinOp(self.space, -self.mat)

    def __repr__(self):
        return f"LinOp(dim={self.space.dim})"


def identity(space) -> LinOp:
    return LinOp(space, np.eye(space.dim))


def basis(space, n: int) -> Ket:
    if not 0 <= n < space.dim:
        raise IndexError(f"basis index {n} out of range for dim {space.dim}")
    amps = np.zeros(space.dim, dtype=complex)
    amps[n] = 1.0
    return Ket(space, amps)


def annihilator(space: FockSpace) -> LinOp:
    # a|n> = sqrt(n)|n-1>; for the fermion this is the 2x2 lowering matrix
    return LinOp(space, np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), k=1))


def creator(space: FockSpace) -> LinOp:
    return annihilator(space).dag()


def number_op(space: FockSpace) -> LinOp:
    return LinOp(space, np.diag(np.arange(space.dim, dtype=float)))


def parity_op(space: FockSpace) -> LinOp:
    """(-1)^N, the fermionic Klein factor when ``space`` is fermionic."""
    return LinOp(space, np.diag((-1.0) ** np.arange(space.dim)))


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    op: LinOp
    spectrum: np.ndarray

    @property
    def space(self):
        return self.op.space


def oscillator_hamiltonian(space: FockSpace, omega: float) -> Hamiltonian:
    """H = omega a^dagger a, diagonal with E_n = n omega."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    spectrum = omega * np.arange(space.dim, dtype=float)
    return Hamiltonian(LinOp(space, np.diag(spectrum)), spectrum)


def apply(op: LinOp, k: Ket) -> Ket:
    _check_same(op.space, k.space)
    return Ket(k.space, op.mat @ k.amps)


def inner(a: Ket, b: Ket) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    _check_same(a.space, b.space)
    return complex(np.vdot(a.amps, b.amps))


def norm(k: Ket) -> float:
    return float(np.linalg.norm(k.amps))


def scale_add(kets: Sequence[Ket], coeffs: Sequence[complex]) -> Ket:
    if len(kets) != len(coeffs) or not kets:
        raise ValueError("need equally many (>0) kets and coefficients")
    space = kets[0].space
    total = np.zeros(space.dim, dtype=complex)
    for k, c in zip(kets, coeffs):
        _check_same(space, k.space)
        total += complex(c) * k.amps
    return Ket(space, total)


def _exp_block(m: np.ndarray) -> np.ndarray:
    herm_tol = 1e-14 * max(1.0, np.abs(m).max())
    if np.allclose(m, m.conj().T, rtol=0, atol=herm_tol):
        w, v = np.linalg.eigh(m)
        return (v * np.exp(w)) @ v.conj().T
    if np.allclose(m, -m.conj().T, rtol=0, atol=herm_tol):
        # skew-Hermitian: m = -iH with H Hermitian
        w, v = np.linalg.eigh(1j * m)
        return (v * np.exp(-1j * w)) @ v.conj().T
    return scipy.linalg.expm(m)


def matrix_exp(op: LinOp) -> LinOp:
    """exp(op), computed block by block over the connected components of its sparsity pattern.

    Permuting to block-diagonal form is exact, so the result equals the
    exponential of the full matrix. It matters for the truncated boson
    generator, which conserves N - N~ and splits into ~2N small sectors.
    """
    m = op.mat
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix_exp requires finite entries")
    n = m.shape[0]
    ncomp, labels = connected_components((m != 0) | (m.T != 0), directed=False)
    if ncomp == 1:
        return LinOp(op.space, _exp_block(m))
    out = np.zeros((n, n), dtype=complex)
    for c in range(ncomp):
        idx = np.flatnonzero(labels == c)
        out[np.ix_(idx, idx)] = _exp_block(m[np.ix_(idx, idx)])
    return LinOp(op.space, out)


def schmidt_coefficients(amps: np.ndarray, dim_left: int, dim_right: int) -> np.ndarray:
    """Singular values of a bipartite amplitude vector, largest first."""
    return np.linalg.svd(np.asarray(amps).reshape(dim_left, dim_right), compute_uv=False)


@dataclass(frozen=True)
class ProductSpace:
    """Ordered tensor product of spaces, used for the ancilla and fourfold cloning spaces."""

    factors: tuple

    @property
    def dim(self) -> int:
        return int(np.prod([f.dim for f in self.factors]))


@dataclass(frozen=True)
class AncillaSpace:
    dim: int
