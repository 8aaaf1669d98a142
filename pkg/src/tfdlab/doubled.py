"""The doubled (Liouville) space H (x) H~ and the tilde conjugation on it.

Basis ordering is ``flat(n, m) = n * d + m`` with ``n`` the physical and ``m``
the tilde occupation, so for a fermion the order is |0,0~>, |0,1~>, |1,0~>, |1,1~>.

Fermionic tilde operators carry a parity string P = (-1)^N on the physical
slot when they are odd, which makes physical and tilde ladder operators
anticommute. Even operators (e.g. b~^dagger b~) are lifted without it, so the
lift respects products: lift_tilde(A B) = lift_tilde(A) lift_tilde(B).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .fock import FockSpace, Ket, LinOp, Statistics, _check_same, parity_op


@dataclass(frozen=True)
class KleinConvention:
    enabled: bool

    @classmethod
    def for_space(cls, space: FockSpace) -> KleinConvention:
        return cls(space.is_fermion)


@dataclass(frozen=True)
class DoubledSpace:
    phys: FockSpace

    @property
    def tilde(self) -> FockSpace:
        return self.phys

    @property
    def kind(self) -> Statistics:
        return self.phys.kind

    @property
    def dim(self) -> int:
        return self.phys.dim**2

    @property
    def klein(self) -> KleinConvention:
        return KleinConvention.for_space(self.phys)

    def flat(self, n: int, m: int) -> int:
        d = self.phys.dim
        if not (0 <= n < d and 0 <= m < d):
            raise IndexError(f"({n}, {m}) out of range for single-mode dim {d}")
        return n * d + m

    def unflat(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.dim:
            raise IndexError(f"flat index {i} out of range for dim {self.dim}")
        return divmod(i, self.phys.dim)

    @cached_property
    def swap(self) -> np.ndarray:
        """Slot exchange, with the fermionic sign on |1,1~> when Klein factors are in use."""
        d = self.phys.dim
        perm = np.zeros((self.dim, self.dim))
        for n in range(d):
            for m in range(d):
                perm[m * d + n, n * d + m] = 1.0
        if self.klein.enabled:
            perm = perm @ np.diag([-1.0 if (n, m) == (1, 1) else 1.0 for n in range(d) for m in range(d)])
        return perm


def doubled(space: FockSpace) -> DoubledSpace:
    return DoubledSpace(space)


def basis_ket(ds: DoubledSpace, n: int, m: int) -> Ket:
    amps = np.zeros(ds.dim, dtype=complex)
    amps[ds.flat(n, m)] = 1.0
    return Ket(ds, amps)


def lift_physical(ds: DoubledSpace, op: LinOp) -> LinOp:
    _check_same(op.space, ds.phys)
    return LinOp(ds, np.kron(op.mat, np.eye(ds.phys.dim)))


def _parity_parts(space: FockSpace, mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = np.arange(space.dim)
    even = (n[:, None] - n[None, :]) % 2 == 0
    return np.where(even, mat, 0), np.where(even, 0, mat)


def lift_tilde(ds: DoubledSpace, op: LinOp, klein: KleinConvention | None = None) -> LinOp:
    """Tilde partner of a physical operator: I (x) conj(op), with P on the physical slot for odd fermionic parts."""
    _check_same(op.space, ds.phys)
    klein = ds.klein if klein is None else klein
    d = ds.phys.dim
    if not klein.enabled:
        return LinOp(ds, np.kron(np.eye(d), op.mat.conj()))
    even, odd = _parity_parts(ds.phys, op.mat)
    mat = np.kron(np.eye(d), even.conj()) + np.kron(parity_op(ds.phys).mat, odd.conj())
    return LinOp(ds, mat)


def lift_pair(ds: DoubledSpace, phys_op: LinOp, tilde_op: LinOp) -> LinOp:
    """lift_physical(phys_op) @ lift_tilde(tilde_op), assembled factor-wise."""
    _check_same(phys_op.space, ds.phys)
    _check_same(tilde_op.space, ds.phys)
    if not ds.klein.enabled:
        return LinOp(ds, np.kron(phys_op.mat, tilde_op.mat.conj()))
    even, odd = _parity_parts(ds.phys, tilde_op.mat)
    a = phys_op.mat
    return LinOp(ds, np.kron(a, even.conj()) + np.kron(a @ parity_op(ds.phys).mat, odd.conj()))


def tilde_conjugate(ds: DoubledSpace, op: LinOp) -> LinOp:
    """Antilinear tilde map on doubled-space operators.

    Sends lift_physical(A) to lift_tilde(A) and back again, so applying it
    twice is the identity in both statistics.
    """
    _check_same(op.space, ds)
    s = ds.swap
    return LinOp(ds, s @ op.mat.conj() @ s.T)


def tilde_map_ket(ds: DoubledSpace, k: Ket, conjugate: bool = True) -> Ket:
    """Copy a physical ket onto the tilde factor; ``conjugate=False`` keeps the amplitudes as they are."""
    _check_same(k.space, ds.phys)
    return Ket(ds.tilde, k.amps.conj() if conjugate else k.amps)


def tensor(ds: DoubledSpace, phys_ket: Ket, tilde_ket: Ket) -> Ket:
    _check_same(phys_ket.space, ds.phys)
    _check_same(tilde_ket.space, ds.tilde)
    return Ket(ds, np.kron(phys_ket.amps, tilde_ket.amps))


def partial_trace_tilde(ds: DoubledSpace, rho2: LinOp) -> LinOp:
    """rho[n, n'] = sum_m rho2[(n, m), (n', m)]."""
    mat = np.asarray(rho2.mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("partial trace needs a square matrix")
    _check_same(rho2.space, ds)
    d = ds.phys.dim
    return LinOp(ds.phys, np.einsum("nmkm->nk", mat.reshape(d, d, d, d)))


def schmidt(ds: DoubledSpace, k: Ket) -> np.ndarray:
    """Schmidt coefficients of a doubled-space ket across the physical/tilde cut."""
    _check_same(k.space, ds)
    d = ds.phys.dim
    return np.linalg.svd(k.amps.reshape(d, d), compute_uv=False)
