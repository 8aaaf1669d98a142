"""Density matrices, Gibbs states and von Neumann entropy (in nats)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .doubled import partial_trace_tilde
from .fock import FockSpace, Hamiltonian, Ket, LinOp
from .thermal import ThermalState

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_CLIP = 1e-12


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    op: LinOp

    def __post_init__(self):
        m = self.op.mat
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1) > TRACE_TOL:
            raise ValueError(f"density matrix has trace {tr}, expected 1")

    @property
    def space(self):
        return self.op.space

    @property
    def mat(self) -> np.ndarray:
        return self.op.mat

    def eigenvalues(self) -> np.ndarray:
        w = np.linalg.eigvalsh(self.mat)
        if w.min() < -EIG_CLIP:
            raise ValueError(f"density matrix has negative eigenvalue {w.min():.3e}")
        return np.clip(w, 0.0, None)


@dataclass(frozen=True)
class EntropyPoint:
    t_over_omega: float
    s: float


def gibbs_density(space: FockSpace, beta: float, h: Hamiltonian) -> DensityMatrix:
    """exp(-beta H)/Z for a Hamiltonian diagonal in the Fock basis; beta = inf gives the ground-state projector."""
    if h.space != space:
        raise ValueError("Hamiltonian does not live on this space")
    if math.isnan(beta) or beta < 0:
        raise ValueError("beta must be nonnegative")
    e = np.asarray(h.spectrum, dtype=float)
    if math.isinf(beta):
        w = (e == e.min()).astype(float)
    else:
        w = np.exp(-beta * (e - e.min()))
    return DensityMatrix(LinOp(space, np.diag(w / w.sum())))


def partition_function(beta: float, h: Hamiltonian) -> float:
    e = np.asarray(h.spectrum, dtype=float)
    if math.isinf(beta):
        return float(np.sum(e == 0)) if e.min() >= 0 else math.inf
    return float(np.exp(-beta * e).sum())


def pure_density(k: Ket, tol: float = 1e-12) -> DensityMatrix:
    nrm = np.linalg.norm(k.amps)
    if abs(nrm - 1) > tol:
        raise ValueError(f"ket has norm {nrm}, expected 1")
    return DensityMatrix(LinOp(k.space, np.outer(k.amps, k.amps.conj())))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    lam = rho.eigenvalues()
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))


def entropy_closed_form_fermion(beta: float, omega: float) -> float:
    """S = x e^-x / (1 + e^-x) + ln(1 + e^-x) with x = beta omega."""
    x = beta * omega
    if math.isinf(x):
        return 0.0
    if x < 0:
        raise ValueError("beta * omega must be nonnegative")
    ex = math.exp(-x)
    return x * ex / (1.0 + ex) + math.log1p(ex)


def trace_expectation(rho: DensityMatrix, a: LinOp) -> complex:
    return complex(np.trace(rho.mat @ a.mat))


def entropy_identity_check(rho: DensityMatrix, beta: float, h: Hamiltonian, z: float) -> float:
    """|S(rho) - (beta Tr(rho H) + ln Z)|."""
    s = von_neumann_entropy(rho)
    if math.isinf(beta):
        # zero temperature: only the ground state is populated, S = 0 and beta Tr(rho H) = 0 for E0 = 0
        return abs(s - math.log(z))
    mean_e = trace_expectation(rho, h.op).real
    return abs(s - (beta * mean_e + math.log(z)))


def purity_defect(rho: DensityMatrix) -> float:
    """Operator norm of rho (1 - rho); zero exactly for pure states."""
    m = rho.mat
    return float(np.linalg.norm(m - m @ m, ord=2))


def default_grid() -> np.ndarray:
    return np.logspace(-2, 3, 200)


def entropy_curve(grid=None) -> list[EntropyPoint]:
    """Fermionic entropy versus T/omega from the closed form."""
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise ValueError("T/omega grid must be positive")
    return [EntropyPoint(float(t), entropy_closed_form_fermion(1.0 / t, 1.0)) for t in grid]


def reduced_state_of_vacuum(ts: ThermalState) -> DensityMatrix:
    ds = ts.space
    rho2 = LinOp(ds, np.outer(ts.ket.amps, ts.ket.amps.conj()))
    return DensityMatrix(partial_trace_tilde(ds, rho2))
