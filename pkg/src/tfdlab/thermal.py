"""Thermal vacua, Bogoliubov generator and thermal ladder operators for one mode."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .doubled import DoubledSpace, basis_ket, lift_pair, lift_physical, lift_tilde
from .fock import (
    FockSpace,
    Hamiltonian,
    Ket,
    LinOp,
    Statistics,
    annihilator,
    apply,
    as_statistics,
    creator,
    inner,
    make_space,
    matrix_exp,
    number_op,
    oscillator_hamiltonian,
)

TAIL_TOL = 1e-12


@dataclass(frozen=True)
class ThermalParams:
    beta: float
    omega: float
    kind: Statistics
    theta: float
    u: float
    v: float

    @property
    def beta_omega(self) -> float:
        return self.beta * self.omega


def mixing_angle(beta: float, omega: float, kind: str | Statistics) -> ThermalParams:
    """Mixing angle with tan(theta) (fermion) or tanh(theta) (boson) equal to exp(-beta omega / 2).

    ``beta = inf`` is the zero-temperature limit (theta = 0). ``beta = 0`` is
    accepted for fermions only, as the infinite-temperature limit theta = pi/4.
    """
    kind = as_statistics(kind)
    if not omega > 0 or not math.isfinite(omega):
        raise ValueError(f"omega must be positive and finite, got {omega}")
    if math.isnan(beta) or beta < 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if beta == 0 and kind is Statistics.BOSON:
        raise ValueError("boson mixing angle diverges at beta = 0")
    x = math.exp(-beta * omega / 2) if math.isfinite(beta) else 0.0
    if kind is Statistics.FERMION:
        theta = math.atan(x)
        return ThermalParams(beta, omega, kind, theta, math.cos(theta), math.sin(theta))
    theta = math.atanh(x)
    return ThermalParams(beta, omega, kind, theta, math.cosh(theta), math.sinh(theta))


def boson_cutoff(beta: float, omega: float, tail: float = TAIL_TOL) -> int:
    """Smallest cutoff N with exp(-beta omega (N + 1)) < tail."""
    if not beta * omega > 0:
        raise ValueError("tail rule needs beta * omega > 0")
    n = max(1, math.ceil(-math.log(tail) / (beta * omega)) - 1)
    while math.exp(-beta * omega * (n + 1)) >= tail:
        n += 1
    return n


def mean_occupation(beta: float, omega: float, kind: str | Statistics) -> float:
    """Fermi-Dirac or Bose-Einstein mean occupation."""
    kind = as_statistics(kind)
    if not omega > 0 or beta < 0:
        raise ValueError("need omega > 0 and beta >= 0")
    x = beta * omega
    if kind is Statistics.FERMION:
        return 0.5 if x == 0 else 1.0 / (math.exp(x) + 1.0)
    if x == 0:
        raise ValueError("Bose-Einstein occupation diverges at beta = 0")
    return 1.0 / math.expm1(x)


@dataclass(frozen=True, eq=False)
class BogoliubovGenerator:
    op: LinOp
    theta: float

    @cached_property
    def unitary(self) -> LinOp:
        """exp(-i G)."""
        return matrix_exp(-1j * self.op)

    @cached_property
    def inverse(self) -> LinOp:
        return self.unitary.dag()


@dataclass(frozen=True, eq=False)
class ThermalState:
    ket: Ket
    params: ThermalParams | None
    z_partition: float

    @property
    def space(self) -> DoubledSpace:
        return self.ket.space


def _check_kind(ds: DoubledSpace, params: ThermalParams) -> None:
    if ds.kind is not params.kind:
        raise ValueError(f"doubled space is {ds.kind.value} but params are {params.kind.value}")


def ladder_ops(ds: DoubledSpace) -> tuple[LinOp, LinOp]:
    """Lifted physical annihilator a and tilde annihilator b~."""
    a = annihilator(ds.phys)
    return lift_physical(ds, a), lift_tilde(ds, a)


def bogoliubov_generator(ds: DoubledSpace, params: ThermalParams) -> BogoliubovGenerator:
    """G = i theta (a^dag b~^dag - h.c.).

    For bosons h.c. = a b~. For fermions the Hermitian conjugate of
    a^dag b~^dag is b~ a = -a b~, and only this ordering keeps G Hermitian.
    """
    _check_kind(ds, params)
    ad = creator(ds.phys)
    pair = lift_pair(ds, ad, ad)
    return BogoliubovGenerator(1j * params.theta * (pair - pair.dag()), params.theta)


def _ground_energy_shifted(spectrum: np.ndarray, beta: float) -> tuple[np.ndarray, float]:
    """Half Boltzmann amplitudes exp(-beta E_n / 2) (unnormalised) and Z, guarded against overflow."""
    e = np.asarray(spectrum, dtype=float)
    e0 = e.min()
    if math.isinf(beta):
        w = (e == e0).astype(float)
        z = float(w.sum()) if e0 == 0 else 0.0
        return w, z
    shifted = np.exp(-beta * (e - e0))
    z = float(shifted.sum()) * math.exp(-beta * e0)
    return np.sqrt(shifted), z


def thermal_vacuum_series(ds: DoubledSpace, beta: float, h: Hamiltonian) -> ThermalState:
    """Z^{-1/2} sum_n exp(-beta E_n / 2) |n, n~>."""
    if h.space != ds.phys:
        raise ValueError("Hamiltonian does not live on the physical space")
    if math.isnan(beta) or beta < 0:
        raise ValueError("beta must be nonnegative")
    amp, z = _ground_energy_shifted(h.spectrum, beta)
    amp = amp / np.linalg.norm(amp)
    d = ds.phys.dim
    amps = np.zeros(ds.dim, dtype=complex)
    amps[np.arange(d) * (d + 1)] = amp

    spec = np.asarray(h.spectrum, dtype=float)
    params = None
    steps = np.diff(spec)
    if spec[0] == 0 and np.allclose(steps, steps[0]) and steps[0] > 0 and (beta > 0 or ds.phys.is_fermion):
        params = mixing_angle(beta, float(steps[0]), ds.kind)
    return ThermalState(Ket(ds, amps), params, z)


def thermal_vacuum_unitary(
    ds: DoubledSpace, params: ThermalParams, gen: BogoliubovGenerator | None = None
) -> ThermalState:
    """exp(-i G)|0,0~>, with Z read off the |0,0~> amplitude."""
    gen = bogoliubov_generator(ds, params) if gen is None else gen
    ket = apply(gen.unitary, basis_ket(ds, 0, 0))
    c00 = abs(ket.amps[0])
    return ThermalState(ket, params, 1.0 / c00**2)


def thermal_op(ds: DoubledSpace, op: LinOp, gen: BogoliubovGenerator) -> LinOp:
    """exp(-iG) op exp(iG)."""
    if op.space != ds:
        raise ValueError("operator must live on the doubled space")
    return gen.unitary @ op @ gen.inverse


def excitation(ds: DoubledSpace, gen: BogoliubovGenerator, which: str = "phys") -> Ket:
    """|1(beta)> = a_beta^dag |0(beta)> or its tilde partner."""
    a, bt = ladder_ops(ds)
    try:
        ladder = {"phys": a, "tilde": bt}[which]
    except KeyError:
        raise ValueError(f"which must be 'phys' or 'tilde', got {which!r}") from None
    vac = apply(gen.unitary, basis_ket(ds, 0, 0))
    return apply(thermal_op(ds, ladder.dag(), gen), vac)


def hbar_op(ds: DoubledSpace, omega: float) -> LinOp:
    """omega (a^dag a - b~^dag b~)."""
    n = number_op(ds.phys)
    return omega * (lift_physical(ds, n) - lift_tilde(ds, n))


def expectation(state: ThermalState, op: LinOp) -> complex:
    """<0(beta)| op (x) 1 |0(beta)> for a physical-space operator."""
    ds = state.space
    if op.space == ds:
        lifted = op
    else:
        lifted = lift_physical(ds, op)
    return inner(state.ket, apply(lifted, state.ket))


def vacuum(ds: DoubledSpace, beta: float, omega: float = 1.0, construction: str = "unitary") -> ThermalState:
    """Convenience constructor for the oscillator vacuum by either route."""
    if construction == "series":
        return thermal_vacuum_series(ds, beta, oscillator_hamiltonian(ds.phys, omega))
    if construction == "unitary":
        return thermal_vacuum_unitary(ds, mixing_angle(beta, omega, ds.kind))
    raise ValueError(f"unknown construction {construction!r}")


def oscillator_space(kind: str | Statistics, beta_omega: float, cutoff: int | None = None) -> FockSpace:
    """Single-mode space; boson cutoff defaults to the tail rule for ``beta_omega``."""
    kind = as_statistics(kind)
    if kind is Statistics.BOSON and cutoff is None:
        cutoff = boson_cutoff(beta_omega, 1.0)
    return make_space(kind, cutoff)

