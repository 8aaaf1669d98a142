"""Numerical no-cloning checks: a generic cloning machine, the doubling map D_TFD and the thermofield cloner C_TFD.

Each "clone" is the product state a perfect copier would have to output,
and each "linear" map is what linearity forces from the action on basis
states. The residual between the two vanishes only when the input is
(up to phase) a single basis state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .doubled import DoubledSpace, basis_ket, doubled, tensor, tilde_map_ket
from .fock import (
    AncillaSpace,
    FockSpace,
    Ket,
    ProductSpace,
    Statistics,
    as_statistics,
    basis,
    scale_add,
)
from .thermal import (
    ThermalParams,
    bogoliubov_generator,
    excitation,
    mixing_angle,
    oscillator_space,
    thermal_vacuum_unitary,
)

NORM_TOL = 1e-12
CORNER_TOL = 1e-12


@dataclass(frozen=True)
class CloneSpec:
    z: complex
    w: complex
    n: int = 0
    m: int = 1
    conjugate_tilde: bool = False

    def __post_init__(self):
        if abs(abs(self.z) ** 2 + abs(self.w) ** 2 - 1) > NORM_TOL:
            raise ValueError("clone spec must satisfy |z|^2 + |w|^2 = 1")
        if self.n == self.m:
            raise ValueError("n and m must be distinct basis states")

    @property
    def is_corner(self) -> bool:
        return _is_corner(self.z, self.w)


@dataclass(frozen=True)
class ThermalCloneSpec:
    u: complex
    v: complex
    params: ThermalParams

    def __post_init__(self):
        if abs(abs(self.u) ** 2 + abs(self.v) ** 2 - 1) > NORM_TOL:
            raise ValueError("thermal clone spec must satisfy |u|^2 + |v|^2 = 1")

    @property
    def is_corner(self) -> bool:
        return _is_corner(self.u, self.v)


@dataclass(frozen=True)
class CloneEntry:
    phi: float
    chi: float
    z: complex
    w: complex
    residual: float
    phase_residual: float

    @property
    def is_corner(self) -> bool:
        return _is_corner(self.z, self.w)


@dataclass
class CloneReport:
    which: str
    branch: str
    tol: float
    grid: list[CloneEntry] = field(default_factory=list)

    @property
    def zero_locus(self) -> list[CloneEntry]:
        return [e for e in self.grid if e.phase_residual < self.tol]

    @property
    def min_nonzero(self) -> float:
        rest = [e.residual for e in self.grid if e.phase_residual >= self.tol]
        return min(rest) if rest else math.inf

    @property
    def only_trivial_zeros(self) -> bool:
        """True iff the zero locus is exactly the set of corner points on the grid."""
        zeros = {id(e) for e in self.zero_locus}
        corners = {id(e) for e in self.grid if e.is_corner}
        return zeros == corners

    def max_entry(self) -> CloneEntry:
        return max(self.grid, key=lambda e: e.residual)


def _is_corner(z: complex, w: complex) -> bool:
    return abs(abs(z) - 1) < CORNER_TOL or abs(abs(w) - 1) < CORNER_TOL


def _distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b))


def _phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over global phases of ||a - e^{i phi} b||."""
    d2 = np.vdot(a, a).real + np.vdot(b, b).real - 2 * abs(np.vdot(a, b))
    return math.sqrt(max(d2, 0.0))


def _residual(a: np.ndarray, b: np.ndarray, corner: bool) -> float:
    # global phase is quotiented only at the single-basis-state corners
    return _phase_distance(a, b) if corner else _distance(a, b)


def _superposition(space: FockSpace, spec: CloneSpec) -> Ket:
    return scale_add([basis(space, spec.n), basis(space, spec.m)], [spec.z, spec.w])


def d_tfd_basis(ds: DoubledSpace, n: int) -> Ket:
    """|n> -> |n, n~>."""
    return basis_ket(ds, n, n)


def d_tfd_clone(ds: DoubledSpace, spec: CloneSpec) -> Ket:
    """(z|n> + w|m>) (x) its tilde copy, conjugated if ``spec.conjugate_tilde``."""
    psi = _superposition(ds.phys, spec)
    return tensor(ds, psi, tilde_map_ket(ds, psi, conjugate=spec.conjugate_tilde))


def d_tfd_linear(ds: DoubledSpace, spec: CloneSpec) -> Ket:
    return scale_add([d_tfd_basis(ds, spec.n), d_tfd_basis(ds, spec.m)], [spec.z, spec.w])


def d_tfd_antilinear(ds: DoubledSpace, spec: CloneSpec) -> Ket:
    return scale_add(
        [d_tfd_basis(ds, spec.n), d_tfd_basis(ds, spec.m)], [np.conj(spec.z), np.conj(spec.w)]
    )


def cloning_residual(ds: DoubledSpace, spec: CloneSpec, extension: str = "linear") -> float:
    """Distance between the doubling clone and its (anti)linear extension from basis states."""
    ext = {"linear": d_tfd_linear, "antilinear": d_tfd_antilinear}[extension](ds, spec)
    return _residual(ext.amps, d_tfd_clone(ds, spec).amps, spec.is_corner)


def machine_output(space: FockSpace, spec: CloneSpec, machine_states: str = "equal") -> Ket:
    """z |A_n>|n,n> + w |A_m>|m,m> on ancilla (x) H (x) H.

    The ancilla has three orthonormal states |A_0>, |A_1>, |A_2>; ``equal``
    sends both branches to |A_1>, ``distinct`` sends the m branch to |A_2>.
    """
    if machine_states not in ("equal", "distinct"):
        raise ValueError("machine_states must be 'equal' or 'distinct'")
    anc = AncillaSpace(3)
    a_n = basis(anc, 1)
    a_m = a_n if machine_states == "equal" else basis(anc, 2)
    nn = np.kron(basis(space, spec.n).amps, basis(space, spec.n).amps)
    mm = np.kron(basis(space, spec.m).amps, basis(space, spec.m).amps)
    out = spec.z * np.kron(a_n.amps, nn) + spec.w * np.kron(a_m.amps, mm)
    return Ket(ProductSpace((anc, space, space)), out)


def generic_machine_residual(space: FockSpace, spec: CloneSpec, machine_states: str = "equal") -> float:
    """Distance from the machine output to the product clone (z|n> + w|m>)^(x)2.

    With equal machine states the target is |A_1> (x) clone. With distinct
    states the ancilla is left free and the distance is to the nearest
    |A> (x) clone, i.e. sqrt(2 - 2 ||(1 (x) <clone|) out||).
    """
    out = machine_output(space, spec, machine_states)
    psi = _superposition(space, spec).amps
    clone = np.kron(psi, psi)
    if machine_states == "equal":
        target = np.kron(basis(AncillaSpace(3), 1).amps, clone)
        return _residual(target, out.amps, spec.is_corner)
    overlap = out.amps.reshape(3, -1) @ clone.conj()
    return math.sqrt(max(0.0, 2.0 - 2.0 * float(np.linalg.norm(overlap))))


@lru_cache(maxsize=32)
def thermal_pair(ds: DoubledSpace, params: ThermalParams) -> tuple[Ket, Ket]:
    """(|0(beta)>, |1(beta)>) built through the Bogoliubov unitary."""
    gen = bogoliubov_generator(ds, params)
    vac = thermal_vacuum_unitary(ds, params, gen).ket
    return vac, excitation(ds, gen, "phys")


def fourfold(ds: DoubledSpace) -> ProductSpace:
    return ProductSpace((ds, ds))


def _ds_for(params: ThermalParams, cutoff: int | None) -> DoubledSpace:
    return doubled(oscillator_space(params.kind, params.beta_omega, cutoff))


def c_tfd_clone(four: ProductSpace, spec: ThermalCloneSpec) -> Ket:
    ds = four.factors[0]
    k0, k1 = thermal_pair(ds, spec.params)
    s = spec.u * k0.amps + spec.v * k1.amps
    return Ket(four, np.kron(s, s))


def c_tfd_linear(four: ProductSpace, spec: ThermalCloneSpec) -> Ket:
    ds = four.factors[0]
    k0, k1 = thermal_pair(ds, spec.params)
    return Ket(four, spec.u * np.kron(k0.amps, k0.amps) + spec.v * np.kron(k1.amps, k1.amps))


def c_tfd_antilinear(four: ProductSpace, spec: ThermalCloneSpec) -> Ket:
    ds = four.factors[0]
    k0, k1 = thermal_pair(ds, spec.params)
    return Ket(
        four, np.conj(spec.u) * np.kron(k0.amps, k0.amps) + np.conj(spec.v) * np.kron(k1.amps, k1.amps)
    )


def c_tfd_residual(spec: ThermalCloneSpec, cutoff: int | None = None, extension: str = "linear") -> float:
    four = fourfold(_ds_for(spec.params, cutoff))
    ext = {"linear": c_tfd_linear, "antilinear": c_tfd_antilinear}[extension](four, spec)
    return _residual(ext.amps, c_tfd_clone(four, spec).amps, spec.is_corner)


def scan(
    grid_resolution: int = 101,
    which: str = "d_tfd",
    branch: str = "real",
    *,
    chi: float | None = None,
    beta_omega: float = 1.0,
    kind: str | Statistics = Statistics.FERMION,
    cutoff: int | None = None,
    tol: float = 1e-9,
) -> CloneReport:
    """Sweep z = cos(phi), w = e^{i chi} sin(phi) for phi on [0, pi/2].

    For ``d_tfd`` the branch picks the plain or conjugated tilde copy. For
    ``c_tfd`` there is no tilde copy; ``conjugate`` compares the clone with
    the antilinear extension instead of the linear one.
    """
    if grid_resolution < 3:
        raise ValueError("grid resolution must be >= 3")
    if which not in ("d_tfd", "c_tfd"):
        raise ValueError(f"which must be 'd_tfd' or 'c_tfd', got {which!r}")
    if branch not in ("real", "conjugate"):
        raise ValueError(f"branch must be 'real' or 'conjugate', got {branch!r}")
    if chi is None:
        chi = 0.0 if branch == "real" else math.pi / 3

    report = CloneReport(which, branch, tol)
    phase = complex(math.cos(chi), math.sin(chi))
    if which == "d_tfd":
        ds = doubled(oscillator_space(Statistics.FERMION, 1.0))
    else:
        params = mixing_angle(beta_omega, 1.0, as_statistics(kind))
        four = fourfold(_ds_for(params, cutoff))
        ext_fn = c_tfd_linear if branch == "real" else c_tfd_antilinear

    for phi in np.linspace(0.0, math.pi / 2, grid_resolution):
        z, w = complex(math.cos(phi)), phase * math.sin(phi)
        if which == "d_tfd":
            spec = CloneSpec(z, w, conjugate_tilde=branch == "conjugate")
            a, b = d_tfd_linear(ds, spec).amps, d_tfd_clone(ds, spec).amps
        else:
            spec = ThermalCloneSpec(z, w, params)
            a, b = ext_fn(four, spec).amps, c_tfd_clone(four, spec).amps
        res = _residual(a, b, spec.is_corner)
        report.grid.append(CloneEntry(float(phi), float(chi), z, w, res, _phase_distance(a, b)))
    return report
