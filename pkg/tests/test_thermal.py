import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfdlab.doubled import basis_ket, doubled
from tfdlab.fock import apply, make_space, number_op, oscillator_hamiltonian
from tfdlab.thermal import (
    bogoliubov_generator,
    boson_cutoff,
    excitation,
    expectation,
    ladder_ops,
    mean_occupation,
    mixing_angle,
    oscillator_space,
    thermal_op,
    thermal_vacuum_series,
    thermal_vacuum_unitary,
    vacuum,
)

from . import oracles

FERMION_DS = doubled(make_space("fermion"))


@pytest.mark.parametrize(
    "kind,bo,expected",
    [
        ("fermion", 1.0, oracles.THETA_FERMION_BO1),
        ("fermion", 2.0, oracles.THETA_FERMION_BO2),
        ("boson", 2.0, oracles.THETA_BOSON_BO2),
    ],
)
def test_mixing_angle_against_oracle(kind, bo, expected):
    assert mixing_angle(bo, 1.0, kind).theta == pytest.approx(expected, abs=1e-15)


@settings(max_examples=100)
@given(st.floats(0.01, 50), st.floats(0.1, 10))
def test_bogoliubov_normalisation(beta, omega):
    f = mixing_angle(beta, omega, "fermion")
    assert f.u**2 + f.v**2 == pytest.approx(1.0)
    b = mixing_angle(beta, omega, "boson")
    assert b.u**2 - b.v**2 == pytest.approx(1.0, rel=1e-9)
    # both angles encode the same Boltzmann ratio
    assert math.tan(f.theta) == pytest.approx(math.exp(-beta * omega / 2))
    assert math.tanh(b.theta) == pytest.approx(math.exp(-beta * omega / 2))


def test_temperature_limits():
    assert mixing_angle(math.inf, 1.0, "fermion").theta == 0.0
    assert mixing_angle(math.inf, 1.0, "boson").theta == 0.0
    assert mixing_angle(0.0, 1.0, "fermion").theta == pytest.approx(math.pi / 4)
    with pytest.raises(ValueError):
        mixing_angle(0.0, 1.0, "boson")
    with pytest.raises(ValueError):
        mixing_angle(-1.0, 1.0, "fermion")
    with pytest.raises(ValueError):
        mixing_angle(1.0, 0.0, "fermion")


@pytest.mark.parametrize("bo", [0.5, 1.0, math.log(2), 2.0, 10.0])
def test_boson_cutoff_tail_rule(bo):
    n = boson_cutoff(bo, 1.0)
    assert math.exp(-bo * (n + 1)) < 1e-12
    assert math.exp(-bo * n) >= 1e-12 or n == 1


def test_mean_occupation_values():
    assert mean_occupation(1.0, 1.0, "fermion") == pytest.approx(oracles.FERMI_DIRAC_BO1, abs=1e-16)
    assert mean_occupation(0.0, 1.0, "fermion") == 0.5
    assert mean_occupation(oracles.LN2, 1.0, "boson") == pytest.approx(oracles.BOSON_OCC_LN2)
    with pytest.raises(ValueError):
        mean_occupation(0.0, 1.0, "boson")


def test_fermion_vacuum_amplitudes():
    st_ = vacuum(FERMION_DS, 1.0)
    np.testing.assert_allclose(st_.ket.amps, [oracles.COS_THETA_BO1, 0, 0, oracles.SIN_THETA_BO1], atol=1e-15)
    assert st_.z_partition == pytest.approx(oracles.Z_FERMION_BO1, abs=1e-14)


def test_infinite_temperature_fermion_vacuum_is_maximally_entangled():
    for construction in ("series", "unitary"):
        amps = vacuum(FERMION_DS, 0.0, construction=construction).ket.amps
        np.testing.assert_allclose(amps, [2**-0.5, 0, 0, 2**-0.5], atol=1e-15)


def test_zero_temperature_vacuum_is_ground_state():
    ds = doubled(make_space("boson", 3))
    for construction in ("series", "unitary"):
        np.testing.assert_allclose(vacuum(ds, math.inf, construction=construction).ket.amps, basis_ket(ds, 0, 0).amps)


def test_series_vacuum_with_large_beta_does_not_underflow():
    ds = doubled(make_space("boson", 3))
    h = oscillator_hamiltonian(ds.phys, 1.0)
    st_ = thermal_vacuum_series(ds, 2000.0, h)
    assert np.isfinite(st_.ket.amps).all()
    assert st_.ket.amps[0] == pytest.approx(1.0)


def test_generator_is_hermitian_and_conserves_number_difference():
    ds = doubled(make_space("boson", 5))
    g = bogoliubov_generator(ds, mixing_angle(1.0, 1.0, "boson")).op.mat
    assert np.allclose(g, g.conj().T)
    for i in range(ds.dim):
        for j in range(ds.dim):
            if abs(g[i, j]) > 0:
                n, m = ds.unflat(i)
                n2, m2 = ds.unflat(j)
                assert n - m == n2 - m2


def test_generator_rejects_mismatched_statistics():
    with pytest.raises(ValueError):
        bogoliubov_generator(FERMION_DS, mixing_angle(1.0, 1.0, "boson"))


def test_fermion_excitations():
    p = mixing_angle(1.0, 1.0, "fermion")
    gen = bogoliubov_generator(FERMION_DS, p)
    one = excitation(FERMION_DS, gen, "phys").amps
    np.testing.assert_allclose(one, basis_ket(FERMION_DS, 1, 0).amps, atol=1e-15)
    one_t = excitation(FERMION_DS, gen, "tilde").amps
    np.testing.assert_allclose(np.abs(one_t), basis_ket(FERMION_DS, 0, 1).amps, atol=1e-15)
    with pytest.raises(ValueError):
        excitation(FERMION_DS, gen, "both")


@pytest.mark.parametrize("kind,cutoff", [("fermion", None), ("boson", 6)])
def test_thermal_ladders_keep_canonical_relations(kind, cutoff):
    ds = doubled(make_space(kind, cutoff))
    gen = bogoliubov_generator(ds, mixing_angle(1.5, 1.0, kind))
    a, b = ladder_ops(ds)
    ab, bb = thermal_op(ds, a, gen), thermal_op(ds, b, gen)
    sign = 1 if kind == "fermion" else -1
    np.testing.assert_allclose((ab @ bb + sign * bb @ ab).mat, 0, atol=1e-12)


@pytest.mark.parametrize("kind,bo", [("fermion", 0.3), ("fermion", 3.0), ("boson", 1.0), ("boson", 4.0)])
def test_occupation_via_vacuum(kind, bo):
    ds = doubled(oscillator_space(kind, bo))
    got = expectation(vacuum(ds, bo), number_op(ds.phys)).real
    assert got == pytest.approx(mean_occupation(bo, 1.0, kind), abs=1e-11)


def test_series_matches_unitary_for_boson_at_generous_cutoff():
    ds = doubled(make_space("boson", 40))
    p = mixing_angle(1.0, 1.0, "boson")
    s = thermal_vacuum_series(ds, 1.0, oscillator_hamiltonian(ds.phys, 1.0))
    u = thermal_vacuum_unitary(ds, p)
    assert (s.ket - u.ket).norm() < 1e-8
    assert s.params.theta == pytest.approx(p.theta)


def test_unknown_construction():
    with pytest.raises(ValueError):
        vacuum(FERMION_DS, 1.0, construction="guess")


def test_thermal_op_requires_doubled_operator():
    gen = bogoliubov_generator(FERMION_DS, mixing_angle(1.0, 1.0, "fermion"))
    with pytest.raises(ValueError):
        thermal_op(FERMION_DS, number_op(FERMION_DS.phys), gen)


def test_unitary_vacuum_norm():
    ds = doubled(make_space("boson", 10))
    k = apply(bogoliubov_generator(ds, mixing_angle(3.0, 1.0, "boson")).unitary, basis_ket(ds, 0, 0))
    assert k.norm() == pytest.approx(1.0, abs=1e-13)
