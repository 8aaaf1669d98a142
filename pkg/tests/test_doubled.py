import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tfdlab.doubled import (
    basis_ket,
    doubled,
    lift_pair,
    lift_physical,
    lift_tilde,
    partial_trace_tilde,
    schmidt,
    tensor,
    tilde_conjugate,
    tilde_map_ket,
)
from tfdlab.fock import LinOp, annihilator, basis, creator, make_space, number_op

FERMION = doubled(make_space("fermion"))
BOSON = doubled(make_space("boson", 3))


def _anticomm(x, y):
    return (x @ y + y @ x).mat


def _comm(x, y):
    return (x @ y - y @ x).mat


def test_basis_ordering():
    assert [FERMION.unflat(i) for i in range(4)] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert BOSON.flat(2, 3) == 11
    with pytest.raises(IndexError):
        FERMION.flat(2, 0)
    with pytest.raises(IndexError):
        FERMION.unflat(4)


def test_fermion_ladders_anticommute_across_slots():
    a = lift_physical(FERMION, annihilator(FERMION.phys))
    b = lift_tilde(FERMION, annihilator(FERMION.phys))
    assert np.allclose(_anticomm(a, b), 0)
    assert np.allclose(_anticomm(a, b.dag()), 0)
    assert np.allclose(_anticomm(b, b.dag()), np.eye(4))


def test_boson_ladders_commute_across_slots():
    a = lift_physical(BOSON, annihilator(BOSON.phys))
    b = lift_tilde(BOSON, annihilator(BOSON.phys))
    assert np.allclose(_comm(a, b), 0)
    assert np.allclose(_comm(a, b.dag()), 0)


def test_pair_creation_on_vacuum():
    ad = creator(FERMION.phys)
    out = lift_pair(FERMION, ad, ad) @ basis_ket(FERMION, 0, 0)
    np.testing.assert_allclose(out.amps, basis_ket(FERMION, 1, 1).amps)


@pytest.mark.parametrize("ds", [FERMION, BOSON], ids=["fermion", "boson"])
def test_lift_pair_matches_product(ds):
    ad = creator(ds.phys)
    a = annihilator(ds.phys)
    for x, y in [(ad, ad), (a, ad), (ad, a)]:
        np.testing.assert_allclose(lift_pair(ds, x, y).mat, (lift_physical(ds, x) @ lift_tilde(ds, y)).mat)


_mats = arrays(np.complex128, (4, 4), elements=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))


@settings(max_examples=50, deadline=None)
@given(_mats, _mats)
def test_lift_tilde_is_multiplicative_for_bosons(x, y):
    ds = doubled(make_space("boson", 3))
    X, Y = LinOp(ds.phys, x), LinOp(ds.phys, y)
    np.testing.assert_allclose(lift_tilde(ds, X @ Y).mat, (lift_tilde(ds, X) @ lift_tilde(ds, Y)).mat, atol=1e-12)


_fmats = arrays(np.complex128, (2, 2), elements=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))


@settings(max_examples=50, deadline=None)
@given(_fmats, _fmats)
def test_graded_lift_is_multiplicative_for_fermions(x, y):
    X, Y = LinOp(FERMION.phys, x), LinOp(FERMION.phys, y)
    lhs = lift_tilde(FERMION, X @ Y).mat
    rhs = (lift_tilde(FERMION, X) @ lift_tilde(FERMION, Y)).mat
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("ds", [FERMION, BOSON], ids=["fermion", "boson"])
def test_tilde_conjugate_maps_physical_to_tilde(ds):
    for op in (annihilator(ds.phys), number_op(ds.phys), creator(ds.phys) @ annihilator(ds.phys) @ creator(ds.phys)):
        lifted = lift_physical(ds, op)
        np.testing.assert_allclose(tilde_conjugate(ds, lifted).mat, lift_tilde(ds, op).mat, atol=1e-14)
        np.testing.assert_allclose(tilde_conjugate(ds, tilde_conjugate(ds, lifted)).mat, lifted.mat, atol=1e-14)


def test_tilde_conjugate_is_antilinear():
    n = lift_physical(BOSON, number_op(BOSON.phys))
    np.testing.assert_allclose(tilde_conjugate(BOSON, 1j * n).mat, -1j * tilde_conjugate(BOSON, n).mat)


def test_tensor_and_tilde_copy():
    s = make_space("boson", 2)
    ds = doubled(s)
    k = basis(s, 0) * 1j + basis(s, 2)
    copy = tilde_map_ket(ds, k)
    np.testing.assert_allclose(copy.amps, [-1j, 0, 1])
    np.testing.assert_allclose(tilde_map_ket(ds, k, conjugate=False).amps, k.amps)
    t = tensor(ds, basis(s, 1), basis(s, 2))
    np.testing.assert_allclose(t.amps, basis_ket(ds, 1, 2).amps)


def test_partial_trace_of_product_state():
    s = make_space("boson", 2)
    ds = doubled(s)
    k = tensor(ds, (basis(s, 0) + basis(s, 1)) * (1 / np.sqrt(2)), basis(s, 2))
    rho2 = LinOp(ds, np.outer(k.amps, k.amps.conj()))
    np.testing.assert_allclose(partial_trace_tilde(ds, rho2).mat, [[0.5, 0.5, 0], [0.5, 0.5, 0], [0, 0, 0]])
    np.testing.assert_allclose(schmidt(ds, k), [1, 0, 0], atol=1e-15)


def test_partial_trace_rejects_wrong_space():
    with pytest.raises(ValueError):
        partial_trace_tilde(FERMION, LinOp(BOSON, np.eye(16)))


def test_tilde_creator_on_vacuum_picks_up_no_sign():
    out = lift_tilde(FERMION, creator(FERMION.phys)) @ basis_ket(FERMION, 0, 0)
    np.testing.assert_allclose(out.amps, basis_ket(FERMION, 0, 1).amps)
    # on |1,0~> the parity string contributes -1
    out = lift_tilde(FERMION, creator(FERMION.phys)) @ basis_ket(FERMION, 1, 0)
    np.testing.assert_allclose(out.amps, -basis_ket(FERMION, 1, 1).amps)
