"""Hypothesis strategies for operator-expression trees."""

from hypothesis import strategies as st

from tfdlab.opexpr import Atom, Dagger, Product, Scalar, ScalarMul, Sum, Tilde

_floats = st.floats(allow_nan=False, allow_infinity=False, width=64)
_small = st.sampled_from([0.0, 1.0, -1.0, 2.0, 0.5, -3.25, 1e-7, 1e16])
_part = st.one_of(_small, _floats)
complexes = st.builds(complex, _part, _part)
# modest coefficients keep matrix entries well away from overflow
small_complexes = st.builds(complex, st.integers(-3, 3), st.integers(-3, 3))

atoms = st.sampled_from([Atom("a"), Atom("b")])


def _extend(children, coeff):
    return st.one_of(
        st.builds(Dagger, children),
        st.builds(Tilde, children),
        st.builds(Sum, st.lists(children, min_size=2, max_size=3)),
        st.builds(Product, st.lists(children, min_size=2, max_size=3)),
        st.builds(ScalarMul, coeff, children),
    )


def exprs(max_leaves: int = 12):
    """Arbitrary trees; ``max_leaves`` keeps depth within about six levels."""
    leaves = st.one_of(atoms, st.builds(Scalar, complexes))
    return st.recursive(leaves, lambda c: _extend(c, complexes), max_leaves=max_leaves)


def boson_exprs(max_leaves: int = 8):
    """Tilde-free trees over a, a-dagger, scalars, sums and products."""
    ladder = st.sampled_from([Atom("a"), Dagger(Atom("a"))])
    leaves = st.one_of(ladder, ladder, st.builds(Scalar, small_complexes))

    def extend(c):
        return st.one_of(
            st.builds(Sum, st.lists(c, min_size=2, max_size=3)),
            st.builds(Product, st.lists(c, min_size=2, max_size=3)),
            st.builds(ScalarMul, small_complexes, c),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
