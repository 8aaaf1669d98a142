from __future__ import annotations

from ..fock import Statistics, as_statistics
from .nodes import Atom, Dagger, Expr, Product, Scalar, ScalarMul, Sum, Tilde


def tilde_rewrite(e: Expr, kind: str | Statistics = Statistics.BOSON, notes: list | None = None) -> Expr:
    """Push tilde conjugation down to the atoms.

    Products keep their order, scalars are conjugated, daggers commute with
    the tilde and a double tilde cancels. For fermions the double tilde is
    still cancelled with sign +1; the conventional -1 is only recorded in
    ``notes`` because the matrix lift returns +A.
    """
    kind = as_statistics(kind)

    def rw(node: Expr, under: bool) -> Expr:
        if isinstance(node, Atom):
            return Tilde(node) if under else node
        if isinstance(node, Scalar):
            return Scalar(node.value.conjugate()) if under else node
        if isinstance(node, Dagger):
            return Dagger(rw(node.arg, under))
        if isinstance(node, Sum):
            return Sum(rw(t, under) for t in node.terms)
        if isinstance(node, Product):
            return Product(rw(f, under) for f in node.factors)
        if isinstance(node, ScalarMul):
            return ScalarMul(node.coeff.conjugate() if under else node.coeff, rw(node.arg, under))
        if isinstance(node, Tilde):
            if under and kind is Statistics.FERMION and notes is not None:
                notes.append("fermionic double tilde cancelled with sign +1 (conventional sign -1 not applied)")
            return rw(node.arg, not under)
        raise TypeError(f"not an expression node: {node!r}")

    return rw(e, False)
