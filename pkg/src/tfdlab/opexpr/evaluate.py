from __future__ import annotations

from dataclasses import dataclass, field

from ..doubled import DoubledSpace, KleinConvention, lift_physical, lift_tilde, tilde_conjugate
from ..fock import FockSpace, LinOp, annihilator, identity
from .nodes import Atom, Dagger, Expr, Product, Scalar, ScalarMul, Sum, Tilde, tilde_depth
from .parser import parse

MAX_TILDE_DEPTH = 2


@dataclass(frozen=True)
class EvalContext:
    ds: DoubledSpace
    bindings: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.bindings:
            a = annihilator(self.ds.phys)
            object.__setattr__(self, "bindings", {"a": a, "b": a})
        for name, op in self.bindings.items():
            if op.space != self.ds.phys:
                raise ValueError(f"binding {name!r} does not live on the physical space")

    @property
    def klein(self) -> KleinConvention:
        return self.ds.klein


def _has_tilde(e: Expr) -> bool:
    return tilde_depth(e) > 0


def evaluate_physical(e: Expr, space: FockSpace, bindings: dict | None = None) -> LinOp:
    """Matrix of a tilde-free expression on the single-mode space."""
    bindings = bindings or {"a": annihilator(space), "b": annihilator(space)}

    def ev(node: Expr) -> LinOp:
        if isinstance(node, Scalar):
            return node.value * identity(space)
        if isinstance(node, Atom):
            try:
                return bindings[node.name]
            except KeyError:
                raise ValueError(f"unbound identifier {node.name!r}") from None
        if isinstance(node, Dagger):
            return ev(node.arg).dag()
        if isinstance(node, Sum):
            out = ev(node.terms[0])
            for t in node.terms[1:]:
                out = out + ev(t)
            return out
        if isinstance(node, Product):
            out = ev(node.factors[0])
            for f in node.factors[1:]:
                out = out @ ev(f)
            return out
        if isinstance(node, ScalarMul):
            return node.coeff * ev(node.arg)
        if isinstance(node, Tilde):
            raise ValueError("tilde is not defined on the single-mode space")
        raise TypeError(f"not an expression node: {node!r}")

    return ev(e)


def evaluate(e: Expr | str, ctx: EvalContext) -> LinOp:
    """Matrix of an expression on the doubled space.

    Atoms are lifted physical operators. A tilde over a tilde-free
    subexpression lifts its single-mode matrix with ``lift_tilde``; nested
    tildes go through the doubled-space tilde map.
    """
    if isinstance(e, str):
        e = parse(e)
    if tilde_depth(e) > MAX_TILDE_DEPTH:
        raise ValueError(f"tilde nesting deeper than {MAX_TILDE_DEPTH}")
    ds = ctx.ds

    def ev(node: Expr) -> LinOp:
        if isinstance(node, Tilde):
            if not _has_tilde(node.arg):
                return lift_tilde(ds, evaluate_physical(node.arg, ds.phys, ctx.bindings), ctx.klein)
            return tilde_conjugate(ds, ev(node.arg))
        if isinstance(node, Scalar):
            return node.value * identity(ds)
        if isinstance(node, Atom):
            return lift_physical(ds, evaluate_physical(node, ds.phys, ctx.bindings))
        if isinstance(node, Dagger):
            return ev(node.arg).dag()
        if isinstance(node, Sum):
            out = ev(node.terms[0])
            for t in node.terms[1:]:
                out = out + ev(t)
            return out
        if isinstance(node, Product):
            out = ev(node.factors[0])
            for f in node.factors[1:]:
                out = out @ ev(f)
            return out
        if isinstance(node, ScalarMul):
            return node.coeff * ev(node.arg)
        raise TypeError(f"not an expression node: {node!r}")

    return ev(e)
