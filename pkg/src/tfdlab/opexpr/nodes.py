"""AST for operator expressions and its canonical text forms."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Scalar:
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))
        if not cmath.isfinite(self.value):
            raise ValueError("scalar must be finite")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Dagger:
    arg: Expr


@dataclass(frozen=True)
class Tilde:
    arg: Expr


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) < 2:
            raise ValueError("Sum needs at least two terms")


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 1:
            raise ValueError("Product needs at least one factor")


@dataclass(frozen=True)
class ScalarMul:
    coeff: complex
    arg: Expr

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        if not cmath.isfinite(self.coeff):
            raise ValueError("coefficient must be finite")


Expr = Union[Scalar, Atom, Dagger, Tilde, Sum, Product, ScalarMul]


def _num(x: float) -> str:
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_scalar(c: complex) -> str:
    """Canonical literal: ``2``, ``-1i``, ``(2-0.5i)``."""
    c = complex(c)
    re_, im = c.real, c.imag
    if im == 0:
        return _num(re_)
    if re_ == 0:
        return _num(im) + "i"
    sign = "-" if im < 0 else "+"
    return f"({_num(re_)}{sign}{_num(abs(im))}i)"


def _factor(e: Expr) -> str:
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, Scalar):
        lit = format_scalar(e.value)
        return f"({lit})" if lit.startswith("-") else lit
    if isinstance(e, Tilde):
        return f"~({format_expr(e.arg)})"
    if isinstance(e, Dagger):
        inner = e.arg
        if isinstance(inner, (Atom, Tilde, Dagger)):
            return _factor(inner) + "†"
        return f"({format_expr(inner)})†"
    return f"({format_expr(e)})"


def _factors(factors) -> str:
    return " ".join(_factor(f) for f in factors)


def format_expr(e: Expr) -> str:
    """Text that parses back to exactly ``e``."""
    if isinstance(e, Sum):
        return " + ".join(f"({format_expr(t)})" if isinstance(t, Sum) else format_expr(t) for t in e.terms)
    if isinstance(e, Product):
        first, rest = e.factors[0], e.factors[1:]
        # a bare leading number would be read back as a coefficient
        head = f"({format_scalar(first.value)})" if isinstance(first, Scalar) else _factor(first)
        return " ".join([head, _factors(rest)]) if rest else head
    if isinstance(e, ScalarMul):
        arg = e.arg
        if isinstance(arg, Product):
            body = _factors(arg.factors)
        else:
            body = _factor(arg)
        return f"{format_scalar(e.coeff)} {body}"
    if isinstance(e, Scalar):
        return format_scalar(e.value)
    return _factor(e)


def to_sexpr(e: Expr) -> str:
    if isinstance(e, Scalar):
        return f"(scalar {format_scalar(e.value)})"
    if isinstance(e, Atom):
        return f"(atom {e.name})"
    if isinstance(e, Dagger):
        return f"(dag {to_sexpr(e.arg)})"
    if isinstance(e, Tilde):
        return f"(tilde {to_sexpr(e.arg)})"
    if isinstance(e, Sum):
        return "(sum " + " ".join(to_sexpr(t) for t in e.terms) + ")"
    if isinstance(e, Product):
        return "(prod " + " ".join(to_sexpr(f) for f in e.factors) + ")"
    if isinstance(e, ScalarMul):
        return f"(smul {format_scalar(e.coeff)} {to_sexpr(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def tilde_depth(e: Expr) -> int:
    """Deepest nesting of Tilde nodes."""
    if isinstance(e, Tilde):
        return 1 + tilde_depth(e.arg)
    if isinstance(e, (Dagger, ScalarMul)):
        return tilde_depth(e.arg)
    if isinstance(e, Sum):
        return max(tilde_depth(t) for t in e.terms)
    if isinstance(e, Product):
        return max(tilde_depth(f) for f in e.factors)
    return 0
