"""A small language for operators on the doubled space.

Syntax: ``a``, ``b`` for the mode annihilator, ``†`` (or ``'``) for the
adjoint, ``~( ... )`` for tilde conjugation, juxtaposition or ``*`` for
products, ``+``/``-`` for sums and literals like ``2``, ``3i``, ``(1-2i)``.
"""

from .evaluate import EvalContext, evaluate, evaluate_physical
from .lexer import ParseError, Token, tokenize
from .nodes import (
    Atom,
    Dagger,
    Expr,
    Product,
    Scalar,
    ScalarMul,
    Sum,
    Tilde,
    format_expr,
    format_scalar,
    tilde_depth,
    to_sexpr,
)
from .parser import parse
from .rewrite import tilde_rewrite

format = format_expr

__all__ = [
    "Atom",
    "Dagger",
    "EvalContext",
    "Expr",
    "ParseError",
    "Product",
    "Scalar",
    "ScalarMul",
    "Sum",
    "Tilde",
    "Token",
    "evaluate",
    "evaluate_physical",
    "format",
    "format_expr",
    "format_scalar",
    "parse",
    "tilde_depth",
    "tilde_rewrite",
    "to_sexpr",
    "tokenize",
]
