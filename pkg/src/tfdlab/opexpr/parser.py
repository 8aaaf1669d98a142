"""Recursive-descent parser.

    expr   := term (('+' | '-') term)*
    term   := [number] ['*'] factor (['*'] factor)*  |  number
    factor := (number | ident | '~' '(' expr ')' | '(' expr ')') '†'*

A number at the start of a term becomes the coefficient of a ScalarMul;
juxtaposition is multiplication and binds tighter than '+'/'-'.
"""

from __future__ import annotations

from .lexer import ParseError, Token, tokenize
from .nodes import Atom, Dagger, Expr, Product, Scalar, ScalarMul, Sum, Tilde

_FACTOR_START = ("number", "ident", "tilde", "lparen")


def negate(e: Expr) -> Expr:
    if isinstance(e, Scalar):
        return Scalar(-e.value)
    if isinstance(e, ScalarMul):
        return ScalarMul(-e.coeff, e.arg)
    return ScalarMul(-1, e)


class _Parser:
    def __init__(self, tokens: list[Token], end: int):
        self.tokens = tokens
        self.i = 0
        self.end = end

    def peek(self, k: int = 0) -> Token | None:
        j = self.i + k
        return self.tokens[j] if j < len(self.tokens) else None

    def kind(self, k: int = 0) -> str | None:
        t = self.peek(k)
        return t.kind if t else None

    def pos(self) -> int:
        t = self.peek()
        return t.pos if t else self.end

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self) -> Expr:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        e = self.expr()
        if self.peek() is not None:
            t = self.peek()
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.kind() in ("plus", "minus"):
            op = self.take()
            if self.peek() is None:
                raise ParseError(f"dangling {op.text!r}", op.pos)
            t = self.term()
            terms.append(negate(t) if op.kind == "minus" else t)
        return terms[0] if len(terms) == 1 else Sum(terms)

    def _leading_number(self) -> complex | None:
        # a literal only counts as coefficient when no postfix dagger follows it
        if self.kind() == "number" and self.kind(1) != "dagger":
            return self.take().value
        if self.kind() == "minus" and self.kind(1) == "number" and self.kind(2) != "dagger":
            self.take()
            return -self.take().value
        return None

    def term(self) -> Expr:
        start = self.pos()
        coeff = self._leading_number()
        if coeff is None and self.kind() == "minus":
            self.take()
            return negate(self.term())
        factors = []
        while True:
            if self.kind() == "star":
                star = self.take()
                if self.kind() not in _FACTOR_START:
                    raise ParseError("dangling '*'", star.pos)
            elif self.kind() not in _FACTOR_START:
                break
            factors.append(self.factor())
        if coeff is not None:
            if not factors:
                return Scalar(coeff)
            return ScalarMul(coeff, factors[0] if len(factors) == 1 else Product(factors))
        if not factors:
            t = self.peek()
            raise ParseError(f"unexpected {t.text!r}" if t else "expected an operand", t.pos if t else start)
        return factors[0] if len(factors) == 1 else Product(factors)

    def factor(self) -> Expr:
        t = self.take()
        if t.kind == "number":
            node: Expr = Scalar(t.value)
        elif t.kind == "ident":
            node = Atom(t.text)
        elif t.kind == "tilde":
            if self.kind() != "lparen":
                raise ParseError("expected '(' after '~'", self.pos())
            node = Tilde(self._group(self.take()))
        else:  # lparen
            node = self._group(t)
        while self.kind() == "dagger":
            self.take()
            node = Dagger(node)
        return node

    def _group(self, lparen: Token) -> Expr:
        if self.kind() == "rparen":
            raise ParseError("empty parentheses", self.pos())
        inner = self.expr()
        if self.kind() != "rparen":
            if self.peek() is None:
                raise ParseError("unbalanced '('", lparen.pos)
            raise ParseError(f"expected ')' but found {self.peek().text!r}", self.pos())
        self.take()
        return inner


def parse(tokens_or_text) -> Expr:
    """Parse a token list (or raw text) into an expression tree."""
    if isinstance(tokens_or_text, str):
        text = tokens_or_text
        tokens = tokenize(text)
        end = len(text.encode("utf-8"))
    else:
        tokens = list(tokens_or_text)
        end = tokens[-1].pos + len(tokens[-1].text.encode("utf-8")) if tokens else 0
    return _Parser(tokens, end).parse()
