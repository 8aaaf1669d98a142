from __future__ import annotations

import re
from dataclasses import dataclass

_NUM = r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?"
_TOKEN_RE = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<cnumber>\((?P<re>-?{_NUM})(?P<sign>[+-])(?P<im>{_NUM})i\))
  | (?P<number>{_NUM}(?:i(?![A-Za-z0-9_]))?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<plus>\+)
  | (?P<minus>-)
  | (?P<star>\*)
  | (?P<dagger>†|')
  | (?P<tilde>~)
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    """Lexing or parsing failure; ``pos`` is the byte offset into the UTF-8 source."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at offset {pos}")
        self.message = message
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int
    value: complex | None = None


def _number_value(m: re.Match) -> complex:
    if m.group("cnumber"):
        im = float(m.group("im"))
        return complex(float(m.group("re")), -im if m.group("sign") == "-" else im)
    text = m.group("number")
    if text.endswith("i"):
        return complex(0.0, float(text[:-1]))
    return complex(float(text), 0.0)


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    byte_pos = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", byte_pos)
        kind = m.lastgroup
        if kind in ("re", "sign", "im"):
            kind = "cnumber"
        if kind != "ws":
            if kind in ("number", "cnumber"):
                tokens.append(Token("number", m.group(0), byte_pos, _number_value(m)))
            else:
                tokens.append(Token(kind, m.group(0), byte_pos))
        byte_pos += len(m.group(0).encode("utf-8"))
        i = m.end()
    return tokens
