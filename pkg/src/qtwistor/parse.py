"""Text form of algebra elements.

    expr   := term (('+' | '-') term)*
    term   := factor+
    factor := atom ['^' int] ["'"]
    atom   := z1 | z2 | z3 | z4 | a | b | R | q | rational | '(' expr ')'

Juxtaposition is the product and a trailing apostrophe the adjoint.  Negative
exponents are accepted on scalars only.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .ncalg import Element, NormalMonomial, _ORDER
from .scalar import QRational, qpow, render_laurent

MAX_EXPONENT = 256


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<z>z[1-4])|(?P<num>\d+(?:/\d+)?)|(?P<name>[abRq])|(?P<op>[-+^'()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def expr(self) -> Element:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _starts_factor(self) -> bool:
        kind, v, _ = self.peek()
        return kind in ("z", "num", "name") or (kind == "op" and v == "(")

    def term(self) -> Element:
        if not self._starts_factor():
            kind, v, pos = self.peek()
            raise ParseError(f"expected a factor, found {v or 'end of input'!r}", pos)
        acc = self.factor()
        while self._starts_factor():
            acc = acc * self.factor()
        return acc

    def factor(self) -> Element:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            kind, v, pos = self.take()
            if kind != "num" or "/" in v:
                raise ParseError("exponent must be an integer", pos)
            e = int(v)
            if e > MAX_EXPONENT:
                raise ParseError(f"exponent {e} exceeds {MAX_EXPONENT}", pos)
            if neg:
                c = _as_scalar(base)
                if c is None:
                    raise ParseError("negative exponent on a non-scalar", pos)
                if c.is_zero():
                    raise ParseError("zero raised to a negative power", pos)
                base = Element.scalar(c ** (-e))
            else:
                base = base**e
        while self.peek()[1] == "'":
            self.take()
            base = base.adjoint()
        return base

    def atom(self) -> Element:
        kind, v, pos = self.take()
        if kind == "z":
            return Element.letter(int(v[1]))
        if kind == "num":
            return Element.scalar(Fraction(v))
        if kind == "name":
            if v == "q":
                return Element.scalar(qpow(1))
            from .instanton import instanton_generators

            a, b, R = instanton_generators()
            return {"a": a, "b": b, "R": R}[v]
        if v == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def _as_scalar(x: Element) -> QRational | None:
    if not x.terms:
        return QRational.const(0)
    if set(x.terms) == {(0,) * 8}:
        return x.terms[(0,) * 8]
    return None


def parse(text: str) -> Element:
    p = _Parser(text)
    out = p.expr()
    kind, v, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {v!r}", pos)
    return out


def render_monomial(m: NormalMonomial) -> str:
    parts = []
    for l, e in zip(_ORDER, m):
        if e == 0:
            continue
        s = f"z{abs(l)}"
        if e > 1:
            s += f"^{e}"
        if l < 0:
            s += "'"
        parts.append(s)
    return " ".join(parts)


def render_scalar(c: QRational) -> str:
    if c.is_laurent():
        return render_laurent(c.num)
    return str(c)


def _single_term(c: QRational) -> bool:
    return c.is_laurent() and len(c.num.to_dict()) == 1


def render(x: Element) -> str:
    if x.is_zero():
        return "0"
    out = []
    for m, c in x:
        mono = render_monomial(m)
        neg = False
        if _single_term(c):
            (e, v), = c.num.to_dict().items()
            neg = v < 0
            cs = render_laurent(c.num.scale(-1) if neg else c.num)
            if mono and cs == "1":
                cs = ""
        else:
            cs = f"({render_scalar(c)})" if mono or out else render_scalar(c)
        body = " ".join(s for s in (cs, mono) if s)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)
