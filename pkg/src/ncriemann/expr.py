"""Parser for algebra expressions such as ``W*Z``, ``X1^2 + 1/2 q^-1 AbsZ2``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT ["/" INT] | "i" | "q" | GENERATOR | "(" expr ")"

Generators: ``Z Zs W Ws X1 X2 X3 X4 AbsZ2 AbsW2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .algebra import Algebra, Element
from .scalars import I, Q

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1):
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.toks = _tokenize(text)
        self.i = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.peek()
        return tok[0] == "op" and tok[1] == value

    def expr(self) -> Element:
        out = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Element:
        out = self.unary()
        while self.at("*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> Element:
        if self.at("-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Element:
        base = self.atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            tok = self.take("int")
            try:
                return base ** (sign * int(tok[1]))
            except ZeroDivisionError as e:
                raise ParseError(str(e), tok[2]) from None
        return base

    def atom(self) -> Element:
        kind, val, pos = self.peek()
        alg = self.alg
        if kind == "int":
            self.take()
            num = Fraction(int(val))
            if self.at("/") and self.toks[self.i + 1][0] == "int":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise ParseError("division by zero", pos)
                num = num / den
            return alg.scalar(num)
        if kind == "name":
            self.take()
            if val == "i":
                return alg.scalar(I)
            if val == "q":
                return alg.scalar(Q)
            if val in ("Z", "Zs", "W", "Ws"):
                return alg.gen(val)
            if val in ("X1", "X2", "X3", "X4"):
                return alg.X(int(val[1]))
            if val == "AbsZ2":
                return alg.abs_z2()
            if val == "AbsW2":
                return alg.abs_w2()
            raise ParseError(f"unknown symbol {val!r}", pos)
        if kind == "op" and val == "(":
            self.take()
            out = self.expr()
            self.take("op", ")")
            return out
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str, algebra: Algebra) -> Element:
    p = _Parser(text, algebra)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return out
