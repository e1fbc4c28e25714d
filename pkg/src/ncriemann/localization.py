"""Localization at the central multiplicative set generated by |Z|^2 and |W|^2.

An element is stored as ``num * |Z|^(-2m) * |W|^(-2n)``.  Both denominators
are central and regular, so fractions are two-sided and compare by
cross-multiplication.  On the torus ``|Z|^2 = |W|^2 = 1`` and every
denominator is trivial.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Tuple

from .algebra import Algebra, Element, MixedAlgebraError, SphereAlgebra
from .scalars import Scalar, ZERO


class NotDivisible(ArithmeticError):
    pass


class NotLiftable(ArithmeticError):
    pass


class IrregularDenominator(ArithmeticError):
    pass


def divide_exact(a: Element, by: str) -> Element:
    """Return ``b`` with ``D b = a`` where ``D`` is ``|Z|^2`` (``by="Z"``) or ``|W|^2`` (``by="W"``)."""
    if by not in ("Z", "W"):
        raise ValueError(f"can only divide by |Z|^2 or |W|^2, got {by!r}")
    alg = a.algebra
    if not isinstance(alg, SphereAlgebra):
        return a  # ZZ* = WW* = 1 on the torus
    if by == "Z":
        for m in a.monomials():
            if m[0] < 1 or m[1] < 1:
                raise NotDivisible(f"monomial {a.render_monomial(m) or '1'} is not a multiple of Z Zs")
        return a.scale_monomials(lambda m: (m[0] - 1, m[1] - 1, m[2]))
    # (1 - ZZ*) b = a  <=>  a_s = b_s - b_(s-1) along each diagonal (i - j, k)
    diagonals = defaultdict(dict)
    for (i, j, k), c in a.items():
        diagonals[(i - j, k)][min(i, j)] = c
    out = {}
    for (d, k), entries in diagonals.items():
        total = ZERO
        positions = sorted(entries)
        for s in range(positions[0], positions[-1] + 1):
            total = total + entries.get(s, ZERO)
            if s < positions[-1] and not total.is_zero():
                base = (s + d, s, k) if d >= 0 else (s, s - d, k)
                out[base] = total
        if not total.is_zero():
            i0 = positions[0] + max(d, 0)
            raise NotDivisible(f"diagonal through Z^{i0} Zs^{i0 - d} W^({k}) has nonzero sum {total}")
    return Element(alg, out)


def regular_certificate(h: Element) -> Tuple[Scalar, int, int] | None:
    """Write ``h = c |Z|^2m |W|^2n`` with ``c`` a unit scalar, or return ``None``."""
    m = n = 0
    x = h
    if not x:
        return None
    if isinstance(x.algebra, SphereAlgebra):
        while True:
            try:
                x = divide_exact(x, "Z")
                m += 1
            except NotDivisible:
                break
        while True:
            try:
                y = divide_exact(x, "W")
            except NotDivisible:
                break
            if not y:
                break
            x, n = y, n + 1
    if not x.is_scalar() or not x.scalar_part().is_unit():
        return None
    return x.scalar_part(), m, n


def _denominator(alg: Algebra, m: int, n: int) -> Element:
    return alg.abs_z2() ** m * alg.abs_w2() ** n


class LocalizedElement:
    """``num * |Z|^(-2m) |W|^(-2n)`` in the Ore localization."""

    __slots__ = ("num", "m", "n")

    def __init__(self, num: Element, m: int = 0, n: int = 0):
        if m < 0 or n < 0:
            raise ValueError("denominator exponents must be non-negative")
        if not isinstance(num.algebra, SphereAlgebra):
            m = n = 0
        self.num = num
        self.m = m
        self.n = n

    @property
    def algebra(self) -> Algebra:
        return self.num.algebra

    @classmethod
    def coerce(cls, x) -> "LocalizedElement":
        if isinstance(x, LocalizedElement):
            return x
        if isinstance(x, Element):
            return cls(x)
        raise TypeError(f"cannot localize {type(x).__name__}")

    @classmethod
    def inverse_of(cls, h: Element) -> "LocalizedElement":
        cert = regular_certificate(h)
        if cert is None:
            raise IrregularDenominator(f"{h} is not of the form c |Z|^2m |W|^2n")
        c, m, n = cert
        return cls(h.algebra.scalar(c.inverse()), m, n)

    def denominator(self) -> Element:
        return _denominator(self.algebra, self.m, self.n)

    def _expand_to(self, m: int, n: int) -> Element:
        alg = self.algebra
        return self.num * _denominator(alg, m - self.m, n - self.n)

    # -- arithmetic ---------------------------------------------------
    def _other(self, other) -> "LocalizedElement | None":
        if isinstance(other, (LocalizedElement, Element)):
            other = LocalizedElement.coerce(other)
            if other.algebra is not self.algebra:
                raise MixedAlgebraError("mixed algebras in localization")
            return other
        if isinstance(other, (int, Fraction, complex, Scalar)):
            return LocalizedElement(self.algebra.scalar(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if (self.m, self.n) == (o.m, o.n):
            return LocalizedElement(self.num + o.num, self.m, self.n)
        m, n = max(self.m, o.m), max(self.n, o.n)
        return LocalizedElement(self._expand_to(m, n) + o._expand_to(m, n), m, n)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElement(-self.num, self.m, self.n)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, complex, Scalar)):
            return LocalizedElement(self.num * other, self.m, self.n)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return LocalizedElement(self.num * o.num, self.m + o.m, self.n + o.n)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, complex, Scalar)):
            return self * other
        o = self._other(other)
        if o is None:
            return NotImplemented
        return LocalizedElement(o.num * self.num, self.m + o.m, self.n + o.n)

    def star(self) -> "LocalizedElement":
        return LocalizedElement(self.num.star(), self.m, self.n)

    def derive(self, d) -> "LocalizedElement":
        # quotient rule; the denominator D is central and so is d(D)
        if self.m == 0 and self.n == 0:
            return LocalizedElement(d(self.num))
        D = self.denominator()
        return LocalizedElement(d(self.num) * D - self.num * d(D), 2 * self.m, 2 * self.n)

    # -- reduction / comparison ------------------------------------------
    def reduced(self) -> "LocalizedElement":
        num, m, n = self.num, self.m, self.n
        if not num:
            return LocalizedElement(num)
        while m > 0:
            try:
                num = divide_exact(num, "Z")
            except NotDivisible:
                break
            m -= 1
        while n > 0:
            try:
                num = divide_exact(num, "W")
            except NotDivisible:
                break
            n -= 1
        return LocalizedElement(num, m, n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        o = self._other(other) if not isinstance(other, LocalizedElement) else other
        if o is None:
            return NotImplemented
        if o.algebra is not self.algebra:
            return False
        m, n = max(self.m, o.m), max(self.n, o.n)
        return self._expand_to(m, n) == o._expand_to(m, n)

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.m, r.n))

    def is_hermitian(self) -> bool:
        return self.star() == self

    def is_central(self) -> bool:
        return self.num.is_central()

    def __str__(self) -> str:
        r = self.reduced()
        if r.m == 0 and r.n == 0:
            return str(r.num)
        den = " ".join(p for p in (
            ("AbsZ2" if r.m == 1 else f"AbsZ2^{r.m}") if r.m else "",
            ("AbsW2" if r.n == 1 else f"AbsW2^{r.n}") if r.n else "",
        ) if p)
        return f"({r.num}) / ({den})"

    def __repr__(self) -> str:
        return f"LocalizedElement({self})"


def lift_to_base(x) -> Element:
    if isinstance(x, Element):
        return x
    r = x.reduced()
    if r.m or r.n:
        raise NotLiftable(f"{x} has no representative in the base algebra")
    return r.num


def try_lift(x):
    """The base-algebra representative when it exists, else ``x`` unchanged."""
    try:
        return lift_to_base(x)
    except NotLiftable:
        return x


def localize(x) -> LocalizedElement:
    return LocalizedElement.coerce(x)
