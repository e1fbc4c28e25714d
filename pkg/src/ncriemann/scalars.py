"""Laurent polynomials in a unit-modulus parameter ``q`` over the Gaussian rationals.

A :class:`Scalar` is a finite sum ``sum_k c_k q^k`` where each ``c_k`` is an
exact Gaussian rational.  Conjugation sends ``i -> -i`` and ``q -> q^-1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

GaussQ = Tuple[Fraction, Fraction]
Number = Union[int, Fraction, complex, "Scalar"]

_ZERO = Fraction(0)


def _gmul(a: GaussQ, b: GaussQ) -> GaussQ:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _is_zero(c: GaussQ) -> bool:
    return c[0] == 0 and c[1] == 0


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Scalar:
    """Immutable element of ``Q(i)[q, q^-1]``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[int, GaussQ] | None = None):
        clean: Dict[int, GaussQ] = {}
        if terms:
            for k, c in terms.items():
                c = (Fraction(c[0]), Fraction(c[1]))
                if not _is_zero(c):
                    clean[int(k)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def coerce(cls, x: Number) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            return cls({0: (Fraction(x.real), Fraction(x.imag))})
        if isinstance(x, (int, Fraction)):
            return cls({0: (Fraction(x), _ZERO)})
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def gauss(cls, re, im=0, power: int = 0) -> "Scalar":
        return cls({power: (Fraction(re), Fraction(im))})

    @classmethod
    def q_power(cls, k: int) -> "Scalar":
        return cls({k: (Fraction(1), _ZERO)})

    # -- accessors ----------------------------------------------------
    @property
    def terms(self) -> Dict[int, GaussQ]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[int, GaussQ]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: (Fraction(1), _ZERO)}

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def constant(self) -> GaussQ:
        return self._terms.get(0, (_ZERO, _ZERO))

    def is_rational(self) -> bool:
        return self.is_constant() and self.constant()[1] == 0

    # -- ring operations ----------------------------------------------
    def __add__(self, other: Number) -> "Scalar":
        other = Scalar.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            a = out.get(k, (_ZERO, _ZERO))
            out[k] = (a[0] + c[0], a[1] + c[1])
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({k: (-c[0], -c[1]) for k, c in self._terms.items()})

    def __sub__(self, other: Number) -> "Scalar":
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other: Number) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[int, GaussQ] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                p = _gmul(c1, c2)
                a = out.get(k1 + k2, (_ZERO, _ZERO))
                out[k1 + k2] = (a[0] + p[0], a[1] + p[1])
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_unit(self) -> bool:
        """True for the invertible elements ``c q^k`` with ``c != 0``."""
        return len(self._terms) == 1

    def inverse(self) -> "Scalar":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of Q(i)[q, 1/q]")
        (k, (a, b)), = self._terms.items()
        norm = a * a + b * b
        return Scalar({-k: (a / norm, -b / norm)})

    def conj(self) -> "Scalar":
        return Scalar({-k: (c[0], -c[1]) for k, c in self._terms.items()})

    def evaluate(self, q: complex) -> complex:
        return sum(
            (complex(float(c[0]), float(c[1])) * q**k for k, c in self._terms.items()),
            0j,
        )

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, complex)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- rendering ----------------------------------------------------
    @staticmethod
    def _fmt_coeff(c: GaussQ) -> str:
        re, im = c
        if im == 0:
            return _fmt_fraction(re)
        if re == 0:
            if im == 1:
                return "i"
            if im == -1:
                return "-i"
            if im.denominator == 1:
                return f"{im.numerator}i"
            return f"({_fmt_fraction(im)})i"
        sign = "+" if im > 0 else "-"
        mag = abs(im)
        ims = "i" if mag == 1 else (f"{mag.numerator}i" if mag.denominator == 1 else f"({_fmt_fraction(mag)})i")
        return f"({_fmt_fraction(re)} {sign} {ims})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms.items():
            cs = self._fmt_coeff(c)
            if k == 0:
                parts.append(cs)
                continue
            qs = "q" if k == 1 else f"q^{k}"
            if cs == "1":
                parts.append(qs)
            elif cs == "-1":
                parts.append("-" + qs)
            else:
                parts.append(f"{cs} {qs}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"


ZERO = Scalar()
ONE = Scalar.gauss(1)
I = Scalar.gauss(0, 1)
Q = Scalar.q_power(1)
QBAR = Scalar.q_power(-1)
HALF = Scalar.gauss(Fraction(1, 2))
