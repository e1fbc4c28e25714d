"""Normal-form arithmetic in the noncommutative torus and 3-sphere.

Both algebras are generated by ``Z, Z*, W, W*`` with ``WZ = qZW``.

* Torus: ``Z`` and ``W`` are unitary, so the monomials ``Z^m W^n``
  (``m, n`` integers) form a basis.  Monomial key: ``(m, n)``.
* Sphere: ``Z`` commutes with ``Z*``, ``W`` with ``W*``, and
  ``WW* = 1 - ZZ*``.  Basis ``Z^i (Z*)^j W^(k)`` with ``W^(k) = (W*)^-k``
  for negative ``k``.  Monomial key: ``(i, j, k)``.

Products are computed directly in the basis: W-letters are moved to the right
of Z-letters (each swap costs a power of ``q``), and every ``W W*`` pair is
replaced by the central element ``1 - ZZ*``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Sequence, Tuple

from .scalars import ONE, Q, QBAR, Scalar, ZERO

Monomial = Tuple[int, ...]
Word = Tuple[str, ...]
GENERATORS = ("Z", "Zs", "W", "Ws")
STAR_OF = {"Z": "Zs", "Zs": "Z", "W": "Ws", "Ws": "W"}


class MixedAlgebraError(ValueError):
    pass


class Algebra:
    """A presented *-algebra with a fixed monomial basis."""

    name: str = ""
    unit_monomial: Monomial = ()

    # subclasses implement the following four
    def mono_mul(self, a: Monomial, b: Monomial) -> List[Tuple[Scalar, Monomial]]:
        raise NotImplementedError

    def mono_star(self, a: Monomial) -> Tuple[Scalar, Monomial]:
        raise NotImplementedError

    def generator_monomial(self, g: str) -> Monomial:
        raise NotImplementedError

    def mono_word(self, a: Monomial) -> Word:
        raise NotImplementedError

    def mono_tokens(self, a: Monomial) -> List[Tuple[str, int]]:
        raise NotImplementedError

    def relations(self) -> List[Tuple[str, list, list]]:
        """Defining relations as ``(label, lhs, rhs)`` with sides lists of ``(Scalar, Word)``."""
        raise NotImplementedError

    def random_monomial(self, rng: random.Random) -> Monomial:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<algebra {self.name}>"

    # -- convenience constructors -------------------------------------
    def element(self, terms: Dict[Monomial, Scalar] | None = None) -> "Element":
        return Element(self, terms or {})

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {self.unit_monomial: ONE})

    def scalar(self, s) -> "Element":
        return Element(self, {self.unit_monomial: Scalar.coerce(s)})

    def gen(self, g: str) -> "Element":
        return Element(self, {self.generator_monomial(g): ONE})

    @property
    def Z(self) -> "Element":
        return self.gen("Z")

    @property
    def Zs(self) -> "Element":
        return self.gen("Zs")

    @property
    def W(self) -> "Element":
        return self.gen("W")

    @property
    def Ws(self) -> "Element":
        return self.gen("Ws")

    def X(self, n: int) -> "Element":
        """The hermitian coordinates ``X^1 .. X^4``."""
        half = Scalar.gauss(Fraction(1, 2))
        minus_half_i = Scalar.gauss(0, Fraction(-1, 2))  # 1/(2i)
        if n == 1:
            return (self.Z + self.Zs) * half
        if n == 2:
            return (self.Z - self.Zs) * minus_half_i
        if n == 3:
            return (self.W + self.Ws) * half
        if n == 4:
            return (self.W - self.Ws) * minus_half_i
        raise ValueError(f"no coordinate X{n}")

    def abs_z2(self) -> "Element":
        return self.Z * self.Zs

    def abs_w2(self) -> "Element":
        return self.W * self.Ws

    def word(self, w: Sequence[str]) -> "Element":
        out = self.one()
        for g in w:
            out = out * self.gen(g)
        return out

    def combination(self, side) -> "Element":
        out = self.zero()
        for s, w in side:
            out = out + self.word(w) * s
        return out

    def random_element(self, rng: random.Random, n_terms: int = 3, q_range: int = 1,
                       coeff_range: int = 2, gaussian: bool = True) -> "Element":
        terms: Dict[Monomial, Scalar] = {}
        for _ in range(n_terms):
            m = self.random_monomial(rng)
            re = Fraction(rng.randint(-coeff_range, coeff_range), rng.choice((1, 2)))
            im = Fraction(rng.randint(-coeff_range, coeff_range), rng.choice((1, 2))) if gaussian else 0
            c = Scalar.gauss(re, im, rng.randint(-q_range, q_range))
            terms[m] = terms.get(m, ZERO) + c
        return Element(self, terms)


class TorusAlgebra(Algebra):
    name = "torus"
    unit_monomial = (0, 0)

    def mono_mul(self, a, b):
        # W^n Z^m = q^(nm) Z^m W^n
        return [(Scalar.q_power(a[1] * b[0]), (a[0] + b[0], a[1] + b[1]))]

    def mono_star(self, a):
        return Scalar.q_power(a[0] * a[1]), (-a[0], -a[1])

    def generator_monomial(self, g):
        return {"Z": (1, 0), "Zs": (-1, 0), "W": (0, 1), "Ws": (0, -1)}[g]

    def mono_word(self, a):
        m, n = a
        return ("Z",) * m + ("Zs",) * (-m) + ("W",) * n + ("Ws",) * (-n)

    def mono_tokens(self, a):
        m, n = a
        out = []
        if m:
            out.append(("Z" if m > 0 else "Zs", abs(m)))
        if n:
            out.append(("W" if n > 0 else "Ws", abs(n)))
        return out

    def relations(self):
        one = ()
        return [
            ("WZ = qZW", [(ONE, ("W", "Z"))], [(Q, ("Z", "W"))]),
            ("W*Z = q̄ZW*", [(ONE, ("Ws", "Z"))], [(QBAR, ("Z", "Ws"))]),
            ("WZ* = q̄Z*W", [(ONE, ("W", "Zs"))], [(QBAR, ("Zs", "W"))]),
            ("W*Z* = qZ*W*", [(ONE, ("Ws", "Zs"))], [(Q, ("Zs", "Ws"))]),
            ("ZZ* = 1", [(ONE, ("Z", "Zs"))], [(ONE, one)]),
            ("Z*Z = 1", [(ONE, ("Zs", "Z"))], [(ONE, one)]),
            ("WW* = 1", [(ONE, ("W", "Ws"))], [(ONE, one)]),
            ("W*W = 1", [(ONE, ("Ws", "W"))], [(ONE, one)]),
        ]

    def random_monomial(self, rng):
        return (rng.randint(-2, 2), rng.randint(-2, 2))


class SphereAlgebra(Algebra):
    name = "sphere"
    unit_monomial = (0, 0, 0)

    def mono_mul(self, a, b):
        i1, j1, k1 = a
        i2, j2, k2 = b
        phase = Scalar.q_power(k1 * (i2 - j2))
        i, j, k = i1 + i2, j1 + j2, k1 + k2
        if k1 * k2 >= 0:
            return [(phase, (i, j, k))]
        # W^a (W*)^b = (1 - ZZ*)^min(a,b) W^(a-b), and WW* is central
        t = min(abs(k1), abs(k2))
        out = []
        for s in range(t + 1):
            c = comb(t, s) * (-1) ** s
            out.append((phase * c, (i + s, j + s, k)))
        return out

    def mono_star(self, a):
        i, j, k = a
        # (Z^i Z*^j W^(k))* = W^(-k) Z^j Z*^i
        return Scalar.q_power(-k * (j - i)), (j, i, -k)

    def generator_monomial(self, g):
        return {"Z": (1, 0, 0), "Zs": (0, 1, 0), "W": (0, 0, 1), "Ws": (0, 0, -1)}[g]

    def mono_word(self, a):
        i, j, k = a
        return ("Z",) * i + ("Zs",) * j + ("W",) * k + ("Ws",) * (-k)

    def mono_tokens(self, a):
        i, j, k = a
        out = []
        if i:
            out.append(("Z", i))
        if j:
            out.append(("Zs", j))
        if k:
            out.append(("W" if k > 0 else "Ws", abs(k)))
        return out

    def relations(self):
        one = ()
        return [
            ("WZ = qZW", [(ONE, ("W", "Z"))], [(Q, ("Z", "W"))]),
            ("W*Z = q̄ZW*", [(ONE, ("Ws", "Z"))], [(QBAR, ("Z", "Ws"))]),
            ("WZ* = q̄Z*W", [(ONE, ("W", "Zs"))], [(QBAR, ("Zs", "W"))]),
            ("W*Z* = qZ*W*", [(ONE, ("Ws", "Zs"))], [(Q, ("Zs", "Ws"))]),
            ("Z*Z = ZZ*", [(ONE, ("Zs", "Z"))], [(ONE, ("Z", "Zs"))]),
            ("W*W = WW*", [(ONE, ("Ws", "W"))], [(ONE, ("W", "Ws"))]),
            ("WW* = 1 - ZZ*", [(ONE, ("W", "Ws"))], [(ONE, one), (-ONE, ("Z", "Zs"))]),
        ]

    def random_monomial(self, rng):
        return (rng.randint(0, 2), rng.randint(0, 2), rng.randint(-2, 2))


TORUS = TorusAlgebra()
SPHERE = SphereAlgebra()
ALGEBRAS = {"torus": TORUS, "sphere": SPHERE}


def _mono_sort_key(m: Monomial):
    return (sum(abs(x) for x in m), tuple(abs(x) for x in m), m)


class Element:
    """Immutable finite linear combination of basis monomials."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: Algebra, terms: Dict[Monomial, Scalar]):
        self.algebra = algebra
        self._terms = {m: c for m, c in terms.items() if not c.is_zero()}
        self._hash = None

    # -- accessors ----------------------------------------------------
    def items(self) -> Iterable[Tuple[Monomial, Scalar]]:
        return self._terms.items()

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def coefficient(self, m: Monomial) -> Scalar:
        return self._terms.get(m, ZERO)

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms, key=_mono_sort_key)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(m == self.algebra.unit_monomial for m in self._terms)

    def scalar_part(self) -> Scalar:
        return self._terms.get(self.algebra.unit_monomial, ZERO)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "Element") -> None:
        if other.algebra is not self.algebra:
            raise MixedAlgebraError(f"cannot combine {self.algebra.name} and {other.algebra.name} elements")

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, complex, Scalar)):
            return self.algebra.scalar(other)
        raise TypeError

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, complex, Scalar)):
            s = Scalar.coerce(other)
            return Element(self.algebra, {m: c * s for m, c in self._terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        alg = self.algebra
        out: Dict[Monomial, Scalar] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                c12 = c1 * c2
                for phase, m in alg.mono_mul(m1, m2):
                    c = c12 * phase
                    out[m] = out[m] + c if m in out else c
        return Element(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, complex, Scalar)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "Element":
        """Inverse of a unit: a unit scalar times an invertible basis monomial."""
        if len(self._terms) != 1:
            raise ZeroDivisionError("only single-term units are invertible")
        (m, c), = self._terms.items()
        if not c.is_unit():
            raise ZeroDivisionError(f"coefficient {c} is not invertible")
        alg = self.algebra
        if m == alg.unit_monomial:
            return Element(alg, {m: c.inverse()})
        if isinstance(alg, TorusAlgebra):
            inv_m = (-m[0], -m[1])
            (phase, _), = alg.mono_mul(m, inv_m)
            return Element(alg, {inv_m: (c * phase).inverse()})
        raise ZeroDivisionError(f"{self} is not invertible in the {alg.name} algebra")

    def star(self) -> "Element":
        alg = self.algebra
        out: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            phase, ms = alg.mono_star(m)
            v = c.conj() * phase
            out[ms] = out[ms] + v if ms in out else v
        return Element(alg, out)

    def commutator(self, other: "Element") -> "Element":
        return self * other - other * self

    def is_central(self) -> bool:
        return all(self.commutator(self.algebra.gen(g)).is_zero() for g in GENERATORS)

    def is_hermitian(self) -> bool:
        return self.star() == self

    def scale_monomials(self, fn) -> "Element":
        return Element(self.algebra, {fn(m): c for m, c in self._terms.items()})

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, complex, Scalar)):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra.name, frozenset(self._terms.items())))
        return self._hash

    # -- rendering ----------------------------------------------------
    def render_monomial(self, m: Monomial) -> str:
        toks = self.algebra.mono_tokens(m)
        out = ""
        prev = None
        for name, p in toks:
            tok = name if p == 1 else f"{name}^{p}"
            # separate letters of the same family (Z Zs, W Ws) for readability
            if prev is not None and prev[0] == name[0]:
                out += " "
            out += tok
            prev = name
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self._terms[m]
            ms = self.render_monomial(m)
            cs = str(c)
            if not ms:
                parts.append(cs if len(c.terms) == 1 else f"({cs})")
            elif c.is_one():
                parts.append(ms)
            elif c == -ONE:
                parts.append("-" + ms)
            elif len(c.terms) == 1:
                parts.append(f"{cs} {ms}")
            else:
                parts.append(f"({cs}) {ms}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"Element[{self.algebra.name}]({self})"


def nf_product(a: Element, b: Element) -> Element:
    return a * b


def star(a: Element) -> Element:
    return a.star()


def is_central(a: Element) -> bool:
    return a.is_central()


def is_hermitian(a: Element) -> bool:
    return a.is_hermitian()
