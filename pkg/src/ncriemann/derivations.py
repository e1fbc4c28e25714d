"""Derivations given by their values on generators, extended by Leibniz' rule."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

from .algebra import GENERATORS, STAR_OF, Algebra, Element, MixedAlgebraError, Monomial, Word
from .scalars import Scalar


class Derivation:
    """A derivation of a presented algebra.

    Values on all four generators are stored explicitly, so maps that are not
    hermitian (or that do not respect the relations) can still be built and
    then rejected by :meth:`is_hermitian` / :meth:`check_well_defined`.
    """

    def __init__(self, algebra: Algebra, values: Mapping[str, Element], label: str = "d"):
        missing = set(GENERATORS) - set(values)
        if missing:
            raise ValueError(f"derivation {label!r} lacks values on {sorted(missing)}")
        for v in values.values():
            if v.algebra is not algebra:
                raise MixedAlgebraError(f"derivation {label!r} mixes algebras")
        self.algebra = algebra
        self.values: Dict[str, Element] = {g: values[g] for g in GENERATORS}
        self.label = label
        self._cache: Dict[Monomial, Element] = {}

    @classmethod
    def hermitian(cls, algebra: Algebra, on_z: Element, on_w: Element, label: str = "d") -> "Derivation":
        """Hermitian derivation fixed by its values on ``Z`` and ``W``."""
        return cls(algebra, {"Z": on_z, "Zs": on_z.star(), "W": on_w, "Ws": on_w.star()}, label)

    @classmethod
    def zero(cls, algebra: Algebra, label: str = "0") -> "Derivation":
        return cls(algebra, {g: algebra.zero() for g in GENERATORS}, label)

    def apply_word(self, word: Word) -> Element:
        alg = self.algebra
        gens = [alg.gen(g) for g in word]
        suffix = [alg.one()] * (len(word) + 1)
        for p in range(len(word) - 1, -1, -1):
            suffix[p] = gens[p] * suffix[p + 1]
        out = alg.zero()
        prefix = alg.one()
        for p, g in enumerate(word):
            v = self.values[g]
            if v:
                out = out + prefix * v * suffix[p + 1]
            prefix = prefix * gens[p]
        return out

    def _apply_monomial(self, m: Monomial) -> Element:
        hit = self._cache.get(m)
        if hit is None:
            hit = self.apply_word(self.algebra.mono_word(m))
            self._cache[m] = hit
        return hit

    def __call__(self, a):
        if not isinstance(a, Element):
            # localized elements know how to differentiate themselves
            return a.derive(self)
        if a.algebra is not self.algebra:
            raise MixedAlgebraError("derivation applied to an element of another algebra")
        out = self.algebra.zero()
        for m, c in a.items():
            out = out + self._apply_monomial(m) * c
        return out

    apply = __call__

    # -- structural checks ----------------------------------------------
    def relation_residuals(self) -> List[tuple]:
        out = []
        for label, lhs, rhs in self.algebra.relations():
            res = self.algebra.zero()
            for s, w in lhs:
                res = res + self.apply_word(w) * s
            for s, w in rhs:
                res = res - self.apply_word(w) * s
            out.append((label, res))
        return out

    def check_well_defined(self) -> bool:
        return all(r.is_zero() for _, r in self.relation_residuals())

    def hermitian_conjugate(self) -> "Derivation":
        vals = {g: self.values[STAR_OF[g]].star() for g in GENERATORS}
        return Derivation(self.algebra, vals, f"{self.label}*")

    def is_hermitian(self) -> bool:
        return self.hermitian_conjugate() == self

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.algebra is other.algebra and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values.items()))

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.algebra, {g: self.values[g] + other.values[g] for g in GENERATORS},
                          f"({self.label}+{other.label})")

    def __mul__(self, s) -> "Derivation":
        return Derivation(self.algebra, {g: v * s for g, v in self.values.items()}, f"{s}*{self.label}")

    __rmul__ = __mul__

    def __repr__(self) -> str:
        vals = ", ".join(f"{g}->{self.values[g]}" for g in GENERATORS)
        return f"Derivation({self.label}: {vals})"


def bracket(d1: Derivation, d2: Derivation) -> Derivation:
    if d1.algebra is not d2.algebra:
        raise MixedAlgebraError("bracket of derivations on different algebras")
    vals = {g: d1(d2.values[g]) - d2(d1.values[g]) for g in GENERATORS}
    return Derivation(d1.algebra, vals, f"[{d1.label},{d2.label}]")


def linear_combination(coeffs: Sequence, derivs: Sequence[Derivation], label: str = "d") -> Derivation:
    alg = derivs[0].algebra
    vals = {g: alg.zero() for g in GENERATORS}
    for c, d in zip(coeffs, derivs):
        if c:
            for g in GENERATORS:
                vals[g] = vals[g] + d.values[g] * Fraction(c)
    return Derivation(alg, vals, label)


def _flatten(d: Derivation) -> Dict[tuple, Fraction]:
    """Real coordinates of a derivation as a sparse vector over Q."""
    vec: Dict[tuple, Fraction] = {}
    for g in GENERATORS:
        for m, s in d.values[g].items():
            for k, (re, im) in s.items():
                if re:
                    vec[(g, m, k, 0)] = re
                if im:
                    vec[(g, m, k, 1)] = im
    return vec


def solve_rational(columns: Sequence[Dict[tuple, Fraction]], target: Dict[tuple, Fraction]) -> List[Fraction] | None:
    """Rational ``x`` with ``sum_j x_j columns[j] = target``, or ``None``."""
    keys = sorted(set().union(target, *columns), key=repr)
    n = len(columns)
    rows = [[Fraction(col.get(k, 0)) for col in columns] + [Fraction(target.get(k, 0))] for k in keys]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[n] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


class LieAlgebra:
    """Real Lie algebra spanned by a basis of derivations.

    ``structure[a][b]`` holds the rational coordinates of ``[d_a, d_b]`` in the basis.
    """

    def __init__(self, basis: Sequence[Derivation]):
        if not basis:
            raise ValueError("empty basis")
        self.basis = list(basis)
        self.algebra = basis[0].algebra
        n = len(basis)
        cols = [_flatten(d) for d in self.basis]
        self.structure: List[List[List[Fraction] | None]] = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                self.structure[a][b] = solve_rational(cols, _flatten(bracket(self.basis[a], self.basis[b])))

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def closed(self) -> bool:
        return all(c is not None for row in self.structure for c in row)

    @property
    def abelian(self) -> bool:
        return all(c is not None and not any(c) for row in self.structure for c in row)

    def constants(self, a: int, b: int) -> List[Fraction]:
        c = self.structure[a][b]
        if c is None:
            raise ValueError(f"[d{a + 1}, d{b + 1}] is not in the span of the basis")
        return c

    def change_basis(self, matrix: Sequence[Sequence[int]]) -> "LieAlgebra":
        """New basis ``d'_a = sum_b matrix[b][a] d_b``."""
        n = len(self.basis)
        new = [linear_combination([matrix[b][a] for b in range(n)], self.basis, f"d{a + 1}'") for a in range(n)]
        return LieAlgebra(new)


# -- the two example Lie algebras -------------------------------------------

def sphere_derivations(algebra) -> List[Derivation]:
    i = Scalar.gauss(0, 1)
    z2, w2 = algebra.abs_z2(), algebra.abs_w2()
    return [
        Derivation.hermitian(algebra, algebra.Z * i, algebra.zero(), "d1"),
        Derivation.hermitian(algebra, algebra.zero(), algebra.W * i, "d2"),
        Derivation.hermitian(algebra, algebra.Z * w2, -(algebra.W * z2), "d3"),
    ]


def torus_derivations(algebra) -> List[Derivation]:
    i = Scalar.gauss(0, 1)
    return [
        Derivation.hermitian(algebra, algebra.Z * i, algebra.zero(), "d1"),
        Derivation.hermitian(algebra, algebra.zero(), algebra.W * i, "d2"),
    ]
