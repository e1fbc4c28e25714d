"""Free right modules with hermitian forms, and real metric calculi.

Module elements are written in a fixed basis ``E_1 .. E_n`` as
``U = E_a U^a``; the algebra acts by right multiplication on coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .algebra import Algebra, Element
from .checks import Report
from .derivations import LieAlgebra
from .localization import IrregularDenominator, regular_certificate


class RankMismatch(ValueError):
    pass


class NotPseudoInverse(ValueError):
    pass


class ModuleElement:
    """``U = E_a U^a`` with coordinates in the algebra or its localization."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        self.coords = tuple(coords)

    @classmethod
    def basis(cls, algebra: Algebra, rank: int, a: int) -> "ModuleElement":
        return cls([algebra.one() if b == a else algebra.zero() for b in range(rank)])

    @classmethod
    def zero(cls, algebra: Algebra, rank: int) -> "ModuleElement":
        return cls([algebra.zero()] * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _same_rank(self, other: "ModuleElement") -> None:
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._same_rank(other)
        return ModuleElement([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        self._same_rank(other)
        return ModuleElement([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "ModuleElement":
        return ModuleElement([-a for a in self.coords])

    def __mul__(self, a) -> "ModuleElement":
        """Right action ``U a``."""
        return ModuleElement([u * a for u in self.coords])

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.rank == other.rank and all(a == b for a, b in zip(self.coords, other.coords))

    def __str__(self) -> str:
        parts = [f"E{a + 1}*({c})" for a, c in enumerate(self.coords) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class HermitianForm:
    """``h(U, V) = sum_ab (U^a)* h_ab V^b`` for a matrix with ``h_ab* = h_ba``."""

    def __init__(self, matrix: Sequence[Sequence[Element]], check: bool = True):
        self.matrix: List[List[Element]] = [list(row) for row in matrix]
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise RankMismatch("metric matrix must be square")
        self.algebra = self.matrix[0][0].algebra
        if check and not self.is_hermitian():
            raise ValueError("metric matrix is not hermitian: h_ab* != h_ba")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def __getitem__(self, ab):
        a, b = ab
        return self.matrix[a][b]

    def is_hermitian(self) -> bool:
        n = self.rank
        return all(self.matrix[a][b].star() == self.matrix[b][a] for a in range(n) for b in range(n))

    def __call__(self, U: ModuleElement, V: ModuleElement):
        return h_eval(self, U, V)


def h_eval(form: HermitianForm, U: ModuleElement, V: ModuleElement):
    n = form.rank
    if U.rank != n or V.rank != n:
        raise RankMismatch(f"form has rank {n}, got {U.rank} and {V.rank}")
    out = form.algebra.zero()
    for a in range(n):
        ua = U.coords[a]
        if not ua:
            continue
        left = ua.star()
        for b in range(n):
            hab = form.matrix[a][b]
            vb = V.coords[b]
            if hab and vb:
                out = (left * hab) * vb + out
    return out


@dataclass
class RealMetricCalculus:
    """Metric module, Lie algebra of hermitian derivations and anchor ``phi(d_a) = E_a``.

    ``embedding`` optionally realizes each ``E_a`` in a free ambient module
    (lists of components); it is used for freeness spot checks and for
    comparing ``h`` with the induced canonical metric.
    """

    name: str
    algebra: Algebra
    form: HermitianForm
    lie: LieAlgebra
    embedding: List[List[Element]] | None = None

    @property
    def rank(self) -> int:
        return self.form.rank

    def E(self, a: int) -> ModuleElement:
        return ModuleElement.basis(self.algebra, self.rank, a)

    def phi(self, coeffs: Sequence[Fraction]) -> ModuleElement:
        """Anchor map on a rational combination ``sum_a c_a d_a``."""
        return ModuleElement([self.algebra.scalar(Fraction(c)) for c in coeffs])

    def h(self, a: int, b: int) -> Element:
        return self.form.matrix[a][b]

    def ambient(self, coords: Sequence[Element]) -> List[Element]:
        if self.embedding is None:
            raise ValueError("calculus has no ambient embedding")
        dim = len(self.embedding[0])
        out = [self.algebra.zero()] * dim
        for a, c in enumerate(coords):
            for i in range(dim):
                out[i] = out[i] + self.embedding[a][i] * c
        return out


def validate_real_metric_calculus(c: RealMetricCalculus, samples: int = 20, seed: int = 0) -> Report:
    rep = Report(f"real metric calculus ({c.name})")
    n = c.rank
    if len(c.lie) != n:
        rep.add("anchor_rank", False, f"{len(c.lie)} derivations for a rank-{n} module")
        return rep
    rep.add("form_hermitian", c.form.is_hermitian(), "h_ab* = h_ba")
    bad = [(a + 1, b + 1) for a in range(n) for b in range(n) if not c.h(a, b).is_hermitian()]
    rep.add("anchor_hermitian", not bad, f"non-hermitian h(E_a,E_b) at {bad}" if bad else "h(E_a,E_b)* = h(E_a,E_b)")
    bad = [d.label for d in c.lie.basis if not d.is_hermitian()]
    rep.add("derivations_hermitian", not bad, f"not hermitian: {bad}" if bad else "")
    bad = [d.label for d in c.lie.basis if not d.check_well_defined()]
    rep.add("derivations_well_defined", not bad, f"violate relations: {bad}" if bad else "")
    rep.add("bracket_closure", c.lie.closed, "abelian" if c.lie.abelian else "")
    if c.embedding is not None:
        dim = len(c.embedding[0])
        induced_ok = all(
            sum((c.embedding[a][i].star() * c.embedding[b][i] for i in range(dim)), c.algebra.zero()) == c.h(a, b)
            for a in range(n) for b in range(n)
        )
        rep.add("induced_metric", induced_ok, "h_ab = sum_i (E_a^i)* E_b^i")
        rng = random.Random(seed)
        free = True
        for _ in range(samples):
            coords = [c.algebra.random_element(rng, n_terms=2) for _ in range(n)]
            if all(not x for x in coords):
                continue
            if all(not x for x in c.ambient(coords)):
                free = False
                break
        rep.add("basis_free_spot_check", free, f"{samples} random combinations E_a c^a are nonzero")
    return rep


@dataclass
class PseudoInverse:
    hhat: List[List[Element]]
    H: Element

    def __getitem__(self, ab):
        a, b = ab
        return self.hhat[a][b]

    @property
    def rank(self) -> int:
        return len(self.hhat)


def _delta_times(H: Element, a: int, c: int) -> Element:
    return H if a == c else H.algebra.zero()


def make_pseudo_inverse(form: HermitianForm, hhat: Sequence[Sequence[Element]], H: Element) -> PseudoInverse:
    n = form.rank
    hhat = [list(r) for r in hhat]
    if len(hhat) != n or any(len(r) != n for r in hhat):
        raise RankMismatch("pseudo-inverse has the wrong shape")
    zero = form.algebra.zero()
    for a in range(n):
        for c in range(n):
            left = sum((hhat[a][b] * form.matrix[b][c] for b in range(n)), zero)
            right = sum((form.matrix[c][b] * hhat[b][a] for b in range(n)), zero)
            target = _delta_times(H, a, c)
            if left != target or right != target:
                raise NotPseudoInverse(f"hhat^(a b) h_(b c) != delta H at a={a + 1}, c={c + 1}")
    if not H.is_hermitian():
        raise NotPseudoInverse(f"H = {H} is not hermitian")
    if regular_certificate(H) is None:
        raise IrregularDenominator(f"H = {H} is not a certified regular element")
    for a in range(n):
        for b in range(n):
            if form.matrix[a][b].commutator(H) or hhat[a][b].commutator(H):
                raise NotPseudoInverse("h or hhat fails to commute with H")
            if hhat[a][b].star() != hhat[b][a]:
                raise NotPseudoInverse("hhat is not hermitian as a matrix")
    return PseudoInverse(hhat, H)


def pseudo_inverse_relations(p: PseudoInverse, g: PseudoInverse) -> Report:
    """Compatibility relations between two pseudo-inverses of one metric."""
    rep = Report("pseudo-inverse pair")
    n = p.rank
    H, G = p.H, g.H
    rep.add("gH = G hhat", all(g[a, b] * H == G * p[a, b] for a in range(n) for b in range(n)))
    rep.add("H g = hhat G", all(H * g[a, b] == p[a, b] * G for a in range(n) for b in range(n)))
    if all(not H.commutator(g[a, b]) for a in range(n) for b in range(n)):
        rep.add("[G, hhat] = [H, G] = 0",
                all(not G.commutator(p[a, b]) for a in range(n) for b in range(n)) and not H.commutator(G))
    if G == H:
        rep.add("G = H implies g = hhat", all(g[a, b] == p[a, b] for a in range(n) for b in range(n)))
    return rep
