"""The torus and 3-sphere calculi, with their pseudo-inverses."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .algebra import SPHERE, TORUS, Element
from .derivations import LieAlgebra, sphere_derivations, torus_derivations
from .metric_module import HermitianForm, PseudoInverse, RealMetricCalculus, make_pseudo_inverse


def _diag(entries: Sequence[Element]) -> List[List[Element]]:
    zero = entries[0].algebra.zero()
    n = len(entries)
    return [[entries[a] if a == b else zero for b in range(n)] for a in range(n)]


def sphere_frame_E(alg=SPHERE) -> List[List[Element]]:
    X = [None] + [alg.X(i) for i in range(1, 5)]
    z2, w2, zero = alg.abs_z2(), alg.abs_w2(), alg.zero()
    return [
        [-X[2], X[1], zero, zero],
        [zero, zero, -X[4], X[3]],
        [X[1] * w2, X[2] * w2, -(X[3] * z2), -(X[4] * z2)],
    ]


def torus_frame_E(alg=TORUS) -> List[List[Element]]:
    X = [None] + [alg.X(i) for i in range(1, 5)]
    zero = alg.zero()
    return [[-X[2], X[1], zero, zero], [zero, zero, -X[4], X[3]]]


def sphere_metric(alg=SPHERE) -> List[List[Element]]:
    z2, w2 = alg.abs_z2(), alg.abs_w2()
    return _diag([z2, w2, z2 * w2])


def sphere_calculus(metric: Sequence[Sequence[Element]] | None = None, check: bool = True) -> RealMetricCalculus:
    alg = SPHERE
    form = HermitianForm(metric if metric is not None else sphere_metric(alg), check=check)
    embedding = sphere_frame_E(alg) if metric is None else None
    return RealMetricCalculus("sphere", alg, form, LieAlgebra(sphere_derivations(alg)), embedding)


def torus_calculus() -> RealMetricCalculus:
    alg = TORUS
    form = HermitianForm(_diag([alg.one(), alg.one()]))
    return RealMetricCalculus("torus", alg, form, LieAlgebra(torus_derivations(alg)), torus_frame_E(alg))


def sphere_pseudo_inverse(c: RealMetricCalculus | None = None) -> PseudoInverse:
    alg = SPHERE
    c = c or sphere_calculus()
    z2, w2 = alg.abs_z2(), alg.abs_w2()
    return make_pseudo_inverse(c.form, _diag([w2, z2, alg.one()]), z2 * w2)


def torus_pseudo_inverse(c: RealMetricCalculus | None = None) -> PseudoInverse:
    alg = TORUS
    c = c or torus_calculus()
    return make_pseudo_inverse(c.form, _diag([alg.one(), alg.one()]), alg.one())


def scaled_pseudo_inverse(c: RealMetricCalculus, p: PseudoInverse) -> PseudoInverse:
    """The pseudo-inverse ``(hhat H, H^2)`` built from ``(hhat, H)``."""
    n = p.rank
    return make_pseudo_inverse(c.form, [[p[a, b] * p.H for b in range(n)] for a in range(n)], p.H * p.H)


def build(target: str) -> Tuple[RealMetricCalculus, PseudoInverse]:
    if target == "sphere":
        c = sphere_calculus()
        return c, sphere_pseudo_inverse(c)
    if target == "torus":
        c = torus_calculus()
        return c, torus_pseudo_inverse(c)
    raise ValueError(f"unknown target {target!r}")


def _int_inverse(m: Sequence[Sequence[int]]):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def change_of_basis(c: RealMetricCalculus, p: PseudoInverse, matrix: Sequence[Sequence[int]]):
    """Re-express the calculus in the Lie-algebra basis ``d'_a = sum_b matrix[b][a] d_b``.

    Returns the new calculus (``E'_a = E_b matrix[b][a]``) and the transformed
    pseudo-inverse ``(A^-1 hhat A^-T, H)``.
    """
    n = c.rank
    A = matrix
    Ainv = _int_inverse(A)
    zero = c.algebra.zero()
    h = [[sum((c.h(x, y) * (A[x][a] * A[y][b]) for x in range(n) for y in range(n)), zero)
          for b in range(n)] for a in range(n)]
    hhat = [[sum((p[x, y] * (Ainv[a][x] * Ainv[b][y]) for x in range(n) for y in range(n)), zero)
             for b in range(n)] for a in range(n)]
    emb = None
    if c.embedding is not None:
        dim = len(c.embedding[0])
        emb = [[sum((c.embedding[x][i] * A[x][a] for x in range(n)), zero) for i in range(dim)] for a in range(n)]
    new = RealMetricCalculus(f"{c.name}'", c.algebra, HermitianForm(h), c.lie.change_basis(A), emb)
    return new, make_pseudo_inverse(new.form, hhat, p.H)
