"""The ambient free module (S^3)^4, the projection onto the tangent module and its frames."""

from __future__ import annotations

from typing import Dict, List, Sequence

from .algebra import SPHERE, Element
from .checks import Report
from .connection import Connection
from .derivations import Derivation
from .localization import LocalizedElement, NotLiftable, lift_to_base, regular_certificate, try_lift
from .scalars import QBAR, Q

AmbientElement = List  # four components, U = e_i U^i


class NotInTangentModule(ValueError):
    pass


class NotExpandable(ArithmeticError):
    pass


def _X(alg=SPHERE):
    return [alg.X(i) for i in range(1, 5)]


def unit_vector(i: int, alg=SPHERE) -> AmbientElement:
    return [alg.one() if j == i else alg.zero() for j in range(4)]


def normal_component(U: AmbientElement, alg=SPHERE):
    """``sum_j X^j U^j``."""
    X = _X(alg)
    out = alg.zero()
    for j in range(4):
        out = out + X[j] * U[j]
    return out


def project(U: AmbientElement, alg=SPHERE) -> AmbientElement:
    """``P(U)^i = U^i - X^i sum_j X^j U^j``."""
    X = _X(alg)
    nu = normal_component(U, alg)
    return [U[i] - X[i] * nu for i in range(4)]


def ambient_equal(U: AmbientElement, V: AmbientElement) -> bool:
    return all(a == b for a, b in zip(U, V))


def frame_E(alg=SPHERE) -> List[AmbientElement]:
    from .calculi import sphere_frame_E
    return sphere_frame_E(alg)


def frame_F(alg=SPHERE) -> List[AmbientElement]:
    X1, X2, X3, X4 = _X(alg)
    return [
        [-X4, X3, -(X2 * Q), X1 * Q],
        [-X3, -X4, X1 * Q, X2 * Q],
        [-X2, X1, X4, -X3],
    ]


def verify_frame_tangency(frame: Sequence[AmbientElement], alg=SPHERE) -> bool:
    return all(not normal_component(F, alg) for F in frame)


def lemma_x_identities(alg=SPHERE) -> Report:
    X1, X2, X3, X4 = _X(alg)
    rep = Report("coordinate identities")
    rep.add("X2X4 + X1X3 = q(X4X2 + X3X1)", X2 * X4 + X1 * X3 == (X4 * X2 + X3 * X1) * Q)
    rep.add("X2X4 - X1X3 = qbar(X4X2 - X3X1)", X2 * X4 - X1 * X3 == (X4 * X2 - X3 * X1) * QBAR)
    rep.add("X2X3 + X1X4 = qbar(X3X2 + X4X1)", X2 * X3 + X1 * X4 == (X3 * X2 + X4 * X1) * QBAR)
    rep.add("X2X3 - X1X4 = q(X3X2 - X4X1)", X2 * X3 - X1 * X4 == (X3 * X2 - X4 * X1) * Q)
    rep.add("[X1, X2] = 0", not X1.commutator(X2))
    rep.add("[X3, X4] = 0", not X3.commutator(X4))
    return rep


def gram(frame: Sequence[AmbientElement], alg=SPHERE) -> List[List[Element]]:
    """``G_ab = sum_i (F_a^i)* F_b^i``, the canonical metric restricted to a frame."""
    n = len(frame)
    return [[sum((frame[a][i].star() * frame[b][i] for i in range(4)), alg.zero())
             for b in range(n)] for a in range(n)]


def combine(frame: Sequence[AmbientElement], coords: Sequence) -> AmbientElement:
    out = [LocalizedElement(frame[0][0].algebra.zero()) for _ in range(4)]
    for F, c in zip(frame, coords):
        for i in range(4):
            if F[i] and c:
                out[i] = out[i] + F[i] * c
    return out


def _solve_central(G: List[List], rhs: List) -> List[LocalizedElement]:
    """Gaussian elimination over the localization with pivots ``c |Z|^2m |W|^2n``."""
    n = len(G)
    A = [[LocalizedElement.coerce(x) for x in row] + [LocalizedElement.coerce(r)] for row, r in zip(G, rhs)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            x = A[r][col].reduced()
            if x and x.is_central() and regular_certificate(x.num) is not None:
                piv = r
                break
        if piv is None:
            raise NotExpandable(f"no invertible central pivot in column {col + 1}")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col].reduced()
        inv = LocalizedElement.inverse_of(p.num) * p.denominator()
        A[col] = [inv * x for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n].reduced() for r in range(n)]


def expand_in_frame(U: AmbientElement, frame: Sequence[AmbientElement], base: bool = False, alg=SPHERE):
    """Coordinates ``c`` with ``U = sum_a frame_a c^a``.

    Solves the normal equations ``G c = (frame_a^i)* U^i`` over the
    localization and checks the recombination.  With ``base=True`` the
    coordinates must lie in the base algebra.
    """
    if not ambient_equal(project(U, alg), U):
        raise NotInTangentModule("P(U) != U")
    G = gram(frame, alg)
    rhs = [sum((F[i].star() * U[i] for i in range(4)), alg.zero()) for F in frame]
    coords = _solve_central(G, rhs)
    back = combine(frame, coords)
    if not all(b == u for b, u in zip(back, U)):
        raise NotExpandable("element is not in the span of the frame")
    if base:
        try:
            return [lift_to_base(c) for c in coords]
        except NotLiftable as e:
            raise NotExpandable(f"coordinates do not lie in the base algebra: {e}") from None
    return [try_lift(c) for c in coords]


def canonical_connection(d: Derivation, U: AmbientElement, alg=SPHERE) -> AmbientElement:
    """``P(e_i d(U^i))``."""
    return project([d(u) for u in U], alg)


def canonical_vs_solved(conn: Connection, alg=SPHERE) -> Dict[tuple, bool]:
    """Compare the projected connection on ``E_b`` with the solved ``nabla_a E_b``."""
    E = frame_E(alg)
    n = len(E)
    out = {}
    for a in range(n):
        d = conn.calc.lie.basis[a]
        for b in range(n):
            coords = expand_in_frame(canonical_connection(d, E[b], alg), E, alg=alg)
            out[(a, b)] = all(LocalizedElement.coerce(coords[c]) == conn.gamma[(c, a, b)] for c in range(n))
    return out


def localized_inverse(matrix: Sequence[Sequence[Element]]) -> List[List[LocalizedElement]]:
    n = len(matrix)
    alg = matrix[0][0].algebra
    cols = []
    for j in range(n):
        e = [alg.one() if i == j else alg.zero() for i in range(n)]
        cols.append(_solve_central([list(r) for r in matrix], e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]
