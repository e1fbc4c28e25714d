import random

import pytest
from hypothesis import given, settings

from ncriemann.algebra import SPHERE
from ncriemann.localization import LocalizedElement as L
from ncriemann.scalars import QBAR
from ncriemann.tangent import (
    NotExpandable,
    NotInTangentModule,
    ambient_equal,
    canonical_connection,
    canonical_vs_solved,
    combine,
    expand_in_frame,
    frame_E,
    frame_F,
    gram,
    lemma_x_identities,
    normal_component,
    project,
    unit_vector,
    verify_frame_tangency,
)

from conftest import seeds

S = SPHERE
X1, X2, X3, X4 = (S.X(i) for i in range(1, 5))
z2, w2 = S.abs_z2(), S.abs_w2()


def ambient(seed, n_terms=2):
    rng = random.Random(seed)
    return [S.random_element(rng, n_terms=n_terms) for _ in range(4)]


def test_projection_examples():
    E1 = frame_E()[0]
    assert ambient_equal(project(E1), E1)
    assert all(not c for c in project([X1, X2, X3, X4]))


@given(seeds)
def test_projection_idempotent(s):
    PU = project(ambient(s))
    assert ambient_equal(project(PU), PU)
    assert not normal_component(PU)


def test_frame_tangency():
    assert verify_frame_tangency(frame_F())
    assert verify_frame_tangency(frame_E())
    assert not verify_frame_tangency([[X1, S.zero(), S.zero(), S.zero()]])


def test_coordinate_identities():
    rep = lemma_x_identities()
    assert rep.passed
    assert len(rep.checks) == 6


@pytest.mark.parametrize("i, coords", [
    (0, lambda: [-X4, -X3, -X2]),
    (1, lambda: [X3, -X4, X1]),
    (2, lambda: [-(X2 * QBAR), X1 * QBAR, X4]),
    (3, lambda: [X1 * QBAR, X2 * QBAR, -X3]),
])
def test_projections_in_F_frame(i, coords):
    got = expand_in_frame(project(unit_vector(i)), frame_F(), base=True)
    assert got == coords()


def test_F3_in_E_frame():
    got = expand_in_frame(frame_F()[2], frame_E())
    assert got == [S.one(), -S.one(), S.zero()]


def test_F1_F2_in_E_frame():
    A = X1 * X3 + X2 * X4
    B = X2 * X3 - X1 * X4
    E = frame_E()
    c1 = expand_in_frame(frame_F()[0], E)
    c2 = expand_in_frame(frame_F()[1], E)
    assert [L.coerce(c) for c in c1] == [L(A, 1, 0), L(A, 0, 1), L(B, 1, 1)]
    assert [L.coerce(c) for c in c2] == [L(B, 1, 0), L(B, 0, 1), L(-A, 1, 1)]


def test_F_frame_is_not_base_expandable_in_E():
    with pytest.raises(NotExpandable):
        expand_in_frame(frame_F()[0], frame_E(), base=True)


def test_expansion_requires_tangent_vector():
    with pytest.raises(NotInTangentModule):
        expand_in_frame(unit_vector(0), frame_F())


def test_F_frame_is_orthonormal():
    G = gram(frame_F())
    assert all(G[a][b] == (S.one() if a == b else S.zero()) for a in range(3) for b in range(3))


def test_induced_metric():
    G = gram(frame_E())
    assert G[0][0] == z2 and G[1][1] == w2 and G[2][2] == z2 * w2
    assert G[0][1].is_zero() and G[0][2].is_zero() and G[1][2].is_zero()


def test_canonical_connection_examples(sphere):
    calc, _, conn, _ = sphere
    d1, d2, _ = calc.lie.basis
    E = frame_E()
    minus_E3 = [-x for x in E[2]]
    assert ambient_equal(canonical_connection(d1, E[0]), minus_E3)
    assert ambient_equal(canonical_connection(d2, E[1]), E[2])
    assert all(canonical_vs_solved(conn).values())
    assert len(canonical_vs_solved(conn)) == 9


@settings(max_examples=15)
@given(seeds)
def test_canonical_connection_leibniz(sphere, s):
    calc = sphere[0]
    rng = random.Random(s)
    U = project(ambient(s, n_terms=1))
    a = S.random_element(rng, n_terms=2)
    for d in calc.lie.basis:
        lhs = canonical_connection(d, [u * a for u in U])
        rhs = [x * a + u * d(a) for x, u in zip(canonical_connection(d, U), U)]
        assert ambient_equal(lhs, rhs)


@given(seeds)
def test_F_frame_is_free(s):
    rng = random.Random(s)
    coords = [S.random_element(rng, n_terms=2) for _ in range(3)]
    if all(not c for c in coords):
        return
    assert any(c for c in combine(frame_F(), coords))
