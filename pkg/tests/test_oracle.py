import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from ncriemann.algebra import SPHERE, TORUS
from ncriemann.localization import LocalizedElement
from ncriemann.oracle import (
    DEFAULT_TOL,
    MatrixRep,
    check_identity,
    default_reps,
    discrepancy,
    homomorphism_error,
)
from ncriemann.scalars import Q
from ncriemann.tangent import lemma_x_identities

from conftest import seeds

S, T = SPHERE, TORUS
SPHERE_REPS = default_reps(S)
TORUS_REPS = default_reps(T)


def test_default_sample_sizes():
    assert len(SPHERE_REPS) == 6
    assert len({r.lambda2 for r in SPHERE_REPS}) >= 3
    assert len({(r.p, r.dim) for r in TORUS_REPS}) >= 2


@pytest.mark.parametrize("rep", SPHERE_REPS + TORUS_REPS, ids=lambda r: f"{r.algebra.name}:{r.label()}")
def test_unit_and_q_commutation(rep):
    alg = rep.algebra
    assert np.allclose(rep.evaluate(alg.one()), np.eye(rep.dim))
    WZ = rep.evaluate(alg.W) @ rep.evaluate(alg.Z)
    ZW = rep.evaluate(alg.Z) @ rep.evaluate(alg.W)
    assert np.linalg.norm(WZ - rep.q * ZW, 2) < DEFAULT_TOL


def test_abs_z2_is_scalar_matrix():
    rep = MatrixRep(S, 1, 5, Fraction(1, 3))
    assert np.allclose(rep.evaluate(S.abs_z2()), np.eye(5) / 3)
    assert np.allclose(rep.evaluate(S.abs_w2()), np.eye(5) * 2 / 3)


def test_star_identity_numeric():
    assert check_identity((S.Z * S.W).star(), S.Zs * S.Ws * Q, SPHERE_REPS[:3])


def test_z_is_not_zstar():
    assert not check_identity(S.Z, S.Zs, SPHERE_REPS)


def test_coordinate_identities_numeric():
    X1, X2, X3, X4 = (S.X(i) for i in range(1, 5))
    pairs = [
        (X2 * X4 + X1 * X3, (X4 * X2 + X3 * X1) * Q),
        (X2 * X4 - X1 * X3, (X4 * X2 - X3 * X1) * Q ** -1),
        (X2 * X3 + X1 * X4, (X3 * X2 + X4 * X1) * Q ** -1),
        (X2 * X3 - X1 * X4, (X3 * X2 - X4 * X1) * Q),
    ]
    assert lemma_x_identities().passed
    for a, b in pairs:
        assert check_identity(a, b, SPHERE_REPS)


def test_localized_evaluation():
    rep = SPHERE_REPS[0]
    x = LocalizedElement(S.Z * S.abs_z2(), 1, 0)
    assert np.allclose(rep.evaluate(x), rep.evaluate(S.Z))


def test_needs_reps():
    with pytest.raises(ValueError):
        check_identity(S.Z, S.Z, [])


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        MatrixRep(S, 2, 4, Fraction(1, 2))
    with pytest.raises(ValueError):
        MatrixRep(S, 1, 5, Fraction(3, 2))
    with pytest.raises(ValueError):
        SPHERE_REPS[0].evaluate(T.Z)


def test_relations_hold_numerically():
    for alg, reps in ((S, SPHERE_REPS), (T, TORUS_REPS)):
        for label, lhs, rhs in alg.relations():
            assert discrepancy(alg.combination(lhs), alg.combination(rhs), reps) < DEFAULT_TOL, label


@given(seeds)
def test_homomorphism_sphere(s):
    rng = random.Random(s)
    a, b = S.random_element(rng), S.random_element(rng)
    for rep in SPHERE_REPS:
        assert homomorphism_error(a, b, rep) < rep.dim * 1e-12 * max(1.0, np.linalg.norm(rep.evaluate(a), 2) * np.linalg.norm(rep.evaluate(b), 2))


@given(seeds)
def test_homomorphism_torus(s):
    rng = random.Random(s)
    a, b = T.random_element(rng), T.random_element(rng)
    for rep in TORUS_REPS:
        assert homomorphism_error(a, b, rep) < DEFAULT_TOL


@given(seeds)
def test_star_is_adjoint(s):
    a = S.random_element(random.Random(s))
    for rep in SPHERE_REPS[:2]:
        assert np.linalg.norm(rep.evaluate(a.star()) - rep.evaluate(a).conj().T, 2) < DEFAULT_TOL
