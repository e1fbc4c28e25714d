import random

import pytest
from hypothesis import given

from ncriemann.algebra import SPHERE, TORUS, MixedAlgebraError, is_central, is_hermitian, nf_product, star
from ncriemann.scalars import Q

from conftest import sphere_elements, torus_elements


def test_sphere_commutation():
    S = SPHERE
    assert S.W * S.Z == S.Z * S.W * Q
    assert str(S.W * S.Z) == "q ZW"


def test_w_wstar():
    S = SPHERE
    assert S.W * S.Ws == S.one() - S.Z * S.Zs
    assert str(S.W * S.Ws) == "1 - Z Zs"


def test_unit_is_neutral():
    rng = random.Random(1)
    a = SPHERE.random_element(rng)
    assert SPHERE.one() * a == a and a * SPHERE.one() == a


@pytest.mark.parametrize("m", [-3, -1, 0, 2, 5])
def test_torus_w_times_z_power(m):
    T = TORUS
    assert T.W * T.Z ** m == T.Z ** m * T.W * Q ** m


def test_star_examples():
    S = SPHERE
    assert star(S.Z) == S.Zs
    assert star(S.Z * S.W) == S.Zs * S.Ws * Q
    assert star(S.X(1)) == S.X(1)


def test_centrality_examples():
    S = SPHERE
    assert is_central(S.abs_z2()) and is_central(S.abs_w2())
    assert not is_central(S.Z)
    assert is_central(S.one())
    assert S.Z.commutator(S.W) == S.Z * S.W * (1 - Q)


def test_hermitian_examples():
    S = SPHERE
    assert is_hermitian(S.abs_z2())
    assert not is_hermitian(S.Z)
    assert is_hermitian(S.X(3))


def test_sphere_radius_one():
    S = SPHERE
    assert S.abs_z2() + S.abs_w2() == S.one()
    assert sum((S.X(i) * S.X(i) for i in range(1, 5)), S.zero()) == S.one()


def test_defining_relations_hold():
    for alg in (SPHERE, TORUS):
        for label, lhs, rhs in alg.relations():
            assert alg.combination(lhs) == alg.combination(rhs), label


def test_relation_counts():
    assert len(SPHERE.relations()) == 7


def test_torus_generators_are_unitary():
    T = TORUS
    assert T.Z * T.Zs == T.one() and T.W * T.Ws == T.one()
    assert T.Z.inverse() == T.Zs


def test_mixed_algebras_rejected():
    with pytest.raises(MixedAlgebraError):
        SPHERE.Z * TORUS.Z


def test_rendering_is_canonical():
    S = SPHERE
    assert str(S.zero()) == "0"
    assert str(S.Z * S.Zs) == "Z Zs"
    a, b = S.W * S.Zs, S.Z * S.Z - S.one()
    assert str(a + b) == str(b + a)


@given(sphere_elements, sphere_elements, sphere_elements)
def test_sphere_associativity(a, b, c):
    assert nf_product(nf_product(a, b), c) == nf_product(a, nf_product(b, c))


@given(torus_elements, torus_elements, torus_elements)
def test_torus_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(sphere_elements, sphere_elements)
def test_star_antimultiplicative(a, b):
    assert star(a * b) == star(b) * star(a)
    assert star(star(a)) == a


@given(torus_elements, torus_elements)
def test_torus_star_antimultiplicative(a, b):
    assert star(a * b) == star(b) * star(a)


@given(sphere_elements, sphere_elements)
def test_distributivity(a, b):
    c = SPHERE.W + SPHERE.Zs
    assert (a + b) * c == a * c + b * c
