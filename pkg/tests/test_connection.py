import random

import pytest
from hypothesis import given

from ncriemann import known_values as kv
from ncriemann.algebra import SPHERE
from ncriemann.calculi import _diag, change_of_basis, scaled_pseudo_inverse, sphere_calculus, sphere_metric
from ncriemann.connection import (
    KoszulUnsatisfied,
    koszul_rhs,
    lemma_h_E_nabla_E,
    metric_residuals,
    real_calculus_failures,
    render_module,
    same_connection,
    solve_connection,
    torsion_residuals,
    verify_metric,
    verify_real_calculus,
    verify_real_connection,
    verify_torsion_free,
)
from ncriemann.metric_module import ModuleElement, PseudoInverse, h_eval, make_pseudo_inverse

from conftest import seeds

S = SPHERE
z2, w2 = S.abs_z2(), S.abs_w2()


def test_koszul_rhs_examples(sphere, torus):
    calc = sphere[0]
    assert koszul_rhs(calc, 0, 0, 2) == -(z2 * w2 * 2)
    assert koszul_rhs(calc, 0, 1, 2).is_zero()
    tcalc = torus[0]
    assert all(koszul_rhs(tcalc, a, b, c).is_zero() for a in range(2) for b in range(2) for c in range(2))


def test_sphere_connection_table(sphere):
    conn = sphere[2]
    assert conn.base_flag
    for k, v in kv.sphere_connection().items():
        assert conn.coefficient(*k) == v, k
    assert render_module(conn.nabla_E(0, 0)) == "-E3"
    assert conn.nabla_E(2, 2) == ModuleElement([S.zero(), S.zero(), w2 - z2])


def test_sphere_coefficients_central_hermitian(sphere):
    conn = sphere[2]
    assert conn.gamma_central() and conn.gamma_hermitian()


def test_torus_connection_vanishes(torus):
    conn = torus[2]
    assert conn.base_flag
    assert all(v.is_zero() for v in conn.gamma.values())


@pytest.mark.parametrize("target", ["sphere", "torus"])
def test_verifiers_pass(target, request):
    calc, _, conn, _ = request.getfixturevalue(target)
    assert verify_metric(calc, conn)
    assert verify_torsion_free(calc, conn)
    assert verify_real_connection(calc, conn)
    assert verify_real_calculus(calc, conn)
    assert lemma_h_E_nabla_E(calc, conn)


def test_realness_forms_agree(sphere):
    calc, _, conn, _ = sphere
    first, second = real_calculus_failures(calc, conn)
    assert first == [] and second == []


def test_flipped_gamma_breaks_metric(sphere):
    calc, _, conn, _ = sphere
    bad = conn.with_gamma({(2, 0, 0): S.one()})
    residuals = dict(metric_residuals(calc, bad, samples=0))
    assert not verify_metric(calc, bad)
    # with a diagonal metric the defect shows up against E_3
    assert residuals["d1, E1, E3"] == -(z2 * w2 * 2)
    assert "d1, E1, E1" not in residuals
    assert verify_torsion_free(calc, bad)


def test_perturbation_breaks_torsion(sphere):
    calc, _, conn, _ = sphere
    bad = conn.with_gamma({(0, 1, 2): conn.gamma[(0, 1, 2)] + S.one()})
    res = dict(torsion_residuals(calc, bad))
    assert res["d2, d3"] == ModuleElement([S.one(), S.zero(), S.zero()])
    assert not verify_torsion_free(calc, bad)


def test_non_hermitian_gamma_breaks_realness(sphere):
    calc, _, conn, _ = sphere
    bad = conn.with_gamma({(0, 0, 0): S.Z})
    assert not verify_real_connection(calc, bad)
    assert not verify_real_calculus(calc, bad)


def test_uniqueness_across_pseudo_inverses(sphere):
    calc, p, conn, _ = sphere
    other = solve_connection(calc, scaled_pseudo_inverse(calc, p))
    assert same_connection(conn, other)


def test_wrong_pseudo_inverse_is_caught():
    calc = sphere_calculus()
    # bypass validation: hhat off by a factor 2
    fake = PseudoInverse(_diag([w2 * 2, z2 * 2, S.scalar(2)]), z2 * w2)
    with pytest.raises(KoszulUnsatisfied):
        solve_connection(calc, fake)


def test_variant_metric_is_solvable():
    m = sphere_metric()
    m[2][2] = S.one()
    calc = sphere_calculus(m)
    p = make_pseudo_inverse(calc.form, _diag([w2, z2, z2 * w2]), z2 * w2)
    conn = solve_connection(calc, p)
    assert verify_metric(calc, conn) and verify_torsion_free(calc, conn)
    assert conn.coefficient(2, 2, 2).is_zero()


def test_basis_change_gives_the_same_connection(sphere):
    calc, p, conn, _ = sphere
    A = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    c2, p2 = change_of_basis(calc, p, A)
    conn2 = solve_connection(c2, p2)
    # nabla_{d1'} E'_2 with d1' = d1, E'_2 = E1 + E2
    U = conn.nabla_E(0, 0) + conn.nabla_E(0, 1)
    assert conn2.nabla_E(0, 1) == ModuleElement([U.coords[0] - U.coords[1], U.coords[1], U.coords[2]])


def test_koszul_formula_every_triple(sphere):
    calc, _, conn, _ = sphere
    for a in range(3):
        for b in range(3):
            for c in range(3):
                assert h_eval(calc.form, conn.nabla_E(a, b), calc.E(c)) * 2 == koszul_rhs(calc, a, b, c)


@given(seeds)
def test_leibniz_for_connection(sphere, s):
    calc, _, conn, _ = sphere
    rng = random.Random(s)
    U = ModuleElement([S.random_element(rng, n_terms=2) for _ in range(3)])
    f = S.random_element(rng, n_terms=2)
    for a in range(3):
        d = calc.lie.basis[a]
        assert conn.nabla(a, U * f) == conn.nabla(a, U) * f + U * d(f)
