from itertools import product

import pytest

from ncriemann import known_values as kv
from ncriemann.algebra import SPHERE
from ncriemann.calculi import change_of_basis, scaled_pseudo_inverse
from ncriemann.connection import solve_connection
from ncriemann.curvature import (
    bianchi_operator_residuals,
    components,
    contracted,
    curvature_op,
    diagonal_vanishes,
    scalar_curvature,
    symmetry_suite,
)
from ncriemann.metric_module import ModuleElement

S = SPHERE
z2, w2 = S.abs_z2(), S.abs_w2()


def test_operator_examples(sphere):
    calc, _, conn, _ = sphere
    assert curvature_op(conn, 0, 2, calc.E(2)) == ModuleElement([z2 * w2, S.zero(), S.zero()])
    assert curvature_op(conn, 0, 1, calc.E(2)).is_zero()


def test_operator_table(sphere):
    table = sphere[3]
    for k, v in kv.sphere_curvature_ops().items():
        assert table.op_values[k] == ModuleElement(v), k


def test_component_examples(sphere):
    R = sphere[3].R
    assert R(0, 1, 0, 1) == z2 * w2
    assert R(0, 1, 1, 2).is_zero()
    assert R(0, 2, 0, 2) == z2 * z2 * w2
    assert R(1, 2, 1, 2) == z2 * w2 * w2


def test_all_components(sphere):
    table = sphere[3]
    expected = kv.sphere_curvature_components()
    assert all(table.components[k] == v for k, v in expected.items())
    assert len(table.nonzero()) == 12


def test_torus_curvature_vanishes(torus):
    table = torus[3]
    assert not table.nonzero()
    assert all(U.is_zero() for U in table.op_values.values())


@pytest.mark.parametrize("target", ["sphere", "torus"])
def test_symmetry_suite_passes(target, request):
    calc, _, conn, table = request.getfixturevalue(target)
    rep = symmetry_suite(table)
    assert rep.passed, [str(c) for c in rep.failures()]
    assert not bianchi_operator_residuals(conn)
    assert diagonal_vanishes(table, conn)


def test_negated_component_names_antisymmetry(sphere):
    table = sphere[3]
    bad = table.with_component((0, 1, 0, 1), -table.R(0, 1, 0, 1))
    rep = symmetry_suite(bad)
    failed = {c.name for c in rep.failures()}
    assert "antisymmetry_pq" in failed and "antisymmetry_ab" in failed
    assert "R_1212" in rep["antisymmetry_pq"].detail


def test_broken_pair_interchange_is_detected(sphere):
    table = sphere[3]
    # R_1213 != 0 = R_1312, with both antisymmetries kept intact
    x = z2
    bad = table
    for idx, s in (((0, 1, 0, 2), 1), ((1, 0, 0, 2), -1), ((0, 1, 2, 0), -1), ((1, 0, 2, 0), 1)):
        bad = bad.with_component(idx, x * s)
    rep = symmetry_suite(bad)
    assert rep["antisymmetry_pq"].passed and rep["antisymmetry_ab"].passed
    assert not rep["pair_interchange"].passed


def test_components_hermitian(sphere):
    table = sphere[3]
    assert all(v.is_hermitian() for v in table.components.values())


def test_scalar_curvature_sphere(sphere):
    calc, p, _, table = sphere
    res = scalar_curvature(table, p)
    assert res.S == S.scalar(6) and res.lifted
    H = z2 * w2
    assert res.T == w2 * z2 * w2 * z2 * 2 + w2 * z2 * z2 * w2 * 2 + z2 * z2 * w2 * w2 * 2
    assert res.T == H * S.scalar(6) * H


def test_scalar_curvature_alternative_pseudo_inverse(sphere):
    calc, p, _, table = sphere
    assert scalar_curvature(table, scaled_pseudo_inverse(calc, p)).S == S.scalar(6)


def test_scalar_curvature_torus(torus):
    _, p, _, table = torus
    assert scalar_curvature(table, p).S.is_zero()


@pytest.mark.parametrize("A", [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [2, 1, 0], [0, -1, 1]]])
def test_contraction_is_basis_independent(sphere, A):
    calc, p, _, table = sphere
    c2, p2 = change_of_basis(calc, p, A)
    t2 = components(solve_connection(c2, p2))
    assert symmetry_suite(t2).passed
    assert contracted(t2, p2) == contracted(table, p)
    assert scalar_curvature(t2, p2).S == S.scalar(6)


def test_operator_antisymmetric_in_derivations(sphere):
    calc, _, conn, _ = sphere
    for p_, q, b in product(range(3), repeat=3):
        assert curvature_op(conn, p_, q, calc.E(b)) == -curvature_op(conn, q, p_, calc.E(b))
