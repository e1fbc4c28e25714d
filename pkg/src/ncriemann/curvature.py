"""Curvature operator, curvature components, symmetry checks and scalar curvature."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Tuple

from .checks import Report
from .connection import Connection
from .localization import LocalizedElement, NotLiftable, lift_to_base, try_lift
from .metric_module import ModuleElement, PseudoInverse, h_eval

Index4 = Tuple[int, int, int, int]


class NotPseudoRiemannian(ValueError):
    pass


def curvature_op(conn: Connection, p: int, q: int, U: ModuleElement) -> ModuleElement:
    """``R(d_p, d_q) U = nabla_p nabla_q U - nabla_q nabla_p U - nabla_[d_p, d_q] U``."""
    out = conn.nabla(p, conn.nabla(q, U)) - conn.nabla(q, conn.nabla(p, U))
    consts = conn.calc.lie.constants(p, q)
    if any(consts):
        out = out - conn.nabla_combination(consts, U)
    return ModuleElement([try_lift(c) for c in out.coords])


@dataclass
class CurvatureTable:
    rank: int
    op_values: Dict[Tuple[int, int, int], ModuleElement] = field(default_factory=dict)
    components: Dict[Index4, object] = field(default_factory=dict)

    def R(self, a: int, b: int, p: int, q: int):
        return self.components[(a, b, p, q)]

    def nonzero(self) -> Dict[Index4, object]:
        return {k: v for k, v in self.components.items() if v}

    def with_component(self, idx: Index4, value) -> "CurvatureTable":
        comps = dict(self.components)
        comps[idx] = value
        return CurvatureTable(self.rank, dict(self.op_values), comps)


def components(conn: Connection) -> CurvatureTable:
    """All ``R_abpq = h(E_a, R(d_p, d_q) E_b)``."""
    calc = conn.calc
    n = calc.rank
    table = CurvatureTable(n)
    for p, q, b in product(range(n), repeat=3):
        table.op_values[(p, q, b)] = curvature_op(conn, p, q, calc.E(b))
    for a, b, p, q in product(range(n), repeat=4):
        table.components[(a, b, p, q)] = try_lift(h_eval(calc.form, calc.E(a), table.op_values[(p, q, b)]))
    return table


def _violations(n, pred):
    return [idx for idx in product(range(n), repeat=4) if not pred(*idx)]


def _fmt(idx) -> str:
    return "R_" + "".join(str(i + 1) for i in idx)


def symmetry_suite(table: CurvatureTable) -> Report:
    """The four component symmetry families, plus hermiticity of every component."""
    n = table.rank
    R = table.R
    rep = Report("curvature symmetries")

    def zero(x):
        return not x

    families = [
        ("antisymmetry_pq", "R_abpq = -R_abqp", lambda a, b, p, q: zero(R(a, b, p, q) + R(a, b, q, p))),
        ("antisymmetry_ab", "R_abpq = -R_bapq", lambda a, b, p, q: zero(R(a, b, p, q) + R(b, a, p, q))),
        ("pair_interchange", "R_abpq = R_pqab", lambda a, b, p, q: zero(R(a, b, p, q) - R(p, q, a, b))),
        ("first_bianchi", "R_apqr + R_aqrp + R_arpq = 0",
         lambda a, p, q, r: zero(R(a, p, q, r) + R(a, q, r, p) + R(a, r, p, q))),
    ]
    for name, law, pred in families:
        bad = _violations(n, pred)
        detail = law if not bad else f"{law}; violated at {', '.join(_fmt(i) for i in bad[:6])}" + (
            f" (+{len(bad) - 6} more)" if len(bad) > 6 else "")
        rep.add(name, not bad, detail)
    bad = [i for i, v in table.components.items() if v and not v.is_hermitian()]
    rep.add("hermitian_components", not bad, "R_abpq* = R_abpq" if not bad else f"non-hermitian: {[_fmt(i) for i in bad[:6]]}")
    return rep


def bianchi_operator_residuals(conn: Connection):
    """Triples where ``R(d1,d2)E3 + R(d2,d3)E1 + R(d3,d1)E2`` fails to vanish."""
    calc = conn.calc
    n = calc.rank
    out = []
    for x, y, z in product(range(n), repeat=3):
        s = curvature_op(conn, x, y, calc.E(z)) + curvature_op(conn, y, z, calc.E(x)) + curvature_op(conn, z, x, calc.E(y))
        if not s.is_zero():
            out.append((x, y, z))
    return out


def diagonal_vanishes(table: CurvatureTable, conn: Connection) -> bool:
    """``h(E, R(d_p, d_q) E) = 0`` for every anchor basis element."""
    n = table.rank
    return all(not table.R(a, a, p, q) for a, p, q in product(range(n), repeat=3))


def contracted(table: CurvatureTable, p: PseudoInverse):
    """``T = hhat^ab R_apbq hhat^pq``."""
    n = table.rank
    alg = p.H.algebra
    T = alg.zero()
    for a, b, pp, q in product(range(n), repeat=4):
        r = table.R(a, pp, b, q)
        if r and p[a, b] and p[pp, q]:
            T = p[a, b] * r * p[pp, q] + T
    return try_lift(T)


@dataclass
class ScalarCurvature:
    S: object
    T: object
    with_respect_to: PseudoInverse
    lifted: bool


def scalar_curvature(table: CurvatureTable, p: PseudoInverse, require_base: bool = True) -> ScalarCurvature:
    """Solve ``H S H = hhat^ab R_apbq hhat^pq`` in the localization and lift ``S``."""
    T = contracted(table, p)
    H_inv = LocalizedElement.inverse_of(p.H)
    S_loc = (H_inv * T * H_inv).reduced()
    try:
        S = lift_to_base(S_loc)
        lifted = True
    except NotLiftable:
        if require_base:
            raise
        S, lifted = S_loc, False
    if not S.is_hermitian():
        raise NotPseudoRiemannian(f"scalar curvature {S} is not hermitian")
    if not (p.H * S * p.H == T if lifted else LocalizedElement.coerce(p.H) * S * p.H == T):
        raise ArithmeticError("H S H does not reproduce the contracted curvature")
    return ScalarCurvature(S, T, p, lifted)
