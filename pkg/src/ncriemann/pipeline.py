"""End-to-end verification of a calculus, producing a schema-stable report."""

from __future__ import annotations

import time
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import known_values as kv
from .calculi import build, change_of_basis, scaled_pseudo_inverse
from .checks import Report
from .connection import (
    Connection,
    KoszulUnsatisfied,
    koszul_residuals,
    koszul_rhs,
    lemma_h_E_nabla_E,
    metric_residuals,
    real_calculus_failures,
    render_module,
    same_connection,
    solve_connection,
    torsion_residuals,
    verify_real_connection,
)
from .curvature import (
    bianchi_operator_residuals,
    components,
    contracted,
    diagonal_vanishes,
    scalar_curvature,
    symmetry_suite,
)
from .localization import LocalizedElement
from .metric_module import h_eval, pseudo_inverse_relations, validate_real_metric_calculus
from .oracle import DEFAULT_TOL, MatrixRep, default_reps, discrepancy

SCHEMA_VERSION = 1

# fault name -> (description, targets it applies to)
FAULTS = {
    "flip-G311": ("Gamma^3_11 replaced by +1 (breaks metric compatibility)", ("sphere",)),
    "shift-G111": ("Gamma^1_11 increased by 1 (breaks metric compatibility)", ("sphere", "torus")),
    "perturb-G123": ("Gamma^1_23 increased by 1 (breaks torsion-freeness)", ("sphere",)),
    "perturb-G112": ("Gamma^1_12 increased by 1 (breaks torsion-freeness)", ("sphere", "torus")),
    "nonherm-G111": ("Gamma^1_11 increased by Z (breaks realness)", ("sphere", "torus")),
    "negate-R1212": ("curvature component R_1212 negated (breaks antisymmetry)", ("sphere",)),
}


class UnknownFault(ValueError):
    pass


def inject_connection_fault(conn: Connection, fault: str) -> Connection:
    alg = conn.calc.algebra
    g = conn.gamma
    if fault == "flip-G311":
        return conn.with_gamma({(2, 0, 0): alg.one()})
    if fault == "shift-G111":
        return conn.with_gamma({(0, 0, 0): g[(0, 0, 0)] + alg.one()})
    if fault == "perturb-G123":
        return conn.with_gamma({(0, 1, 2): g[(0, 1, 2)] + alg.one()})
    if fault == "perturb-G112":
        return conn.with_gamma({(0, 0, 1): g[(0, 0, 1)] + alg.one()})
    if fault == "nonherm-G111":
        return conn.with_gamma({(0, 0, 0): g[(0, 0, 0)] + alg.Z})
    return conn


def _idx(*ix) -> str:
    return "".join(str(i + 1) for i in ix)


class _Identities:
    """Symbolic equalities collected for the numeric cross-check."""

    def __init__(self):
        self.items: List[Tuple[str, str, object, object]] = []

    def add(self, group: str, label: str, lhs, rhs):
        self.items.append((group, label, lhs, rhs))


def _axioms(calc) -> Report:
    return validate_real_metric_calculus(calc)


def _connection_section(calc, p, conn, ids: _Identities) -> Tuple[Report, dict]:
    rep = Report("connection")
    n = calc.rank
    kres = koszul_residuals(calc, conn)
    rep.add("koszul", not kres, "2 h(nabla_a E_b, E_c) = K_abc for all basis triples" if not kres
            else f"fails at {[_idx(*k) for k, _ in kres[:5]]}")
    mres = metric_residuals(calc, conn)
    rep.add("metric", not mres, "" if not mres else f"residual at {mres[0][0]}: {mres[0][1]}")
    tres = torsion_residuals(calc, conn)
    rep.add("torsion_free", not tres, "" if not tres else f"residual at {tres[0][0]}: {render_module(tres[0][1])}")
    rep.add("real_connection", verify_real_connection(calc, conn), "h(nabla_a E_b, E_c) hermitian")
    first, second = real_calculus_failures(calc, conn)
    rep.add("real_calculus", not first, "h(nabla_a nabla_b E_p, E_q) hermitian" if not first
            else f"non-hermitian at {[_idx(*k) for k in first[:5]]}")
    if mres:
        rep.add("real_calculus_equivalent_form", True, "not applicable: connection is not metric")
    else:
        rep.add("real_calculus_equivalent_form", (not first) == (not second),
                "h(nabla_a E_p, nabla_b E_q) hermitian iff the second-derivative form is")
    rep.add("h_E_nabla_E", lemma_h_E_nabla_E(calc, conn), "d h(E,E) = 2 h(E, nabla_d E)")
    alt = scaled_pseudo_inverse(calc, p)
    try:
        conn2 = solve_connection(calc, alt, verify=False)
        rep.add("uniqueness", same_connection(conn, conn2), "re-solving with (hhat H, H^2) gives the same Gamma")
    except Exception as e:  # pragma: no cover - defensive
        rep.add("uniqueness", False, str(e))
    for a, b, c in product(range(n), repeat=3):
        ids.add("koszul", f"K_{_idx(a, b, c)}", h_eval(calc.form, conn.nabla_E(a, b), calc.E(c)) * 2,
                koszul_rhs(calc, a, b, c))
    data = {
        "base_algebra": conn.base_flag,
        "coefficients_central": conn.gamma_central(),
        "coefficients_hermitian": conn.gamma_hermitian(),
        "table": conn.table(),
    }
    return rep, data


def _closed_forms(target, conn, table, S, ids: _Identities) -> Report:
    rep = Report("closed forms")
    if target == "sphere":
        exp = kv.sphere_connection()
        bad = [k for k, v in exp.items() if not (conn.gamma[k] == v)]
        rep.add("connection_table", not bad, "" if not bad else f"differs at Gamma^{[_idx(*k) for k in bad]}")
        for k, v in exp.items():
            ids.add("closed_forms", f"Gamma^{_idx(*k)}", conn.gamma[k], v)
        ops = kv.sphere_curvature_ops()
        bad = [k for k, v in ops.items()
               if not all(x == y for x, y in zip(table.op_values[k].coords, v))]
        rep.add("curvature_operator", not bad, "" if not bad else f"differs at R({bad})")
        for k, v in ops.items():
            for c in range(3):
                ids.add("closed_forms", f"R({_idx(k[0], k[1])})E{k[2] + 1}^{c + 1}", table.op_values[k].coords[c], v[c])
        comps = kv.sphere_curvature_components()
        bad = [k for k, v in comps.items() if not (table.components[k] == v)]
        rep.add("curvature_components", not bad, "" if not bad else f"differs at {[_idx(*k) for k in bad[:6]]}")
        for k in ((0, 1, 0, 1), (0, 2, 0, 2), (1, 2, 1, 2)):
            ids.add("closed_forms", f"R_{_idx(*k)}", table.components[k], comps[k])
        exp_S = kv.sphere_scalar_curvature()
    else:
        exp = kv.torus_connection()
        rep.add("connection_table", all(conn.gamma[k] == v for k, v in exp.items()), "Gamma = 0")
        rep.add("curvature_components", all(not v for v in table.components.values()), "R = 0")
        exp_S = kv.torus_scalar_curvature()
    rep.add("scalar_curvature", S is not None and S == exp_S, f"expected S = {exp_S}")
    if S is not None:
        ids.add("closed_forms", "S", S, exp_S)
    return rep


def _tangent_section(conn, ids: _Identities, samples: int = 50, seed: int = 0) -> Report:
    import random

    from . import tangent as tg
    from .algebra import SPHERE

    alg = SPHERE
    rep = Report("tangent module")
    rng = random.Random(seed)
    idem = True
    for _ in range(samples):
        U = [alg.random_element(rng, n_terms=2) for _ in range(4)]
        PU = tg.project(U)
        if not tg.ambient_equal(tg.project(PU), PU):
            idem = False
    rep.add("projection_idempotent", idem, f"P(P(U)) = P(U) on {samples} random elements")
    E, F = tg.frame_E(), tg.frame_F()
    rep.add("E_in_tangent_module", all(tg.ambient_equal(tg.project(e), e) for e in E), "P(E_a) = E_a")
    rep.add("F_tangency", tg.verify_frame_tangency(F), "X^i F_a^i = 0")
    lx = tg.lemma_x_identities()
    rep.add("coordinate_identities", lx.passed, "; ".join(c.name for c in lx.failures()))
    X = [alg.X(i) for i in range(1, 5)]
    from .scalars import QBAR
    expected_pe = [
        [-X[3], -X[2], -X[1]],
        [X[2], -X[3], X[0]],
        [-(X[1] * QBAR), X[0] * QBAR, X[3]],
        [X[0] * QBAR, X[1] * QBAR, -X[2]],
    ]
    ok = True
    for i in range(4):
        Pe = tg.project(tg.unit_vector(i))
        coords = tg.expand_in_frame(Pe, F, base=True)
        ok &= all(c == e for c, e in zip(coords, expected_pe[i]))
        back = tg.combine(F, expected_pe[i])
        for j in range(4):
            ids.add("tangent", f"P(e{i + 1})^{j + 1}", back[j], Pe[j])
    rep.add("projections_in_F_frame", ok, "P(e_i) = F_a c^a with the closed-form coordinates")
    A = X[0] * X[2] + X[1] * X[3]
    B = X[1] * X[2] - X[0] * X[3]
    L = LocalizedElement
    expected_f = [
        [L(A, 1, 0), L(A, 0, 1), L(B, 1, 1)],
        [L(B, 1, 0), L(B, 0, 1), L(-A, 1, 1)],
        [alg.one(), -alg.one(), alg.zero()],
    ]
    ok = True
    for a in range(3):
        coords = tg.expand_in_frame(F[a], E)
        ok &= all(L.coerce(c) == L.coerce(e) for c, e in zip(coords, expected_f[a]))
        back = tg.combine(E, expected_f[a])
        for j in range(4):
            ids.add("tangent", f"F{a + 1}^{j + 1}", back[j], F[a][j])
    rep.add("F_in_E_frame", ok, "F_3 = E_1 - E_2 and the localized F_1, F_2 expansions")
    cmp = tg.canonical_vs_solved(conn)
    bad = [k for k, v in cmp.items() if not v]
    rep.add("projected_connection", not bad, "P(e_i d_a(E_b^i)) = nabla_a E_b" if not bad
            else f"differs for (a,b) in {[_idx(*k) for k in bad]}")
    from .calculi import sphere_metric
    h = sphere_metric()
    inv = tg.localized_inverse(h)
    ok = all(
        sum((inv[a][b] * h[b][c] for b in range(3)), L(alg.zero())) == (alg.one() if a == c else alg.zero())
        for a in range(3) for c in range(3)
    )
    rep.add("metric_invertible_in_localization", ok, "diag(|Z|^2, |W|^2, |Z|^2|W|^2) is invertible")
    return rep


def _oracle_section(calc, ids: _Identities, reps: Sequence[MatrixRep], tol: float) -> Tuple[Report, dict]:
    rep = Report("numeric oracle")
    alg = calc.algebra
    for label, lhs, rhs in alg.relations():
        ids.add("relations", label, alg.combination(lhs), alg.combination(rhs))
    groups: Dict[str, List[float]] = {}
    worst: Dict[str, Tuple[float, str]] = {}
    for group, label, lhs, rhs in ids.items:
        err = discrepancy(lhs, rhs, reps)
        groups.setdefault(group, []).append(err)
        if err > worst.get(group, (-1.0, ""))[0]:
            worst[group] = (err, label)
    for group, errs in groups.items():
        w, lab = worst[group]
        rep.add(group, w <= tol, f"{len(errs)} identities, max discrepancy {w:.2e} ({lab})")
    data = {
        "representations": [r.label() for r in reps],
        "tolerance": tol,
        "identities_checked": len(ids.items),
    }
    return rep, data


def run_verify(target: str, reps: Optional[Sequence[MatrixRep]] = None, tol: float = DEFAULT_TOL,
               fault: Optional[str] = None, timing: bool = False) -> dict:
    if fault is not None:
        if fault not in FAULTS:
            raise UnknownFault(f"unknown fault {fault!r}; choose from {sorted(FAULTS)}")
        if target not in FAULTS[fault][1]:
            raise UnknownFault(f"fault {fault!r} does not apply to target {target!r}")
    t0 = time.perf_counter()
    times = {}
    calc, p = build(target)
    reps = list(reps) if reps is not None else default_reps(calc.algebra)
    ids = _Identities()
    sections: Dict[str, Report] = {}

    sections["axioms"] = _axioms(calc)
    times["axioms"] = time.perf_counter() - t0

    conn = solve_connection(calc, p)
    conn = inject_connection_fault(conn, fault) if fault else conn
    sections["connection"], conn_data = _connection_section(calc, p, conn, ids)
    times["connection"] = time.perf_counter() - t0

    table = components(conn)
    if fault == "negate-R1212":
        table = table.with_component((0, 1, 0, 1), -table.R(0, 1, 0, 1))
    sym = symmetry_suite(table)
    bres = bianchi_operator_residuals(conn)
    sym.add("operator_bianchi", not bres, "R(d1,d2)E3 + R(d2,d3)E1 + R(d3,d1)E2 = 0")
    sym.add("diagonal_vanishes", diagonal_vanishes(table, conn), "h(E, R(d1,d2) E) = 0")
    sections["symmetries"] = sym
    times["curvature"] = time.perf_counter() - t0

    sc = Report("scalar curvature")
    S = None
    sc_data: dict = {}
    try:
        res = scalar_curvature(table, p)
        S = res.S
        sc.add("solved", True, "H S H = hhat^ab R_apbq hhat^pq")
        sc.add("hermitian", S.is_hermitian())
        ids.add("scalar", "H S H = T", p.H * S * p.H, res.T)
        alt = scaled_pseudo_inverse(calc, p)
        S2 = scalar_curvature(table, alt).S
        sc.add("independent_of_pseudo_inverse", S2 == S, f"(hhat H, H^2) gives S = {S2}")
        prel = pseudo_inverse_relations(p, alt)
        sc.add("pseudo_inverse_relations", prel.passed, "; ".join(c.name for c in prel.checks))
        if calc.rank == 3:
            c2, p2 = change_of_basis(calc, p, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
        else:
            c2, p2 = change_of_basis(calc, p, [[1, 1], [0, 1]])
        if fault is None:
            conn2 = solve_connection(c2, p2)
            T2 = contracted(components(conn2), p2)
            sc.add("basis_independent", T2 == res.T, "hhat^ab R_apbq hhat^pq unchanged under a unimodular basis change")
        sc_data = {"S": str(S), "contracted": str(res.T), "H": str(p.H)}
    except Exception as e:
        sc.add("solved", False, f"{type(e).__name__}: {e}")
    sections["scalar_curvature"] = sc
    times["scalar_curvature"] = time.perf_counter() - t0

    sections["closed_forms"] = _closed_forms(target, conn, table, S, ids)
    if target == "sphere":
        sections["tangent"] = _tangent_section(conn, ids)
        times["tangent"] = time.perf_counter() - t0

    sections["oracle"], oracle_data = _oracle_section(calc, ids, reps, tol)
    times["oracle"] = time.perf_counter() - t0

    nonzero = {f"R_{_idx(*k)}": str(v) for k, v in sorted(table.nonzero().items())}
    ops = {f"R({_idx(pp, q)})E{b + 1}": render_module(v) for (pp, q, b), v in sorted(table.op_values.items()) if pp < q}
    report = {
        "schema_version": SCHEMA_VERSION,
        "target": target,
        "fault": fault,
        "passed": all(r.passed for r in sections.values()),
        "connection": conn_data,
        "curvature": {"nonzero_components": nonzero, "nonzero_count": len(nonzero), "operator": ops},
        "scalar_curvature": sc_data,
        "oracle": oracle_data,
        "sections": {k: r.to_dict() for k, r in sections.items()},
    }
    if timing:
        report["timing_seconds"] = {k: round(v, 4) for k, v in times.items()}
    return report


def first_failure(report: dict) -> Optional[str]:
    for name, sec in report["sections"].items():
        for c in sec["checks"]:
            if not c["passed"]:
                return f"{name}/{c['name']}: {c['detail']}"
    return None


def to_markdown(report: dict) -> str:
    lines = [f"# Verification report: {report['target']}", ""]
    lines.append(f"- schema_version: {report['schema_version']}")
    if report.get("fault"):
        lines.append(f"- injected fault: `{report['fault']}`")
    lines.append(f"- overall: **{'PASS' if report['passed'] else 'FAIL'}**")
    lines += ["", "## Connection", ""]
    c = report["connection"]
    lines.append(f"base algebra: {c['base_algebra']}, central: {c['coefficients_central']}, "
                 f"hermitian: {c['coefficients_hermitian']}")
    lines.append("")
    for k, v in c["table"].items():
        lines.append(f"- `{k} = {v}`")
    lines += ["", "## Curvature", ""]
    for k, v in report["curvature"]["operator"].items():
        lines.append(f"- `{k} = {v}`")
    lines.append("")
    lines.append(f"nonzero components ({report['curvature']['nonzero_count']}):")
    lines.append("")
    for k, v in report["curvature"]["nonzero_components"].items():
        lines.append(f"- `{k} = {v}`")
    if report["scalar_curvature"]:
        lines += ["", "## Scalar curvature", "", f"S = `{report['scalar_curvature']['S']}`"]
    lines += ["", "## Checks", "", "| section | check | result | detail |", "|---|---|---|---|"]
    for name, sec in report["sections"].items():
        for ch in sec["checks"]:
            detail = ch["detail"].replace("|", "\\|")
            lines.append(f"| {name} | {ch['name']} | {'PASS' if ch['passed'] else 'FAIL'} | {detail} |")
    o = report["oracle"]
    lines += ["", f"Oracle: {o['identities_checked']} identities over {len(o['representations'])} "
              f"representations, tolerance {o['tolerance']:g}."]
    if "timing_seconds" in report:
        lines += ["", "## Timing (s)", ""] + [f"- {k}: {v}" for k, v in report["timing_seconds"].items()]
    return "\n".join(lines) + "\n"
