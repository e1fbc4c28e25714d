"""Levi-Civita connection of a real metric calculus via the Koszul formula.

The connection is stored through its coefficients ``Gamma^c_ab`` with
``nabla_{d_a} E_b = E_c Gamma^c_ab``.  Coefficients are first solved in the
localization (dividing by the regular central element ``H``) and then lifted
to the base algebra whenever exact division succeeds.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import Element
from .localization import LocalizedElement, NotLiftable, lift_to_base
from .metric_module import ModuleElement, PseudoInverse, RealMetricCalculus, h_eval
from .scalars import Scalar

Index3 = Tuple[int, int, int]


class KoszulUnsatisfied(ArithmeticError):
    pass


class Connection:
    """Affine connection determined by its values on the anchor basis."""

    def __init__(self, calc: RealMetricCalculus, gamma: Dict[Index3, LocalizedElement]):
        self.calc = calc
        self.gamma = {k: LocalizedElement.coerce(v) for k, v in gamma.items()}
        lifted = {}
        try:
            for k, v in self.gamma.items():
                lifted[k] = lift_to_base(v)
            self.base_flag = True
            self._coeffs = lifted
        except NotLiftable:
            self.base_flag = False
            self._coeffs = dict(self.gamma)

    @property
    def rank(self) -> int:
        return self.calc.rank

    def coefficient(self, c: int, a: int, b: int):
        """``Gamma^c_ab`` (0-based), as a base element when the connection lifts."""
        return self._coeffs[(c, a, b)]

    def with_gamma(self, changes: Dict[Index3, object]) -> "Connection":
        g = dict(self.gamma)
        g.update({k: LocalizedElement.coerce(v) for k, v in changes.items()})
        return Connection(self.calc, g)

    def nabla_E(self, a: int, b: int) -> ModuleElement:
        n = self.rank
        return ModuleElement([self._coeffs[(r, a, b)] for r in range(n)])

    def nabla(self, a: int, U: ModuleElement) -> ModuleElement:
        """``nabla_{d_a} U`` extended to all of M by Leibniz' rule."""
        n = self.rank
        d = self.calc.lie.basis[a]
        out = []
        for r in range(n):
            acc = d(U.coords[r])
            for b in range(n):
                ub = U.coords[b]
                if ub:
                    g = self._coeffs[(r, a, b)]
                    if g:
                        acc = acc + g * ub
            out.append(acc)
        return ModuleElement(out)

    def nabla_combination(self, coeffs, U: ModuleElement) -> ModuleElement:
        out = ModuleElement.zero(self.calc.algebra, self.rank)
        for a, lam in enumerate(coeffs):
            if lam:
                out = out + self.nabla(a, U) * Fraction(lam)
        return out

    def gamma_central(self) -> bool:
        return all(v.is_central() for v in self._coeffs.values())

    def gamma_hermitian(self) -> bool:
        return all(v.is_hermitian() for v in self._coeffs.values())

    def table(self) -> Dict[str, str]:
        """Human-readable ``nabla_a E_b`` entries (1-based)."""
        n = self.rank
        out = {}
        for a in range(n):
            for b in range(n):
                out[f"nabla_{a + 1} E_{b + 1}"] = render_module(self.nabla_E(a, b))
        return out


def render_module(U: ModuleElement) -> str:
    parts = []
    for a, c in enumerate(U.coords):
        if not c:
            continue
        s = str(c)
        if s == "1":
            parts.append(f"E{a + 1}")
        elif s == "-1":
            parts.append(f"-E{a + 1}")
        else:
            parts.append(f"E{a + 1} ({s})")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _h_with_phi(calc: RealMetricCalculus, a: int, consts: List[Fraction]) -> Element:
    out = calc.algebra.zero()
    for k, ck in enumerate(consts):
        if ck:
            out = out + calc.h(a, k) * ck
    return out


def koszul_rhs(calc: RealMetricCalculus, a: int, b: int, c: int) -> Element:
    """Six-term right-hand side ``K_abc`` of ``2 h(nabla_a E_b, E_c) = K_abc``."""
    d = calc.lie.basis
    lie = calc.lie
    return (
        d[a](calc.h(b, c)) + d[b](calc.h(a, c)) - d[c](calc.h(a, b))
        - _h_with_phi(calc, a, lie.constants(b, c))
        + _h_with_phi(calc, b, lie.constants(c, a))
        + _h_with_phi(calc, c, lie.constants(a, b))
    )


def koszul_residuals(calc: RealMetricCalculus, conn: Connection) -> List[Tuple[Index3, object]]:
    n = calc.rank
    out = []
    for a in range(n):
        for b in range(n):
            U = conn.nabla_E(a, b)
            for c in range(n):
                res = h_eval(calc.form, U, calc.E(c)) * 2 - koszul_rhs(calc, a, b, c)
                if res:
                    out.append(((a, b, c), res))
    return out


def solve_connection(calc: RealMetricCalculus, p: PseudoInverse, verify: bool = True) -> Connection:
    """Solve ``2 sum_r (Gamma^r_ab)* h_rc = K_abc`` using the pseudo-inverse.

    Right-multiplying by ``hhat^(cs)`` gives ``(Gamma^s_ab)* H = 1/2 sum_c K_abc hhat^(cs)``,
    hence ``Gamma^s_ab = 1/2 H^-1 sum_c hhat^(sc) K_abc*`` (``H`` central).
    """
    n = calc.rank
    H_inv = LocalizedElement.inverse_of(p.H)
    half = Scalar.gauss(Fraction(1, 2))
    K = {(a, b, c): koszul_rhs(calc, a, b, c) for a in range(n) for b in range(n) for c in range(n)}
    gamma = {}
    for a in range(n):
        for b in range(n):
            for s in range(n):
                acc = calc.algebra.zero()
                for c in range(n):
                    acc = acc + p[s, c] * K[(a, b, c)].star()
                gamma[(s, a, b)] = (H_inv * acc * half).reduced()
    conn = Connection(calc, gamma)
    if verify:
        bad = koszul_residuals(calc, conn)
        if bad:
            (a, b, c), res = bad[0]
            raise KoszulUnsatisfied(f"Koszul equation fails at (a,b,c)=({a + 1},{b + 1},{c + 1}): residual {res}")
        for name, ok in (("metric", verify_metric(calc, conn)),
                         ("torsion-free", verify_torsion_free(calc, conn)),
                         ("real connection", verify_real_connection(calc, conn))):
            if not ok:
                raise KoszulUnsatisfied(f"solved connection is not {name}")
    return conn


# -- verifiers --------------------------------------------------------------

def metric_residuals(calc: RealMetricCalculus, conn: Connection, samples: int = 3, seed: int = 0):
    n = calc.rank
    h = calc.form
    out = []
    for d_idx in range(n):
        d = calc.lie.basis[d_idx]
        for a in range(n):
            for b in range(n):
                res = d(calc.h(a, b)) - h_eval(h, conn.nabla_E(d_idx, a), calc.E(b)) \
                    - h_eval(h, calc.E(a), conn.nabla_E(d_idx, b))
                if res:
                    out.append((f"d{d_idx + 1}, E{a + 1}, E{b + 1}", res))
    rng = random.Random(seed)
    for t in range(samples):
        U = ModuleElement([calc.algebra.random_element(rng, n_terms=2) for _ in range(n)])
        V = ModuleElement([calc.algebra.random_element(rng, n_terms=2) for _ in range(n)])
        d_idx = t % n
        d = calc.lie.basis[d_idx]
        res = d(h_eval(h, U, V)) - h_eval(h, conn.nabla(d_idx, U), V) - h_eval(h, U, conn.nabla(d_idx, V))
        if res:
            out.append((f"random sample {t}", res))
    return out


def verify_metric(calc: RealMetricCalculus, conn: Connection, samples: int = 3, seed: int = 0) -> bool:
    return not metric_residuals(calc, conn, samples, seed)


def torsion_residuals(calc: RealMetricCalculus, conn: Connection):
    n = calc.rank
    out = []
    for a in range(n):
        for b in range(n):
            T = conn.nabla_E(a, b) - conn.nabla_E(b, a) - calc.phi(calc.lie.constants(a, b))
            if not T.is_zero():
                out.append((f"d{a + 1}, d{b + 1}", T))
    return out


def verify_torsion_free(calc: RealMetricCalculus, conn: Connection) -> bool:
    return not torsion_residuals(calc, conn)


def verify_real_connection(calc: RealMetricCalculus, conn: Connection) -> bool:
    """``h(nabla_d E, E')`` is hermitian for all basis derivations and anchors."""
    n = calc.rank
    return all(
        h_eval(calc.form, conn.nabla_E(a, b), calc.E(c)).is_hermitian()
        for a in range(n) for b in range(n) for c in range(n)
    )


def real_calculus_failures(calc: RealMetricCalculus, conn: Connection):
    """Index quadruples where each of the two equivalent realness conditions fails.

    Returns ``(second_derivative_failures, paired_derivative_failures)`` for
    ``h(nabla_a nabla_b E_p, E_q)`` and ``h(nabla_a E_p, nabla_b E_q)``.
    """
    n = calc.rank
    h = calc.form
    first, second = [], []
    nE = {(a, p): conn.nabla_E(a, p) for a in range(n) for p in range(n)}
    for a in range(n):
        for b in range(n):
            for p in range(n):
                nn = conn.nabla(a, nE[(b, p)])
                for q in range(n):
                    if not h_eval(h, nn, calc.E(q)).is_hermitian():
                        first.append((a, b, p, q))
                    if not h_eval(h, nE[(a, p)], nE[(b, q)]).is_hermitian():
                        second.append((a, b, p, q))
    return first, second


def verify_real_calculus(calc: RealMetricCalculus, conn: Connection) -> bool:
    first, _ = real_calculus_failures(calc, conn)
    return not first


def lemma_h_E_nabla_E(calc: RealMetricCalculus, conn: Connection) -> bool:
    """``d(h(E,E)) = 2 h(E, nabla_d E)`` on the anchor basis."""
    n = calc.rank
    return all(
        calc.lie.basis[d](calc.h(a, a)) == h_eval(calc.form, calc.E(a), conn.nabla_E(d, a)) * 2
        for d in range(n) for a in range(n)
    )


def same_connection(c1: Connection, c2: Connection) -> bool:
    return c1.gamma.keys() == c2.gamma.keys() and all(c1.gamma[k] == c2.gamma[k] for k in c1.gamma)
