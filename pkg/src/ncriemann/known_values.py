"""Closed-form connection and curvature of the two example calculi.

Indices are 0-based: ``GAMMA[(c, a, b)]`` is the coefficient of ``E_c`` in
``nabla_a E_b`` and ``CURVATURE_OPS[(p, q, b)]`` lists the coordinates of
``R(d_p, d_q) E_b``.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Tuple

from .algebra import SPHERE, TORUS, Element


def sphere_connection() -> Dict[Tuple[int, int, int], Element]:
    alg = SPHERE
    z2, w2, one = alg.abs_z2(), alg.abs_w2(), alg.one()
    nonzero = {
        (2, 0, 0): -one,        # nabla_1 E_1 = -E_3
        (0, 0, 2): w2,          # nabla_1 E_3 = E_1 |W|^2
        (2, 1, 1): one,         # nabla_2 E_2 = E_3
        (1, 1, 2): -z2,         # nabla_2 E_3 = -E_2 |Z|^2
        (0, 2, 0): w2,          # nabla_3 E_1 = E_1 |W|^2
        (1, 2, 1): -z2,         # nabla_3 E_2 = -E_2 |Z|^2
        (2, 2, 2): w2 - z2,     # nabla_3 E_3 = E_3 (|W|^2 - |Z|^2)
    }
    return {k: nonzero.get(k, alg.zero()) for k in product(range(3), repeat=3)}


def sphere_curvature_ops() -> Dict[Tuple[int, int, int], List[Element]]:
    alg = SPHERE
    z2, w2, zero = alg.abs_z2(), alg.abs_w2(), alg.zero()

    def vec(a=None, x=None):
        out = [zero, zero, zero]
        if a is not None:
            out[a] = x
        return out

    return {
        (0, 1, 0): vec(1, -z2),
        (0, 1, 1): vec(0, w2),
        (0, 1, 2): vec(),
        (0, 2, 0): vec(2, -z2),
        (0, 2, 1): vec(),
        (0, 2, 2): vec(0, z2 * w2),
        (1, 2, 0): vec(),
        (1, 2, 1): vec(2, -w2),
        (1, 2, 2): vec(1, z2 * w2),
    }


def sphere_curvature_components() -> Dict[Tuple[int, int, int, int], Element]:
    """All 81 components, generated from the three independent ones by symmetry."""
    alg = SPHERE
    z2, w2 = alg.abs_z2(), alg.abs_w2()
    base = {(0, 1): z2 * w2, (0, 2): z2 * z2 * w2, (1, 2): z2 * w2 * w2}
    out = {k: alg.zero() for k in product(range(3), repeat=4)}
    for (a, b), v in base.items():
        out[(a, b, a, b)] = v
        out[(b, a, b, a)] = v
        out[(a, b, b, a)] = -v
        out[(b, a, a, b)] = -v
    return out


def sphere_scalar_curvature() -> Element:
    return SPHERE.scalar(6)


def torus_connection() -> Dict[Tuple[int, int, int], Element]:
    return {k: TORUS.zero() for k in product(range(2), repeat=3)}


def torus_scalar_curvature() -> Element:
    return TORUS.zero()
