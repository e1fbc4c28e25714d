"""Finite-dimensional clock-and-shift representations used as an independent numeric check.

At ``theta = p/N`` the clock ``C = diag(w^k)`` and the down-shift ``S`` satisfy
``S C = w C S`` with ``w = exp(2 pi i p/N)``.  The torus is represented by
``Z = C, W = S``; the sphere by ``Z = lam C, W = mu S`` with
``lam^2 + mu^2 = 1``, so that ``ZZ* = lam^2`` and ``WW* = 1 - ZZ*`` hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, sqrt
from typing import Dict, Iterable, List, Sequence

import numpy as np

from .algebra import Algebra, Element, SphereAlgebra, TorusAlgebra
from .localization import LocalizedElement

DEFAULT_THETAS = ((1, 5), (2, 7))
DEFAULT_LAMBDA2 = (Fraction(1, 2), Fraction(1, 3), Fraction(3, 4))
DEFAULT_TOL = 1e-10


@dataclass
class MatrixRep:
    algebra: Algebra
    p: int
    dim: int
    lambda2: Fraction | None = None
    _cache: Dict[tuple, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.dim < 1 or gcd(self.p, self.dim) != 1:
            raise ValueError(f"theta = {self.p}/{self.dim} must be in lowest terms")
        w = np.exp(2j * np.pi * self.p / self.dim)
        self.q = complex(w)
        clock = np.diag(w ** np.arange(self.dim))
        shift = np.roll(np.eye(self.dim), -1, axis=0)  # e_k -> e_{k-1}
        if isinstance(self.algebra, SphereAlgebra):
            if self.lambda2 is None or not 0 < self.lambda2 < 1:
                raise ValueError("sphere representations need 0 < lambda2 < 1")
            lam, mu = sqrt(float(self.lambda2)), sqrt(1 - float(self.lambda2))
            self.Z, self.W = lam * clock, mu * shift
        else:
            self.Z, self.W = clock, shift
        self.Zs, self.Ws = self.Z.conj().T, self.W.conj().T

    @property
    def theta(self) -> Fraction:
        return Fraction(self.p, self.dim)

    def label(self) -> str:
        s = f"theta={self.p}/{self.dim}"
        return s + (f", lambda2={self.lambda2}" if self.lambda2 is not None else "")

    def monomial(self, m) -> np.ndarray:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        mp = np.linalg.matrix_power
        if isinstance(self.algebra, TorusAlgebra):
            a, b = m
            out = mp(self.Z if a >= 0 else self.Zs, abs(a)) @ mp(self.W if b >= 0 else self.Ws, abs(b))
        else:
            i, j, k = m
            out = mp(self.Z, i) @ mp(self.Zs, j) @ mp(self.W if k >= 0 else self.Ws, abs(k))
        self._cache[m] = out
        return out

    def evaluate(self, a) -> np.ndarray:
        if isinstance(a, LocalizedElement):
            scale = 1.0
            if isinstance(self.algebra, SphereAlgebra):
                scale = float(self.lambda2) ** (-a.m) * (1 - float(self.lambda2)) ** (-a.n)
            return self.evaluate(a.num) * scale
        if a.algebra is not self.algebra:
            raise ValueError(f"{self.algebra.name} representation cannot evaluate a {a.algebra.name} element")
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for m, c in a.items():
            out = out + c.evaluate(self.q) * self.monomial(m)
        return out


def evaluate(a, rep: MatrixRep) -> np.ndarray:
    return rep.evaluate(a)


def default_reps(algebra: Algebra, thetas: Iterable = DEFAULT_THETAS,
                 lambda2s: Iterable = DEFAULT_LAMBDA2) -> List[MatrixRep]:
    if isinstance(algebra, SphereAlgebra):
        return [MatrixRep(algebra, p, n, Fraction(l2)) for p, n in thetas for l2 in lambda2s]
    return [MatrixRep(algebra, p, n) for p, n in thetas]


def op_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2))


def discrepancy(a, b, reps: Sequence[MatrixRep]) -> float:
    return max(op_norm(r.evaluate(a) - r.evaluate(b)) for r in reps)


def check_identity(a, b, reps: Sequence[MatrixRep], tol: float = DEFAULT_TOL) -> bool:
    if not reps:
        raise ValueError("need at least one representation")
    return discrepancy(a, b, reps) <= tol


def homomorphism_error(a: Element, b: Element, rep: MatrixRep) -> float:
    return op_norm(rep.evaluate(a * b) - rep.evaluate(a) @ rep.evaluate(b))
