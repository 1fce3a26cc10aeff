"""Closed-form upper bounds and cubic root tools."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, PreconditionError

DISCRIMINANT_TOL = 1e-12
TRIPLE_ROOT_TOL = 1e-14


def kadets_snobar(n: int) -> float:
    """sqrt(n), an upper bound for every n-dimensional projection constant."""
    if n < 1:
        raise ArgumentError("n must be positive")
    return math.sqrt(n)


def kll_upper(n: int, d: int) -> float:
    """n/d + sqrt((d-1) (n/d) (1 - n/d)); tight iff R^n has d equiangular lines."""
    if not 1 <= n <= d:
        raise ArgumentError(f"need 1 <= n <= d, got n={n}, d={d}")
    r = n / d
    return r + math.sqrt((d - 1) * r * (1 - r))


def bohnenblust_upper(d: int) -> float:
    """2 - 2/d, the codimension-one bound."""
    if d < 2:
        raise ArgumentError("d must be at least 2")
    return 2.0 - 2.0 / d


def lift_upper(n: int, d: int, pi_n_value: float) -> float:
    """Upper bound for the codimension-n constant Pi(d-n, d) given a bound on Pi_n."""
    if not 1 <= n <= d:
        raise ArgumentError(f"need 1 <= n <= d, got n={n}, d={d}")
    return pi_n_value + 1.0


@dataclass(frozen=True)
class Cubic:
    """Monic x^3 + b x^2 + c x + e."""

    b: float
    c: float
    e: float

    @classmethod
    def from_roots(cls, r1: float, r2: float, r3: float) -> Cubic:
        e1 = r1 + r2 + r3
        e2 = r1 * r2 + r1 * r3 + r2 * r3
        e3 = r1 * r2 * r3
        return cls(-e1, e2, -e3)

    def __call__(self, x):
        return ((x + self.b) * x + self.c) * x + self.e

    def discriminant(self) -> float:
        b, c, e = self.b, self.c, self.e
        return 18 * b * c * e - 4 * b**3 * e + b**2 * c**2 - 4 * c**3 - 27 * e**2

    def has_three_real_roots(self, tol: float = DISCRIMINANT_TOL) -> bool:
        # the tolerance is scaled by the size of the terms, which is where the rounding comes from
        b, c, e = self.b, self.c, self.e
        terms = (18 * b * c * e, 4 * b**3 * e, b**2 * c**2, 4 * c**3, 27 * e**2)
        scale = max(1.0, max(abs(t) for t in terms))
        return self.discriminant() >= -tol * scale

    def roots(self) -> np.ndarray:
        """Eigenvalues of the companion matrix, real parts, nonincreasing."""
        companion = np.array([
            [-self.b, -self.c, -self.e],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
        ])
        return np.sort(np.linalg.eigvals(companion).real)[::-1]


def cubic_root_upper(p: Cubic) -> float:
    """Upper bound for the largest root of a cubic with three real roots.

    (-b + sqrt(3) sqrt(-A) + C / (6 (-A))) / 3 with A = 3c - b^2 and
    C = -(2b^3 - 9bc + 27e); the bound is exact when C = 0. A triple root
    (-A ~ 0) returns -b/3.
    """
    if not p.has_three_real_roots():
        raise PreconditionError("cubic has complex roots")
    b, c, e = p.b, p.c, p.e
    neg_A = b * b - 3 * c
    # relative test: b^2 - 3c carries rounding of order eps * max(b^2, |3c|)
    if neg_A <= TRIPLE_ROOT_TOL * max(b * b, abs(3 * c)):
        return -b / 3
    C = -(2 * b**3 - 9 * b * c + 27 * e)
    bound = (-b + math.sqrt(3) * math.sqrt(neg_A) + C / (6 * neg_A)) / 3
    # The largest root lies in mean + [1/3, 2/3] * sqrt(-A) (Samuelson). Both
    # ends are exact consequences of real roots; clamping only matters when
    # C / (-A) is dominated by rounding near a triple root.
    mean, spread = -b / 3, math.sqrt(neg_A)
    return min(max(bound, mean + spread / 3), mean + 2 * spread / 3)


def pair_sum_cubic(p: Cubic) -> Cubic:
    """Monic cubic whose roots are the pairwise sums x1+x2, x1+x3, x2+x3 of p's roots."""
    e1, e2, e3 = -p.b, p.c, -p.e
    return Cubic(-2 * e1, e1 * e1 + e2, -(e1 * e2 - e3))
