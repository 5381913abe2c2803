"""Primitive vectors on a plane and dyadic sums of the error functional."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith import omega_count, tau
from .sums import error_E1, error_E_fast
from .types import PrimitiveVectorQuery

# rational enclosure of pi, good to 15 digits
PI_LO = Fraction(314159265358979, 10**14)
PI_HI = Fraction(314159265358980, 10**14)


def heath_brown_count(qv: PrimitiveVectorQuery) -> int:
    """Primitive w with |w_i| <= W_i and v.w = 0, by exhaustive search."""
    v = qv.v
    Wi = [math.floor(w) for w in qv.W]
    # solve for a coordinate with nonzero coefficient, scan the other two
    k = max(range(3), key=lambda i: (v[i] != 0, -Wi[i]))
    i, j = [m for m in range(3) if m != k]
    a = np.arange(-Wi[i], Wi[i] + 1, dtype=np.int64)[:, None]
    b = np.arange(-Wi[j], Wi[j] + 1, dtype=np.int64)[None, :]
    num = -(v[i] * a + v[j] * b)
    ok = num % v[k] == 0
    c = num // v[k]
    ok &= np.abs(c) <= Wi[k]
    g = np.gcd(np.gcd(a, b), c)
    return int((ok & (g == 1)).sum())


def heath_brown_bound(qv: PrimitiveVectorQuery, pi: Fraction | float = math.pi) -> Fraction | float:
    W1, W2, W3 = qv.W
    m = max(abs(vi) * wi for vi, wi in zip(qv.v, qv.W))
    return 12 * pi * W1 * W2 * W3 / m + 4


def heath_brown_holds(qv: PrimitiveVectorQuery) -> bool:
    """count <= bound, decided exactly through a rational enclosure of pi."""
    n = heath_brown_count(qv)
    if n <= heath_brown_bound(qv, PI_LO):
        return True
    if n > heath_brown_bound(qv, PI_HI):
        return False
    raise ArithmeticError("pi enclosure too coarse to decide")


@dataclass(frozen=True)
class DyadicErrorSum:
    lhs: float
    bound: float
    pairs: int

    @property
    def ratio(self) -> float:
        return self.lhs / self.bound if self.bound > 0 else 0.0


def dyadic_error_sum(C1: float, C2: float, q: int, b1: int, b2: int) -> DyadicErrorSum:
    """Sum of E(q, (b1 c1^2, b2 c2^2)) over C_i < c_i <= 2 C_i, gcd(c1, c2) = 1, c_i coprime to q."""
    if C1 < 0.5 or C2 < 0.5:
        raise ValueError("C1, C2 must be >= 1/2")
    if math.gcd(b1 * b2, q) != 1:
        raise ValueError("gcd(b1*b2, q) must be 1")
    c1s = [c for c in range(math.floor(C1) + 1, math.floor(2 * C1) + 1) if math.gcd(c, q) == 1]
    c2s = [c for c in range(math.floor(C2) + 1, math.floor(2 * C2) + 1) if math.gcd(c, q) == 1]
    total = 0.0
    pairs = 0
    for c1 in c1s:
        for c2 in c2s:
            if math.gcd(c1, c2) != 1:
                continue
            total += error_E_fast(q, b1 * c1 * c1, b2 * c2 * c2)
            pairs += 1
    bound = (C1 * C2 * tau(q) + q) * 2 ** omega_count(q) * error_E1(q)
    return DyadicErrorSum(total, bound, pairs)
