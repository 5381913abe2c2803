"""Lattice-point counts in rectangles, in the region S, and on quadratic shells."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..arith import euler_phi, mod_inverse
from .sums import error_E, error_E2
from .types import CongruenceInstance, IntegerRange, Real, RegionS, exact

_CHUNK = 1 << 22


def _units_mask(vals: np.ndarray, q: int) -> np.ndarray:
    return np.gcd(vals, q) == 1


def count_N(I: IntegerRange, J: IntegerRange, inst: CongruenceInstance, *, check_u: bool = True) -> int:
    """Integer pairs in I x J on the congruence with gcd(uv, q) = 1.

    ``check_u=False`` drops the gcd(u, q) = 1 filter, which never changes the
    result; it is exposed only so that this can be tested.
    """
    if len(I) == 0 or len(J) == 0:
        return 0
    q = inst.q
    u = np.arange(I.first, I.last + 1, dtype=np.int64)
    v_all = np.arange(J.first, J.last + 1, dtype=np.int64)
    v_all = v_all[_units_mask(v_all, q)]
    if check_u:
        u = u[_units_mask(u, q)]
    au = (inst.a1 * u) % q
    step = max(1, _CHUNK // max(1, u.size))
    total = 0
    for k in range(0, v_all.size, step):
        v = v_all[k : k + step]
        hit = (au[:, None] + (inst.a2 * v)[None, :] - inst.b_red) % q == 0
        total += int(hit.sum())
    return total


def count_N_star(I: IntegerRange, J: IntegerRange, q: int) -> Fraction:
    if len(I) == 0 or len(J) == 0:
        return Fraction(0)
    u = np.arange(I.first, I.last + 1, dtype=np.int64)
    v = np.arange(J.first, J.last + 1, dtype=np.int64)
    cu = int(_units_mask(u, q).sum())
    cv = int(_units_mask(v, q).sum())
    return Fraction(cu * cv, euler_phi(q))


# --------------------------------------------------------------------------
# region S

def _members_int(S: RegionS, u: np.ndarray, v: int) -> np.ndarray:
    X, T, A1, A2 = S.X, S.T, S.A1, S.A2
    ax = A1 * np.abs(u)
    ay = A2 * abs(v)
    lin = np.abs(A1 * u + A2 * v - T)
    return (ax <= X) & (ay <= X) & (lin <= X) & (ax * ay * lin <= T * T * X)


def _region_points(S: RegionS, q: int, residue_of_v) -> int:
    """Count nonzero (u, v) in S with gcd(v, q) = 1 and u in the class residue_of_v(v)."""
    umax, vmax = S.box()
    if umax < 1 or vmax < 1:
        return 0
    vectorize = S.integral and S.X <= 10**5 and S.T <= 10**5
    total = 0
    for v in range(-vmax, vmax + 1):
        if v == 0 or math.gcd(v, q) != 1:
            continue
        r = residue_of_v(v)
        if r is None:
            start, step = -umax, 1
        else:
            start, step = -umax + (r + umax) % q, q
        if vectorize:
            u = np.arange(start, umax + 1, step, dtype=np.int64)
            u = u[(u != 0) & _units_mask(u, q)]
            total += int(_members_int(S, u, v).sum())
        else:
            for u in range(start, umax + 1, step):
                if u != 0 and math.gcd(u, q) == 1 and S.contains(u, v):
                    total += 1
    return total


def count_D(S: RegionS, inst: CongruenceInstance) -> int:
    """Nonzero integer points of S on the congruence, coprime to q.

    v runs in the outer loop; u steps through the solution class modulo q.
    """
    q = inst.q
    inv_a1 = mod_inverse(inst.a1, q)

    def residue(v):
        return (inst.b_red - inst.a2 * v) * inv_a1 % q

    return _region_points(S, q, residue)


def count_D_star(S: RegionS, q: int) -> Fraction:
    return Fraction(_region_points(S, q, lambda v: None), euler_phi(q))


def count_D_bruteforce(S: RegionS, inst: CongruenceInstance) -> int:
    """Definition-level oracle: scan the whole box and filter."""
    umax, vmax = S.box()
    n = 0
    for u in range(-umax, umax + 1):
        for v in range(-vmax, vmax + 1):
            if u and v and math.gcd(u * v, inst.q) == 1 and inst.solves(u, v) and S.contains(u, v):
                n += 1
    return n


def main_term_D(S: RegionS, q: int, g2=None) -> float:
    """phi(q)/q^2 * X^(2/3) T^(4/3) / (A1 A2) * g2((T/X)^(1/3))."""
    if g2 is None:
        from ..density.archimedean import g2 as g2_default

        g2 = g2_default
    X, T = float(S.X), float(S.T)
    t = (T / X) ** (1 / 3)
    if t > 3 ** (1 / 3):
        return 0.0
    return euler_phi(q) / q**2 * X ** (2 / 3) * T ** (4 / 3) / (float(S.A1) * float(S.A2)) * g2(t)


def affine_error_bound(S: RegionS, q: int, inst: CongruenceInstance, L: float, calL: float) -> float:
    """Error envelope for |D - main term| given the log-parameters L and calL."""
    if L < 1 or calL < 1:
        raise ValueError("L and calL must be >= 1")
    if inst.q != q:
        raise ValueError("instance modulus differs from q")
    X, T, A1, A2 = (float(v) for v in (S.X, S.T, S.A1, S.A2))
    if S.X > exact(calL) * S.T:
        raise ValueError("precondition X / calL <= T violated")
    first = L**4 * math.log(2 * X) ** 2 * error_E(inst)
    second = (
        X ** (2 / 3) * T ** (4 / 3) / (A1 * A2 * q) * calL ** (4 / 3)
        * (calL / L + math.sqrt(A1 / X) + math.sqrt(A2 / X)) * error_E2(q)
    )
    return first + second


# --------------------------------------------------------------------------
# quadratic shells

def count_quadratic_interval(Yp: Real, Y: Real, A: Real) -> int:
    """Integers y with Yp < |y^2 + 2Ay| <= Y (exact comparisons)."""
    Yp, Y, A = exact(Yp), exact(Y), exact(A)
    if Y <= 0:
        raise ValueError("Y must be positive")
    # |y^2 + 2Ay| <= Y forces (y + A)^2 <= Y + A^2
    rad = math.isqrt(math.ceil(Y + A * A)) + 1
    lo, hi = math.floor(-A) - rad, math.ceil(-A) + rad
    y = np.arange(lo, hi + 1, dtype=np.int64)
    val = np.abs(y.astype(float) ** 2 + 2 * float(A) * y)
    tol = 1e-9 * (1.0 + float(Y) + abs(float(A)) * float(hi - lo))
    fy, fyp = float(Y), float(Yp)
    sure = (val <= fy - tol) & (val > fyp + tol)
    unsure = (np.abs(val - fy) <= tol) | (np.abs(val - fyp) <= tol)
    n = int(sure.sum())
    for yy in y[unsure].tolist():
        w = abs(yy * yy + 2 * A * yy)
        if Yp < w <= Y:
            n += 1
    return n


def quadratic_interval_bound(Y: float, A: float, nu: float, M0: float) -> float:
    """nu^(1/2) M0^2 / M + 1 with M = max(|A|, Y^(1/2))."""
    M = max(abs(A), math.sqrt(Y))
    return math.sqrt(nu) * M0 * M0 / M + 1


def quadratic_interval_bound_general(Y: float, A: float, nu: float, M0: float) -> float:
    """nu M0^2 / M + nu^(1/2) M0 + 1, valid without the M0 <= M restriction."""
    M = max(abs(A), math.sqrt(Y))
    return nu * M0 * M0 / M + math.sqrt(nu) * M0 + 1
