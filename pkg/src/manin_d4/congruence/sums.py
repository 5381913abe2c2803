"""Exponential sums S_q and the error functionals E0, E1, E2."""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from ..arith import divisors, euler_phi, mod_inverse, mu, ramanujan_c, sigma_neg
from .types import CongruenceInstance

E0_MAX_Q = 2000


def _e(q: int, n: int) -> complex:
    return cmath.exp(2j * math.pi * (n % q) / q)


def exp_sum_S_direct(inst: CongruenceInstance, r: int, s: int) -> complex:
    """Sum of e_q(r*alpha + s*beta) over admissible residue pairs."""
    q = inst.q
    total = 0j
    for alpha in range(1, q + 1):
        if math.gcd(alpha, q) != 1:
            continue
        for beta in range(1, q + 1):
            if math.gcd(beta, q) == 1 and inst.solves(alpha, beta):
                total += _e(q, r * alpha + s * beta)
    return total


def exp_sum_S_closed(inst: CongruenceInstance, r: int, s: int) -> complex:
    """Closed form e_q(r a1^-1 b) c_q(a1 s - a2 r), checked against its mirror image."""
    q, a1, a2, b = inst.q, inst.a1, inst.a2, inst.b_red
    first = _e(q, r * mod_inverse(a1, q) * b) * ramanujan_c(q, a1 * s - a2 * r)
    second = _e(q, s * mod_inverse(a2, q) * b) * ramanujan_c(q, a2 * r - a1 * s)
    if abs(first - second) > 1e-9:
        raise ArithmeticError(f"closed forms disagree for {inst}, r={r}, s={s}")
    return first


def exp_sum_table_direct(inst: CongruenceInstance) -> np.ndarray:
    """All S_q(r, s), 0 <= r, s < q, summed from the definition as a matrix product."""
    q = inst.q
    idx = np.arange(q)
    unit = np.array([math.gcd(a, q) == 1 for a in range(q)])
    mask = ((inst.a1 * idx[:, None] + inst.a2 * idx[None, :] - inst.b_red) % q == 0)
    mask &= unit[:, None] & unit[None, :]
    E = np.exp(2j * np.pi * np.outer(idx, idx) / q)
    return E @ mask.astype(float) @ E.T


def exp_sum_table_closed(inst: CongruenceInstance) -> np.ndarray:
    """All S_q(r, s), 0 <= r, s < q, from the closed form."""
    q, a1, a2 = inst.q, inst.a1, inst.a2
    c = np.array([ramanujan_c(q, n) for n in range(q)], dtype=float)
    r = np.arange(q)[:, None]
    s = np.arange(q)[None, :]
    phase = np.exp(2j * np.pi * ((r * mod_inverse(a1, q) * inst.b_red) % q) / q)
    return phase * c[(a1 * s - a2 * r) % q]


# --------------------------------------------------------------------------
# error functionals

def _half_range(q: int) -> np.ndarray:
    h = q // 2
    return np.concatenate([np.arange(-h, 0), np.arange(1, h + 1)])


def error_E0_direct(q: int, a1: int, a2: int) -> float:
    """E0 by the literal double sum over 0 < |r|, |s| <= q/2."""
    if q > E0_MAX_Q:
        raise ValueError(f"E0 is only evaluated for q <= {E0_MAX_Q}")
    r = _half_range(q)
    if r.size == 0:
        return 0.0
    w = 1.0 / np.abs(r)
    W = np.outer(w, w)
    R, S = r[:, None], r[None, :]
    total = 0.0
    for d in divisors(q):
        m = abs(mu(q // d))
        if m == 0:
            continue
        hit = (a1 * S - a2 * R) % d == 0
        total += d * float(W[hit].sum())
    return total


@lru_cache(maxsize=1 << 14)
def _e0_grouped(q: int, lam_key: tuple[int, ...]) -> float:
    r = _half_range(q)
    if r.size == 0:
        return 0.0
    w = 1.0 / np.abs(r)
    total = 0.0
    for d, lam in zip(_sqfree_cofactor_divisors(q), lam_key):
        if d == 1:
            total += float(w.sum()) ** 2
            continue
        classes = np.bincount(r % d, weights=w, minlength=d)
        total += d * float(np.dot(w, classes[(lam * r) % d]))
    return total


@lru_cache(maxsize=4096)
def _sqfree_cofactor_divisors(q: int) -> tuple[int, ...]:
    return tuple(d for d in divisors(q) if mu(q // d) != 0)


def error_E0_fast(q: int, a1: int, a2: int) -> float:
    """E0 with the inner sum grouped by residue class of s; same value as the direct sum."""
    if q > E0_MAX_Q:
        raise ValueError(f"E0 is only evaluated for q <= {E0_MAX_Q}")
    key = tuple(a2 * mod_inverse(a1, d) % d if d > 1 else 0 for d in _sqfree_cofactor_divisors(q))
    return _e0_grouped(q, key)


def error_E0(inst: CongruenceInstance) -> float:
    return error_E0_direct(inst.q, inst.a1, inst.a2)


def error_E1(q: int) -> float:
    if q < 1:
        raise ValueError("q must be positive")
    if q == 1:
        return 0.0
    return (q / euler_phi(q)) ** 3 * math.log(q) ** 2


def error_E(inst: CongruenceInstance) -> float:
    return error_E0(inst) + error_E1(inst.q)


def error_E_fast(q: int, a1: int, a2: int) -> float:
    return error_E0_fast(q, a1, a2) + error_E1(q)


def error_E2(q: int) -> float:
    if q < 1:
        raise ValueError("q must be positive")
    return q / euler_phi(q) * sigma_neg(0.5, q) * sigma_neg(1.0, q)
