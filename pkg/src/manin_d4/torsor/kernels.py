"""Compiled enumeration kernels.

All arithmetic is int64.  Callers keep B <= MAX_B so every monomial and
every product formed below stays under 2^63 (the largest is about 4 B^2).
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

MAX_B = 10**9

EMPTY = np.zeros((0, 10), dtype=np.int64)


@njit(cache=True, nogil=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _inv(a, m):
    """Inverse of a modulo m (m >= 1, gcd(a, m) = 1); 0 when m = 1."""
    if m == 1:
        return 0
    r0, r1 = a % m, m
    s0, s1 = 1, 0
    while r1:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    return s0 % m


@njit(cache=True, nogil=True)
def fiber(e1, e2, e3, e4, e5, e6, e7, B, buf, pos):
    """Count (eta8, eta9, eta10) completing (eta1..eta7); rows go to buf[pos:].

    The variable with the largest coefficient q is looped over; of the other
    two, the one with the larger q is solved from the torsor equation and
    the remaining one steps through its residue class modulo that q.
    """
    base = e1 * e1 * e2 * e3 * e4
    q = np.empty(3, np.int64)
    q[0] = e2 * e5 * e5
    q[1] = e3 * e6 * e6
    q[2] = e4 * e7 * e7
    e1234 = e1 * e2 * e3 * e4
    G = np.empty(3, np.int64)
    G[0] = e1234 * e6 * e7
    G[1] = e1234 * e5 * e7
    G[2] = e1234 * e5 * e6
    b = e1234 * e5 * e6 * e7
    M = np.empty(3, np.int64)
    for m in range(3):
        M[m] = B // (base * q[m])
        if M[m] == 0:
            return 0

    i = 0
    for m in range(1, 3):
        if q[m] > q[i]:
            i = m
    j, k = (1, 2) if i == 0 else ((0, 2) if i == 1 else (0, 1))
    if q[j] > q[k]:
        j, k = k, j
    qi, qj, qk = q[i], q[j], q[k]
    Mi, Mj, Mk = M[i], M[j], M[k]
    Gi, Gj, Gk = G[i], G[j], G[k]
    invj = _inv(qj, qk)
    cap = buf.shape[0]
    count = 0

    for u in range(-Mi, Mi + 1):
        if u == 0 or _gcd(u, Gi) != 1:
            continue
        au = abs(u)
        c = b - qi * u
        Bu = B // au
        K = (B * qk) // au
        # |w| <= Mk with w = (c - qj v) / qk
        lo = max(-Mj, -((qk * Mk - c) // qj))
        hi = min(Mj, (c + qk * Mk) // qj)
        # |v (c - qj v)| <= K, outer interval
        cf = float(c)
        d_out = math.sqrt(cf * cf + 4.0 * qj * K)
        lo = max(lo, int(math.floor((cf - d_out) / (2.0 * qj))) - 1)
        hi = min(hi, int(math.ceil((cf + d_out) / (2.0 * qj))) + 1)
        if lo > hi:
            continue
        # integers strictly inside the inner gap certainly fail
        gap_lo, gap_hi = hi + 1, hi
        d_in2 = cf * cf - 4.0 * qj * K
        if d_in2 > 0:
            d_in = math.sqrt(d_in2)
            gap_lo = int(math.floor((cf - d_in) / (2.0 * qj))) + 2
            gap_hi = int(math.ceil((cf + d_in) / (2.0 * qj))) - 2
        r = ((c % qk) * invj) % qk
        v = lo + ((r - lo) % qk)
        while v <= hi:
            if gap_lo <= v <= gap_hi:
                v = gap_hi + 1 + ((r - gap_hi - 1) % qk)
                continue
            if v != 0:
                num = c - qj * v
                if num != 0:
                    w = num // qk
                    if abs(w) <= Mk and abs(v) * abs(w) <= Bu:
                        if _gcd(v, Gj) == 1 and _gcd(w, Gk) == 1:
                            if pos + count < cap:
                                row = buf[pos + count]
                                row[0] = e1
                                row[1] = e2
                                row[2] = e3
                                row[3] = e4
                                row[4] = e5
                                row[5] = e6
                                row[6] = e7
                                row[7 + i] = u
                                row[7 + j] = v
                                row[7 + k] = w
                            count += 1
            v += qk
    return count


@njit(cache=True, nogil=True)
def block(e1, e2, B, mode, buf):
    """Walk all (eta3..eta7) under the prefix (eta1, eta2).

    mode 0: total count; mode 1: only tuples with q8 = q10 or q9 = q10;
    mode 2: list the admissible tuples (eta1..eta7) into buf instead.
    """
    B3 = 3 * B
    total = 0
    w2 = e1 * e1 * e1 * e2 * e2
    if w2 > B3 or e1 * e1 * e2 * e2 > B:
        return 0
    e3 = 0
    while True:
        e3 += 1
        w3 = w2 * e3 * e3
        if w3 > B3 or e1 * e1 * e2 * e2 * e3 > B or e1 * e1 * e2 * e3 * e3 > B:
            break
        if _gcd(e2, e3) != 1:
            continue
        e4 = 0
        while True:
            e4 += 1
            w4 = w3 * e4 * e4
            b4 = e1 * e1 * e2 * e3 * e4
            if w4 > B3 or b4 * e2 > B or b4 * e3 > B or b4 * e4 > B:
                break
            if _gcd(e4, e2 * e3) != 1:
                continue
            e5 = 0
            while True:
                e5 += 1
                w5 = w4 * e5
                if w5 > B3 or b4 * e2 * e5 * e5 > B:
                    break
                if _gcd(e5, e1 * e3 * e4) != 1:
                    continue
                e6 = 0
                while True:
                    e6 += 1
                    w6 = w5 * e6
                    if w6 > B3 or b4 * e3 * e6 * e6 > B:
                        break
                    if _gcd(e6, e1 * e2 * e4 * e5) != 1:
                        continue
                    e7 = 0
                    while True:
                        e7 += 1
                        w7 = w6 * e7
                        if w7 > B3 or b4 * e4 * e7 * e7 > B:
                            break
                        if _gcd(e7, e1 * e2 * e3 * e5 * e6) != 1:
                            continue
                        if mode == 2:
                            if total < buf.shape[0]:
                                row = buf[total]
                                row[0] = e1
                                row[1] = e2
                                row[2] = e3
                                row[3] = e4
                                row[4] = e5
                                row[5] = e6
                                row[6] = e7
                            total += 1
                            continue
                        if mode == 1:
                            q10 = e4 * e7 * e7
                            if e2 * e5 * e5 != q10 and e3 * e6 * e6 != q10:
                                continue
                        total += fiber(e1, e2, e3, e4, e5, e6, e7, B, buf, total)
    return total


@njit(cache=True, nogil=True)
def brute_block(x1, B, buf):
    """Canonical primitive points (x0, x1', x2', x3') of height <= B from triples (x1, *, *)."""
    n = 0
    cap = buf.shape[0]
    for x2 in range(-B, B + 1):
        if x2 == 0:
            continue
        for x3 in range(-B, B + 1):
            if x3 == 0:
                continue
            s = x1 + x2 + x3
            if s == 0:
                continue
            s2 = s * s
            p = x1 * x2 * x3
            g = _gcd(_gcd(p, x1 * s2), _gcd(x2 * s2, x3 * s2))
            y0 = p // g
            y1 = x1 * s2 // g
            y2 = x2 * s2 // g
            y3 = x3 * s2 // g
            if abs(y0) > B or abs(y1) > B or abs(y2) > B or abs(y3) > B:
                continue
            if y0 < 0:
                y0, y1, y2, y3 = -y0, -y1, -y2, -y3
            if n < cap:
                buf[n, 0] = y0
                buf[n, 1] = y1
                buf[n, 2] = y2
                buf[n, 3] = y3
            n += 1
    return n
