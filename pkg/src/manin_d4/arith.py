"""Exact integer arithmetic and multiplicative functions.

Rational values are returned as :class:`fractions.Fraction`.  Small
arguments are factored through a smallest-prime-factor table.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_N = 2**63 - 1
SIEVE_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must have increasing primes and positive exponents")
            prod *= p**e
            last = p
        if prod != self.value:
            raise ValueError("factors do not multiply to value")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


# --------------------------------------------------------------------------
# sieve

_spf: np.ndarray | None = None
_primes: np.ndarray | None = None


def _build_spf(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    return spf


def _load_spf() -> np.ndarray:
    cache_dir = os.environ.get("MANIN_D4_CACHE_DIR")
    path = None
    if cache_dir:
        path = os.path.join(cache_dir, f"spf_{SIEVE_LIMIT}.npy")
        if os.path.exists(path):
            try:
                arr = np.load(path)
                if arr.shape == (SIEVE_LIMIT + 1,):
                    return arr
            except (OSError, ValueError):
                pass
    spf = _build_spf(SIEVE_LIMIT)
    if path:
        try:
            os.makedirs(cache_dir, exist_ok=True)
            np.save(path, spf)
        except OSError:
            pass
    return spf


def spf_table() -> np.ndarray:
    """Smallest prime factor of every n <= SIEVE_LIMIT (spf[0] = spf[1] = 0/1)."""
    global _spf
    if _spf is None:
        _spf = _load_spf()
    return _spf


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    global _primes
    if n <= SIEVE_LIMIT:
        if _primes is None:
            spf = spf_table()
            ar = np.arange(spf.size)
            _primes = ar[(spf == ar) & (ar >= 2)].astype(np.int64)
        return _primes[: np.searchsorted(_primes, n, side="right")]
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


# --------------------------------------------------------------------------
# primality and factoring

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1


def _split_large(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split_large(d, out)
    _split_large(n // d, out)


@lru_cache(maxsize=1 << 16)
def _factor_tuple(n: int) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    if n <= SIEVE_LIMIT:
        spf = spf_table()
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
        return tuple(out.items())
    bound = min(SIEVE_LIMIT, math.isqrt(n))
    for p in primes_upto(bound).tolist():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n <= SIEVE_LIMIT**2:
            out[n] = out.get(n, 0) + 1
        else:
            _split_large(n, out)
    return tuple(sorted(out.items()))


def factor(n: int) -> Factorization:
    n = int(n)
    if n < 1 or n > MAX_N:
        raise ValueError(f"factor() needs 1 <= n <= 2**63-1, got {n}")
    return Factorization(n, _factor_tuple(n))


def prime_divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(p for p, _ in _factor_tuple(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# --------------------------------------------------------------------------
# multiplicative functions

def rad(n: int) -> int:
    return math.prod(prime_divisors(n))


def sq(n: int) -> int:
    return math.prod(p ** (e // 2) for p, e in factor(n).factors)


def mu(n: int) -> int:
    fs = factor(n).factors
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p in prime_divisors(n):
        out = out // p * (p - 1)
    return out


def tau(n: int) -> int:
    return math.prod(e + 1 for _, e in factor(n).factors)


def omega_count(n: int) -> int:
    return len(prime_divisors(n))


def sigma_neg(lam: float, n: int) -> float:
    """Sum over divisors k of n of k**(-lam)."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    out = 1.0
    for p, e in factor(n).factors:
        out *= math.fsum(p ** (-lam * k) for k in range(e + 1))
    return out


@lru_cache(maxsize=1 << 16)
def phi_star(n: int) -> Fraction:
    out = Fraction(1)
    for p in prime_divisors(n):
        out *= Fraction(p - 1, p)
    return out


def _phi_curlyvee_p(p: int) -> Fraction:
    return Fraction(p * p * p, (p - 1) ** 2 * (p + 2))


@lru_cache(maxsize=1 << 16)
def phi_curlyvee(n: int) -> Fraction:
    out = Fraction(1)
    for p in prime_divisors(n):
        out *= _phi_curlyvee_p(p)
    return out


def psi_factor(p: int) -> Fraction:
    """(1 - 1/p)^2 (1 - 1/(p-1)); zero at p = 2."""
    return Fraction((p - 1) * (p - 2), p * p)


@lru_cache(maxsize=1 << 16)
def psi(a: int, n: int) -> Fraction:
    if a < 1 or n < 1:
        raise ValueError("a and n must be positive")
    out = Fraction(1)
    for p in prime_divisors(n):
        if a % p:
            out *= psi_factor(p)
    return out


def psi_ab(a: int, b: int, n: int) -> Fraction:
    if b < 1:
        raise ValueError("b must be positive")
    if math.gcd(n, b) > 1:
        return Fraction(0)
    return psi(a, n)


def ramanujan_c(q: int, n: int) -> int:
    """c_q(n) via the divisor formula, with gcd(q, 0) = q."""
    if q < 1:
        raise ValueError("q must be positive")
    g = math.gcd(q, n)
    return sum(mu(q // d) * d for d in divisors(g))


def ramanujan_c_direct(q: int, n: int) -> complex:
    """c_q(n) as the exponential sum over reduced residues mod q."""
    if q < 1:
        raise ValueError("q must be positive")
    alpha = np.array([a for a in range(1, q + 1) if math.gcd(a, q) == 1], dtype=np.int64)
    ang = 2 * np.pi * ((n * alpha) % q) / q
    return complex(np.cos(ang).sum(), np.sin(ang).sum())


def mod_inverse(a: int, q: int) -> int:
    if q < 1:
        raise ValueError("q must be positive")
    if math.gcd(a, q) != 1:
        raise ValueError(f"{a} is not invertible modulo {q}")
    if q == 1:
        return 1
    return pow(a, -1, q)
