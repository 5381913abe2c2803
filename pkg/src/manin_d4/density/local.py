"""Local densities, Euler products and the arithmetic weights theta, Theta, psi."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from ..arith import is_prime, phi_curlyvee, phi_star, primes_upto, psi, psi_factor, sigma_neg

# sup over primes of p^2 |log f_p| for the two Euler factors below.  The
# omega_H factor tends to -27/p^2 + 52.5/p^3 + ..., so 27 is the sharp
# constant (checked numerically for every p <= 10^6); Upsilon's tends to 3.
TAIL_C_OMEGA = 27
TAIL_C_UPSILON = 3


def omega_p(p: int) -> Fraction:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return 1 + Fraction(7, p) + Fraction(1, p * p)


@dataclass(frozen=True)
class EulerProduct:
    value: float
    tail: float
    P: int
    c: int


def _euler(P: int, logf, c: int) -> EulerProduct:
    if P < 2:
        raise ValueError("cutoff must be at least 2")
    ps = primes_upto(P).astype(float)
    logs = logf(ps)
    value = math.exp(math.fsum(logs.tolist()))
    # every omitted factor lies in [exp(-c/p^2), 1]
    tail = value * -math.expm1(-c / (P - 1)) if P > 1 else value
    return EulerProduct(value, tail, P, c)


def euler_product_omega_H(P: int) -> EulerProduct:
    """prod_{p <= P} (1 - 1/p)^7 (1 + 7/p + 1/p^2), with a bound on the omitted tail."""
    return _euler(P, lambda p: 7 * np.log1p(-1 / p) + np.log1p(7 / p + 1 / p**2), TAIL_C_OMEGA)


def upsilon(P: int) -> EulerProduct:
    """prod_{p <= P} (1 - 1/p)^2 (1 + 2/p), with a bound on the omitted tail."""
    return _euler(P, lambda p: 2 * np.log1p(-1 / p) + np.log1p(2 / p), TAIL_C_UPSILON)


def euler_product_exact(P: int, factor: Callable[[int], Fraction]) -> Fraction:
    out = Fraction(1)
    for p in primes_upto(P).tolist():
        out *= factor(p)
    return out


def omega_H_factor(p: int) -> Fraction:
    return Fraction(p - 1, p) ** 7 * omega_p(p)


def upsilon_factor(p: int) -> Fraction:
    return 1 / phi_curlyvee(p)


# --------------------------------------------------------------------------
# arithmetic weights

def theta1(eta1: int, eta234: int) -> Fraction:
    return psi(eta234, eta1)


def theta2(e2: int, e3: int, e4: int, e5: int, e6: int, e7: int) -> Fraction:
    e234 = e2 * e3 * e4
    return phi_star(e234) * phi_star(e234 * e5 * e6 * e7)


def gates_hold(e2: int, e3: int, e4: int, e5: int, e6: int, e7: int) -> bool:
    return math.gcd(e2 * e5, e3 * e4 * e6 * e7) == 1 and math.gcd(e3 * e6, e4 * e7) == 1


def Theta(e2: int, e3: int, e4: int, e5: int, e6: int, e7: int) -> Fraction:
    if min(e2, e3, e4, e5, e6, e7) < 1:
        raise ValueError("arguments must be positive")
    if not gates_hold(e2, e3, e4, e5, e6, e7):
        return Fraction(0)
    e234 = e2 * e3 * e4
    e_all = e234 * e5 * e6 * e7
    return phi_star(e234) * phi_star(e_all) * phi_star(e5 * e6 * e7) * phi_curlyvee(e_all)


def local_factor_closed(p: int) -> Fraction:
    """phi_curlyvee(p) (1 - 1/p)(1 + 7/p + 1/p^2)."""
    return phi_curlyvee(p) * Fraction(p - 1, p) * omega_p(p)


def _grouped_local_sum(p: int, geo: Fraction) -> Fraction:
    # Theta on prime powers depends only on which exponents are positive;
    # geo is the sum of p^-k over the allowed positive k
    total = Fraction(0)
    for support in itertools.product((0, 1), repeat=6):
        n = sum(support)
        val = Theta(*(p if s else 1 for s in support))
        if val:
            total += val * geo**n
    return total


def local_factor_Theta_exact(p: int) -> Fraction:
    """The full sum over all exponent vectors, as an exact rational."""
    return _grouped_local_sum(p, Fraction(1, p - 1))


def local_factor_tail(p: int, kmax: int) -> Fraction:
    """Bound on the mass of exponent vectors with some k_i > kmax."""
    full = Fraction(1, p - 1)
    trunc = full * (1 - Fraction(1, p**kmax))
    return phi_curlyvee(p) * ((1 + full) ** 6 - (1 + trunc) ** 6)


def local_factor_Theta(p: int, kmax: int | None = None, tail_tol: float = 1e-14) -> float:
    """Sum of Theta(p^k2, ..., p^k7) / p^(k2+...+k7) over 0 <= k_i <= kmax."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if kmax is None:
        kmax = 20
        while local_factor_tail(p, kmax) >= tail_tol:
            kmax += 1
    if kmax < 20:
        raise ValueError("kmax must be at least 20")
    tail = local_factor_tail(p, kmax)
    if tail >= tail_tol:
        raise ValueError(f"kmax={kmax} leaves a tail of {float(tail):.3g} at p={p}")
    geo = Fraction(1, p - 1) * (1 - Fraction(1, p**kmax))
    return float(_grouped_local_sum(p, geo))


def local_factor_Theta_bruteforce(p: int, kmax: int) -> Fraction:
    """Term-by-term truncated sum; only for small kmax."""
    total = Fraction(0)
    for ks in itertools.product(range(kmax + 1), repeat=6):
        val = Theta(*(p**k for k in ks))
        if val:
            total += val / Fraction(p ** sum(ks))
    return total


def local_identity_holds(p: int) -> bool:
    """(1-1/p)^6 * local factor / phi_curlyvee(p) == (1-1/p)^7 omega_p, exactly."""
    lhs = Fraction(p - 1, p) ** 6 * local_factor_Theta_exact(p) / phi_curlyvee(p)
    return lhs == omega_H_factor(p)


# --------------------------------------------------------------------------
# weighted sums of psi_{a,b}

def Psi(a: int, b: int) -> Fraction:
    return phi_star(b) * phi_curlyvee(a * b)


def psi_ab_table(a: int, b: int, N: int) -> np.ndarray:
    """psi_{a,b}(n) for 0 <= n <= N as floats (index 0 unused)."""
    out = np.ones(N + 1)
    for p in primes_upto(N).tolist():
        if b % p == 0:
            f = 0.0
        elif a % p == 0:
            continue
        else:
            f = float(psi_factor(p))
        out[p::p] *= f
    out[0] = 0.0
    return out


@dataclass(frozen=True)
class WeightedSumReport:
    lhs: float
    main: float
    envelope: float

    @property
    def ratio(self) -> float:
        if self.envelope == 0:
            return 0.0 if self.lhs == self.main else math.inf
        return abs(self.lhs - self.main) / self.envelope


def psi_weighted_sum_check(
    a: int,
    b: int,
    I: tuple[float, float],
    g: Callable,
    gamma: float,
    *,
    sign_changes: int = 0,
    sup_abs: float | None = None,
    integral: float | None = None,
    upsilon_value: float | None = None,
) -> WeightedSumReport:
    """Compare sum_{n in I} psi_{a,b}(n) g(n) with Upsilon Psi(a,b) int_I g.

    The envelope is sigma_{-gamma/2}(ab) t2^gamma (1 + R_g) sup|g|.
    """
    t1, t2 = I
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    if t1 < 0 or t2 < t1:
        raise ValueError("need 0 <= t1 <= t2")
    if t2 == t1:
        return WeightedSumReport(0.0, 0.0, 0.0)
    lo, hi = max(1, math.ceil(t1)), math.floor(t2)
    gv = np.vectorize(g, otypes=[float])
    if hi >= lo:
        n = np.arange(lo, hi + 1)
        lhs = math.fsum((psi_ab_table(a, b, hi)[lo:] * gv(n)).tolist())
    else:
        lhs = 0.0
    if integral is None:
        integral = integrate.quad(g, t1, t2, limit=500)[0]
    if upsilon_value is None:
        upsilon_value = upsilon(10**6).value
    if sup_abs is None:
        grid = np.linspace(max(t1, 1e-12), t2, 4097)
        sup_abs = float(np.max(np.abs(gv(grid))))
    main = upsilon_value * float(Psi(a, b)) * integral
    envelope = sigma_neg(gamma / 2, a * b) * t2**gamma * (1 + sign_changes) * sup_abs
    return WeightedSumReport(lhs, main, envelope)
