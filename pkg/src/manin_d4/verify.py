"""Verification suites: exact identities, exhaustive bounds and calibrated ratios."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import euler_phi, rad
from .calibration import CORPORA, load_calibration, random_instance, random_range
from .congruence import (
    CongruenceInstance,
    PrimitiveVectorQuery,
    count_N,
    count_N_star,
    exp_sum_table_closed,
    exp_sum_table_direct,
    heath_brown_bound,
    heath_brown_count,
    heath_brown_holds,
)
from .density import archimedean as arch
from .density.local import local_factor_closed, local_factor_Theta, local_identity_holds, omega_p
from .density.polytope import alpha_polytope, alpha_volume, cube, standard_simplex
from .torsor import (
    bijection_check,
    degenerate_count,
    fiber_partition,
    squarefree_renormalize,
    torsor_count,
)
from .torsor.types import height_monomials, torsor_residual

SUITES = ("lemma1", "lemma2", "lemma4", "lemma5", "lemma6", "lemma8", "lemma9", "lemma10", "torsor", "local", "alpha")
LOCAL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class Check:
    suite: str
    check: str
    passed: bool
    value: float | int | str
    bound: float | int | str | None = None

    def row(self) -> dict:
        return {"suite": self.suite, "check": self.check, "passed": self.passed, "value": self.value, "bound": self.bound}


@dataclass(frozen=True)
class VerifyOptions:
    seed: int = 42
    height: int = 100
    threads: int = 1
    q_max_lemma1: int = 40


# --------------------------------------------------------------------------

def lemma1(opt: VerifyOptions) -> list[Check]:
    """Closed form of S_q against the direct sum, for every valid (a1, a2, b) with |a_i| <= q."""
    worst, n = 0.0, 0
    for q in range(1, opt.q_max_lemma1 + 1):
        amax = max(q, 1)
        units = [a for a in range(-amax, amax + 1) if a and math.gcd(a, q) == 1]
        r = rad(q)
        bs = range(0, q, r) if q > 1 else (0,)
        cache: dict = {}
        for a1 in units:
            for a2 in units:
                for b in bs:
                    # both tables depend on (a1, a2) only through their residues
                    key = (a1 % q, a2 % q, b)
                    if key not in cache:
                        inst = CongruenceInstance(q, a1, a2, b)
                        d = exp_sum_table_direct(inst)
                        c = exp_sum_table_closed(inst)
                        cache[key] = float(np.max(np.abs(d - c)))
                    worst = max(worst, cache[key])
                    n += 1
    return [Check("lemma1", f"max |closed - direct|, q <= {opt.q_max_lemma1}, {n} instances", worst < 1e-8, worst, 1e-8)]


def _calibrated(lemma: str, suite: str, opt: VerifyOptions) -> Check:
    cal = load_calibration()[lemma]
    fn, _ = CORPORA[lemma]
    ratio = max(fn(opt.seed, cal.corpus_size))
    return Check(suite, f"{lemma} max ratio over {cal.corpus_size} instances <= 2 C_cal", ratio <= 2 * cal.C_cal, ratio, 2 * cal.C_cal)


def lemma2(opt: VerifyOptions) -> list[Check]:
    rng = np.random.default_rng([opt.seed, 102])
    exact_ok = True
    omit_ok = True
    for _ in range(50):
        inst = random_instance(rng, 30)
        I, J = random_range(rng), random_range(rng)
        q = inst.q
        total = sum(count_N(I, J, CongruenceInstance(q, inst.a1, a2, inst.b)) for a2 in range(1, q + 1) if math.gcd(a2, q) == 1)
        exact_ok &= total == euler_phi(q) * count_N_star(I, J, q)
        omit_ok &= count_N(I, J, inst) == count_N(I, J, inst, check_u=False)
    return [
        Check("lemma2", "sum over a2 of N = phi(q) N*, 50 instances", bool(exact_ok), int(exact_ok)),
        Check("lemma2", "dropping gcd(u, q) = 1 leaves N unchanged", bool(omit_ok), int(omit_ok)),
        _calibrated("lemma2", "lemma2", opt),
    ]


def lemma4(opt: VerifyOptions) -> list[Check]:
    return [_calibrated("lemma4", "lemma4", opt)]


def lemma5(opt: VerifyOptions) -> list[Check]:
    rng = np.random.default_rng([opt.seed, 105])
    ts = 10 ** rng.uniform(-1.5, math.log10(arch.T_MAX), 200)
    ys = rng.uniform(-1, 1, 200) / ts**2
    g1_ok = all(arch.g1(float(y), float(t)) <= 2 / t**2 + 1e-12 for y, t in zip(ys, ts))
    grid = np.linspace(0.05, arch.T_MAX, 12)
    coarse = arch.QuadratureConfig(quad_tol=1e-8)
    fine = arch.QuadratureConfig(quad_tol=1e-9)
    vals = [arch.g2(float(t), fine, with_error=True) for t in grid]
    sup = max(v for v, _ in vals)
    drift = max(abs(arch.g2(float(t), coarse) - v) for t, (v, _) in zip(grid, vals))
    err = max(e for _, e in vals)
    return [
        Check("lemma5", "g1(y, t) <= 2/t^2 on 200 samples", g1_ok, int(g1_ok)),
        Check("lemma5", "g2 vanishes beyond 3^(1/3)", arch.g2(arch.T_MAX * 1.001) == 0.0, 0),
        Check("lemma5", "sup of g2 on grid is finite", math.isfinite(sup), sup),
        Check("lemma5", "g2 stable under 10x tolerance refinement", drift <= 10 * 1e-8 + err, drift, 10 * 1e-8 + err),
    ]


def lemma6(opt: VerifyOptions) -> list[Check]:
    return [_calibrated("lemma6", "lemma6", opt), _calibrated("lemma7", "lemma6", opt)]


def lemma8(opt: VerifyOptions) -> list[Check]:
    rng = np.random.default_rng([opt.seed, 108])
    violations, n, worst = 0, 0, 0.0
    while n < 1000:
        v = tuple(int(x) for x in rng.integers(-50, 51, 3))
        if math.gcd(*v) != 1:
            continue
        W = tuple(Fraction(int(x), 4) for x in rng.integers(4, 121, 3))
        qv = PrimitiveVectorQuery(v, W)
        if not heath_brown_holds(qv):
            violations += 1
        worst = max(worst, heath_brown_count(qv) / float(heath_brown_bound(qv)))
        n += 1
    return [
        Check("lemma8", "violations of 12 pi W1 W2 W3 / max|v_i| W_i + 4 over 1000 queries", violations == 0, violations, 0),
        Check("lemma8", "max count / bound", worst <= 1, worst, 1),
    ]


def lemma9(opt: VerifyOptions) -> list[Check]:
    return [_calibrated("lemma9", "lemma9", opt)]


def lemma10(opt: VerifyOptions) -> list[Check]:
    return [_calibrated("lemma10", "lemma10", opt)]


def torsor(opt: VerifyOptions) -> list[Check]:
    B = opt.height
    out = []
    if B <= 500:
        rep = bijection_check(B, threads=opt.threads)
        out.append(Check("torsor", f"bijection T({B}) -> U(Q) points of height <= {B}", rep.ok, rep.torsor_count, rep.brute_count))
    tc = torsor_count(B, points=B <= 2000, threads=opt.threads)
    part, ntuples = fiber_partition(B, threads=opt.threads)
    out.append(Check("torsor", f"sum of fiber counts over {ntuples} tuples = torsor count", part == tc.count, part, tc.count))
    out.append(Check("torsor", "degenerate count at B = 1", degenerate_count(1) == 3, degenerate_count(1), 3))
    ok = True
    for t in tc.points:
        e = t.eta
        new = squarefree_renormalize(*e[:7])
        f = (*new, *e[7:])
        ok &= torsor_residual(f) == 0 and height_monomials(f) == height_monomials(e)
        ok &= squarefree_renormalize(*new) == new
    out.append(Check("torsor", "squarefree renormalization keeps equation and heights", bool(ok), len(tc.points)))
    return out


def local(opt: VerifyOptions) -> list[Check]:
    out = []
    for p in LOCAL_PRIMES:
        diff = abs(local_factor_Theta(p) - float(local_factor_closed(p)))
        out.append(Check("local", f"truncated Theta sum vs closed form at p = {p}", diff < 1e-10, diff, 1e-10))
    ident = all(local_identity_holds(p) for p in LOCAL_PRIMES)
    out.append(Check("local", "per-prime identity with (1-1/p)^7 omega_p", ident, int(ident)))
    out.append(Check("local", "omega_2 = 19/4", omega_p(2) == Fraction(19, 4), str(omega_p(2))))
    return out


def alpha(opt: VerifyOptions) -> list[Check]:
    a = alpha_volume(alpha_polytope())
    return [
        Check("alpha", "alpha polytope volume", a == Fraction(1, 23040), str(a), "1/23040"),
        Check("alpha", "unit 6-cube volume", alpha_volume(cube(6)) == 1, str(alpha_volume(cube(6))), "1"),
        Check("alpha", "standard 6-simplex volume", alpha_volume(standard_simplex(6)) == Fraction(1, 720),
              str(alpha_volume(standard_simplex(6))), "1/720"),
    ]


RUNNERS = {name: globals()[name] for name in SUITES}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    checks: tuple[Check, ...]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_suite(name: str, opt: VerifyOptions = VerifyOptions()) -> SuiteReport:
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in RUNNERS:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    t0 = time.perf_counter()
    checks: list[Check] = []
    for n in names:
        checks.extend(RUNNERS[n](opt))
    return SuiteReport(name, opt.seed, tuple(checks), time.perf_counter() - t0)
