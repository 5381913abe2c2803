"""Seeded corpora for the lemmas whose bounds carry an unspecified implied constant.

Each corpus yields one ratio observed/bound per instance.  A calibration run
records C_cal = max ratio for a fixed seed; later runs (any seed) must stay
below 2 C_cal.  Regenerate the fixture with ``python3 -m manin_d4.calibration``.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from . import _io
from .arith import rad
from .congruence import (
    CongruenceInstance,
    IntegerRange,
    RegionS,
    affine_error_bound,
    count_D,
    count_D_star,
    count_N,
    count_N_star,
    count_quadratic_interval,
    dyadic_error_sum,
    error_E,
    error_E2,
    main_term_D,
    quadratic_interval_bound,
)
from .density.local import psi_weighted_sum_check, upsilon

CALIBRATION_SEED = 0
FIXTURE = "data/calibration.json"

SUITE_SALT = {"lemma2": 2, "lemma4": 4, "lemma6": 6, "lemma7": 7, "lemma9": 9, "lemma10": 10}


def rng_for(lemma: str, seed: int) -> np.random.Generator:
    return np.random.default_rng([seed, SUITE_SALT[lemma]])


def _unit(rng, q: int) -> int:
    """Nonzero a with |a| <= max(q, 2) and gcd(a, q) = 1."""
    m = max(q, 2)
    while True:
        a = int(rng.integers(-m, m + 1))
        if a and math.gcd(a, q) == 1:
            return a


def random_instance(rng, qmax: int) -> CongruenceInstance:
    q = int(rng.integers(1, qmax + 1))
    r = rad(q)
    b = r * int(rng.integers(-3 * q, 3 * q + 1))
    return CongruenceInstance(q, _unit(rng, q), _unit(rng, q), b)


def random_range(rng, span: int = 50, maxlen: int = 60) -> IntegerRange:
    lo = Fraction(int(rng.integers(-2 * span, 2 * span + 1)), 2)
    length = Fraction(int(rng.integers(0, 2 * maxlen + 1)), 2)
    return IntegerRange(lo, lo + length, bool(rng.integers(2)), bool(rng.integers(2)))


# --------------------------------------------------------------------------
# corpora; each returns a list of ratios in instance order

def corpus_lemma2(seed: int, n: int) -> list[float]:
    """|N - N*| / E(q, a) on random rectangles."""
    rng = rng_for("lemma2", seed)
    out = []
    for _ in range(n):
        inst = random_instance(rng, 30)
        I, J = random_range(rng), random_range(rng)
        diff = abs(count_N(I, J, inst) - count_N_star(I, J, inst.q))
        E = error_E(inst)
        if E == 0:
            # q = 1: the congruence is vacuous and N = N* exactly
            if diff:
                raise ArithmeticError(f"N != N* for {inst}")
            out.append(0.0)
        else:
            out.append(float(diff) / E)
    return out


def corpus_lemma4(seed: int, n: int) -> list[float]:
    """#R / (nu^(1/2) M0^2 / M + 1) with M0 >= M and Y - Y' <= nu M0^2."""
    rng = rng_for("lemma4", seed)
    out = []
    for _ in range(n):
        Y = Fraction(int(rng.integers(1, 10**6)), int(rng.integers(1, 11)))
        A = Fraction(int(rng.integers(-4000, 4001)), int(rng.integers(1, 5)))
        nu = Fraction(int(rng.integers(1, 101)), 100)
        M = max(abs(A), Fraction(math.isqrt(math.floor(Y)) or 1))
        M0 = M * Fraction(int(rng.integers(100, 1001)), 100)
        width = nu * M0 * M0 * Fraction(int(rng.integers(1, 101)), 100)
        count = count_quadratic_interval(Y - width, Y, A)
        out.append(count / quadratic_interval_bound(float(Y), float(A), float(nu), float(M0)))
    return out


def random_region(rng) -> RegionS:
    X = int(rng.integers(4, 160))
    T = max(1, int(X * rng.uniform(0.05, 3.0)))
    return RegionS(X, T, int(rng.integers(1, 5)), int(rng.integers(1, 5)))


def corpus_lemma6(seed: int, n: int) -> list[float]:
    """|D* - main| / (X^2/(A1 A2 q) (sqrt(A1/X) + sqrt(A2/X)) E2(q))."""
    rng = rng_for("lemma6", seed)
    out = []
    for _ in range(n):
        S = random_region(rng)
        q = int(rng.integers(1, 16))
        X, A1, A2 = float(S.X), float(S.A1), float(S.A2)
        bound = X * X / (A1 * A2 * q) * (math.sqrt(A1 / X) + math.sqrt(A2 / X)) * error_E2(q)
        out.append(abs(float(count_D_star(S, q)) - main_term_D(S, q)) / bound)
    return out


def corpus_lemma7(seed: int, n: int) -> list[float]:
    """|D - main| / E(X, T, A1, A2, L, calL, q, a) with L = 1 and calL = max(1, X/T)."""
    rng = rng_for("lemma7", seed)
    out = []
    for _ in range(n):
        S = random_region(rng)
        inst = random_instance(rng, 15)
        calL = max(Fraction(1), Fraction(S.X) / S.T)
        bound = affine_error_bound(S, inst.q, inst, 1.0, calL)
        out.append(abs(count_D(S, inst) - main_term_D(S, inst.q)) / bound)
    return out


def corpus_lemma9(seed: int, n: int) -> list[float]:
    """Dyadic sum of E over (c1, c2) divided by (C1 C2 tau(q) + q) 2^omega(q) E1(q)."""
    rng = rng_for("lemma9", seed)
    out = []
    choices = (0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0)
    for _ in range(n):
        q = int(rng.integers(1, 61))
        C1, C2 = (choices[int(rng.integers(len(choices)))] for _ in range(2))
        b1, b2 = (abs(_unit(rng, q)) for _ in range(2))
        r = dyadic_error_sum(C1, C2, q, b1, b2)
        if r.bound == 0 and r.lhs != 0:
            raise ArithmeticError("nonzero sum against a zero bound")
        out.append(r.ratio)
    return out


G_FAMILY: tuple[tuple[str, int], ...] = (("one", 0), ("ramp", 0), ("cosine", 2))


def _g(kind: str, t2: float) -> Callable:
    """Test functions on [0, t2]; each has sup |g| = 1."""
    if kind == "one":
        return lambda t: 1.0
    if kind == "ramp":
        return lambda t: 1.0 - t / t2
    return lambda t: math.cos(2 * math.pi * t / t2)


def _g_integral(kind: str, t1: float, t2: float) -> float:
    if kind == "one":
        return t2 - t1
    if kind == "ramp":
        return (t2 - t1) - (t2 * t2 - t1 * t1) / (2 * t2)
    w = 2 * math.pi / t2
    return (math.sin(w * t2) - math.sin(w * t1)) / w


def corpus_lemma10(seed: int, n: int) -> list[float]:
    """|sum psi_{a,b}(n) g(n) - Upsilon Psi(a,b) int g| / (sigma_{-gamma/2}(ab) t2^gamma M_I(g))."""
    rng = rng_for("lemma10", seed)
    ups = upsilon(10**6).value
    out = []
    for _ in range(n):
        a = int(rng.integers(1, 61))
        b = int(rng.integers(1, 61))
        t2 = float(10 ** rng.uniform(1, 4))
        t1 = t2 * float(rng.uniform(0, 0.5))
        kind, changes = G_FAMILY[int(rng.integers(len(G_FAMILY)))]
        gamma = (0.5, 1.0)[int(rng.integers(2))]
        g = _g(kind, t2)
        rep = psi_weighted_sum_check(
            a, b, (t1, t2), g, gamma,
            sign_changes=changes, sup_abs=1.0, integral=_g_integral(kind, t1, t2), upsilon_value=ups,
        )
        out.append(rep.ratio)
    return out


CORPORA: dict[str, tuple[Callable[[int, int], list[float]], int]] = {
    "lemma2": (corpus_lemma2, 1000),
    "lemma4": (corpus_lemma4, 1000),
    "lemma6": (corpus_lemma6, 1000),
    "lemma7": (corpus_lemma7, 1000),
    "lemma9": (corpus_lemma9, 1000),
    "lemma10": (corpus_lemma10, 1000),
}


# --------------------------------------------------------------------------
# fixture

@dataclass(frozen=True)
class Calibration:
    lemma: str
    seed: int
    corpus_size: int
    C_cal: float


def calibrate(lemma: str, seed: int = CALIBRATION_SEED, n: int | None = None) -> Calibration:
    fn, default_n = CORPORA[lemma]
    n = default_n if n is None else n
    return Calibration(lemma, seed, n, max(fn(seed, n)))


def load_calibration() -> dict[str, Calibration]:
    import json

    raw = json.loads(resources.files("manin_d4").joinpath(FIXTURE).read_text())
    return {k: Calibration(k, v["seed"], v["corpus_size"], float(v["C_cal"])) for k, v in raw.items()}


@dataclass(frozen=True)
class CorpusCheck:
    lemma: str
    seed: int
    corpus_size: int
    max_ratio: float
    C_cal: float

    @property
    def passed(self) -> bool:
        return self.max_ratio <= 2 * self.C_cal


def check_corpus(lemma: str, seed: int, n: int | None = None) -> CorpusCheck:
    cal = load_calibration()[lemma]
    fn, _ = CORPORA[lemma]
    n = cal.corpus_size if n is None else n
    return CorpusCheck(lemma, seed, n, max(fn(seed, n)), cal.C_cal)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python3 -m manin_d4.calibration")
    ap.add_argument("--seed", type=int, default=CALIBRATION_SEED)
    ap.add_argument("--out", type=Path, default=Path(__file__).parent / FIXTURE)
    args = ap.parse_args(argv)
    data = {}
    for lemma in CORPORA:
        c = calibrate(lemma, args.seed)
        data[lemma] = {"seed": c.seed, "corpus_size": c.corpus_size, "C_cal": c.C_cal}
        print(f"{lemma}: C_cal = {_io.fmt_float(c.C_cal)} over {c.corpus_size} instances", file=sys.stderr)
    args.out.write_text(_io.dumps(data))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
