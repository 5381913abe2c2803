"""Brute-force and torsor counts of rational points of bounded height on U."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..arith import sq
from ..density.archimedean import DEFAULT_CONFIG, T_MAX, g2
from ..density.local import theta1, theta2
from . import kernels
from .types import FiberContext, InvariantError, SurfacePoint, TorsorPoint, canonical, height_monomials, surface_residual

BRUTE_FORCE_CAP = 500
TORSOR_CAP = kernels.MAX_B


class CapError(ValueError):
    pass


def _check_B(B: int, cap: int) -> int:
    if isinstance(B, bool) or int(B) != B:
        raise ValueError("B must be an integer")
    B = int(B)
    if B < 1:
        raise ValueError("B must be at least 1")
    if B > cap:
        raise CapError(f"B={B} exceeds the cap {cap}")
    return B


def _run(fn, jobs, threads: int):
    """Apply fn to each job; results come back in job order whatever the pool size."""
    if threads < 1:
        raise ValueError("threads must be at least 1")
    if threads == 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs))


def _grow(call, width: int, start: int = 1024) -> np.ndarray:
    """Run a kernel that fills a row buffer, retrying with a larger one if it overflowed."""
    cap = start
    while True:
        buf = np.zeros((cap, width), dtype=np.int64)
        n = call(buf)
        if n <= cap:
            return buf[:n]
        cap = n


# --------------------------------------------------------------------------
# brute force

@dataclass(frozen=True)
class CountResult:
    B: int
    count: int
    points: tuple = field(default=(), repr=False)


def brute_force_count(B: int, *, include_lines: bool = False, points: bool = False,
                      threads: int = 1, cap: int = BRUTE_FORCE_CAP) -> CountResult:
    """#{x in U(Q) : H(x) <= B} by scanning every (x1, x2, x3).

    The six lines carry infinitely many points of bounded height on the
    projective closure only through x1 x2 x3 = 0 or x1 + x2 + x3 = 0, which
    this scan never visits; include_lines is accepted for interface symmetry
    and must be False.
    """
    B = _check_B(B, cap)
    if include_lines:
        raise ValueError("points on the six lines are not counted")
    # (x1, x2, x3) and its negative give the same point, so x1 > 0 suffices
    rows = _run(lambda x1: _grow(lambda buf: kernels.brute_block(x1, B, buf), 4), list(range(1, B + 1)), threads)
    allpts = np.concatenate(rows) if rows else np.zeros((0, 4), np.int64)
    uniq = np.unique(allpts, axis=0) if len(allpts) else allpts
    pts = tuple(SurfacePoint(*map(int, r)) for r in uniq) if points else ()
    return CountResult(B, len(uniq), pts)


# --------------------------------------------------------------------------
# torsor

def prefixes(B: int) -> list[tuple[int, int]]:
    """(eta1, eta2) pairs that can start an admissible tuple."""
    out = []
    e1 = 1
    while e1**3 <= 3 * B and e1 * e1 <= B:
        e2 = 1
        while e1**3 * e2 * e2 <= 3 * B and (e1 * e2) ** 2 <= B:
            out.append((e1, e2))
            e2 += 1
        e1 += 1
    return out


def _block_count(B: int, mode: int):
    return lambda pre: kernels.block(pre[0], pre[1], B, mode, kernels.EMPTY)


def torsor_count(B: int, *, points: bool = False, threads: int = 1) -> CountResult:
    """#T(B), the number of integral torsor points under the height conditions."""
    B = _check_B(B, TORSOR_CAP)
    jobs = prefixes(B)
    if not points:
        return CountResult(B, sum(_run(_block_count(B, 0), jobs, threads)))
    rows = _run(lambda pre: _grow(lambda buf: kernels.block(pre[0], pre[1], B, 0, buf), 10), jobs, threads)
    pts = tuple(TorsorPoint(*map(int, r), B) for block in rows for r in block)
    return CountResult(B, len(pts), pts)


def admissible_tuples(B: int, threads: int = 1) -> np.ndarray:
    """All (eta1, ..., eta7) that pass the box, height-monomial and coprimality filters."""
    B = _check_B(B, TORSOR_CAP)
    rows = _run(lambda pre: _grow(lambda buf: kernels.block(pre[0], pre[1], B, 2, buf), 10), prefixes(B), threads)
    if not rows:
        return np.zeros((0, 7), np.int64)
    return np.concatenate(rows)[:, :7]


def degenerate_count(B: int, *, threads: int = 1) -> int:
    """Members of T(B) with q8 = q10 or q9 = q10."""
    B = _check_B(B, TORSOR_CAP)
    return sum(_run(_block_count(B, 1), prefixes(B), threads))


def degenerate_ratio(B: int, count: int) -> float:
    return count / (B * math.log(B) ** 3) if B > 1 else math.inf


# --------------------------------------------------------------------------
# fibers

def _fiber_pre(ctx: FiberContext, e1: int):
    if e1 < 1:
        raise ValueError("eta1 must be positive")
    if not ctx.coprime():
        raise ValueError(f"{ctx.eta} violates the coprimality conditions 5 and 6")
    if math.gcd(e1, ctx.e5 * ctx.e6 * ctx.e7) != 1:
        raise ValueError("eta1 must be coprime to eta5 eta6 eta7")


def fiber_count(ctx: FiberContext, e1: int, B: int | None = None) -> int:
    """Number of (eta8, eta9, eta10) completing (eta1, ctx) to a point of T(B)."""
    B = _check_B(ctx.B if B is None else B, TORSOR_CAP)
    _fiber_pre(ctx, e1)
    return int(kernels.fiber(e1, *ctx.eta, B, kernels.EMPTY, 0))


def fiber_points(ctx: FiberContext, e1: int, B: int | None = None) -> list[TorsorPoint]:
    B = _check_B(ctx.B if B is None else B, TORSOR_CAP)
    _fiber_pre(ctx, e1)
    rows = _grow(lambda buf: kernels.fiber(e1, *ctx.eta, B, buf, 0), 10, 64)
    return [TorsorPoint(*map(int, r), B) for r in rows]


def fiber_partition(B: int, threads: int = 1) -> tuple[int, int]:
    """(sum of fiber counts over every admissible tuple, number of tuples)."""
    tuples = admissible_tuples(B, threads)
    total = 0
    for row in tuples:
        total += kernels.fiber(*(int(x) for x in row), B, kernels.EMPTY, 0)
    return int(total), len(tuples)


def fiber_main_term(ctx: FiberContext, e1: int, B: int | None = None, *, g2_fn=None) -> float:
    """B^(2/3) / eta^(1/3,1/3,1/3,2/3,2/3,2/3) g2(eta1/Z1) theta1 theta2."""
    B = ctx.B if B is None else B
    if B != ctx.B:
        ctx = FiberContext(*ctx.eta, B)
    _fiber_pre(ctx, e1)
    t = e1 / ctx.Z1
    if t >= T_MAX:
        return 0.0
    g = (g2_fn or (lambda s: g2(s, DEFAULT_CONFIG)))(t)
    e2, e3, e4 = ctx.e2, ctx.e3, ctx.e4
    scale = B ** (2 / 3) / ctx.power((1 / 3, 1 / 3, 1 / 3, 2 / 3, 2 / 3, 2 / 3))
    return scale * g * float(theta1(e1, e2 * e3 * e4) * theta2(*ctx.eta))


@lru_cache(maxsize=4)
def g2_interpolant(n: int = 600):
    """Cubic interpolant of g2 on (0, T_MAX) for bulk evaluation."""
    from scipy.interpolate import PchipInterpolator

    # cluster nodes near 0, where g2 varies fastest
    s = np.linspace(0.0, 1.0, n)[:-1]
    ts = T_MAX * (1e-4 + (1 - 1e-4) * s**2)
    vals = np.array([g2(float(t)) for t in ts])
    ts = np.append(ts, T_MAX)
    vals = np.append(vals, 0.0)
    f = PchipInterpolator(ts, vals, extrapolate=False)

    def g(t: float) -> float:
        if t >= T_MAX:
            return 0.0
        return float(f(max(t, ts[0])))

    return g


@dataclass(frozen=True)
class FiberAggregate:
    B: int
    count: int
    main: float
    tuples: int

    @property
    def ratio(self) -> float:
        return self.count / self.main if self.main else math.inf


def fiber_aggregate(B: int, threads: int = 1) -> FiberAggregate:
    """Sum of fiber counts next to the sum of fiber main terms; diagnostic only."""
    tuples = admissible_tuples(B, threads)
    g = g2_interpolant()
    count, main = 0, 0.0
    for row in tuples:
        e = tuple(int(x) for x in row)
        count += kernels.fiber(*e, B, kernels.EMPTY, 0)
        main += fiber_main_term(FiberContext(*e[1:], B), e[0], g2_fn=g)
    return FiberAggregate(B, int(count), main, len(tuples))


# --------------------------------------------------------------------------
# the map to the surface

def torsor_to_point(t: TorsorPoint) -> SurfacePoint:
    e = t.eta
    e1, e2, e3, e4, e5, e6, e7, e8, e9, e10 = e
    base = e1 * e1 * e2 * e3 * e4
    x = (e8 * e9 * e10, base * e2 * e5 * e5 * e8, base * e3 * e6 * e6 * e9, base * e4 * e7 * e7 * e10)
    if surface_residual(*x) != 0:
        raise InvariantError(f"image of {e} is off the surface")
    if math.gcd(*x) != 1:
        raise InvariantError(f"image of {e} is not primitive")
    assert tuple(abs(c) for c in x) == height_monomials(e)
    p = SurfacePoint(*canonical(x))
    if not p.in_U:
        raise InvariantError(f"image of {e} lies on a line")
    return p


def squarefree_renormalize(e1: int, e2: int, e3: int, e4: int, e5: int, e6: int, e7: int) -> tuple[int, ...]:
    if min(e1, e2, e3, e4, e5, e6, e7) < 1:
        raise ValueError("arguments must be positive")
    s2, s3, s4 = sq(e2), sq(e3), sq(e4)
    return (e1 * s2 * s3 * s4, e2 // s2**2, e3 // s3**2, e4 // s4**2, e5 * s2, e6 * s3, e7 * s4)


@dataclass(frozen=True)
class BijectionReport:
    B: int
    torsor_count: int
    brute_count: int
    injective: bool
    missing: tuple  # brute-force points with no preimage
    extra: tuple  # images that brute force did not find

    @property
    def ok(self) -> bool:
        return self.injective and not self.missing and not self.extra and self.torsor_count == self.brute_count


def bijection_check(B: int, threads: int = 1) -> BijectionReport:
    B = _check_B(B, BRUTE_FORCE_CAP)
    tor = torsor_count(B, points=True, threads=threads)
    brute = brute_force_count(B, points=True, threads=threads)
    images = [torsor_to_point(t) for t in tor.points]
    img = set(images)
    ref = set(brute.points)
    return BijectionReport(
        B,
        tor.count,
        brute.count,
        len(img) == len(images),
        tuple(sorted(ref - img)),
        tuple(sorted(img - ref)),
    )


# --------------------------------------------------------------------------
# asymptotics

NOTE = (
    "the relative error decays like 1/log(log(B))^(1/6), so at these heights "
    "only order-of-magnitude agreement with c_VH is expected"
)


@dataclass(frozen=True)
class AsymptoticRow:
    B: int
    N: int
    normalized: float
    ratio: float


def asymptotic_report(Bs, c_VH: float, *, threads: int = 1, counts: dict | None = None) -> list[AsymptoticRow]:
    rows = []
    for B in Bs:
        B = _check_B(B, TORSOR_CAP)
        if B < 3:
            raise ValueError("asymptotic rows need B >= 3")
        N = counts[B] if counts and B in counts else torsor_count(B, threads=threads).count
        norm = N / (B * math.log(B) ** 6)
        rows.append(AsymptoticRow(B, N, norm, norm / c_VH))
    return rows
