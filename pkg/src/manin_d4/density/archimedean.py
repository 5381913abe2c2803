"""The real density: h, its slice measures g1 and g2, and omega_infinity.

For fixed (y, t) every constraint in h <= 1 is linear or quadratic in x,
so g1 is computed from interval endpoints in closed form and only the
outer integrals are numerical.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

T_MAX = 3.0 ** (1.0 / 3.0)


@dataclass(frozen=True)
class QuadratureConfig:
    root_tol: float = 1e-12
    quad_tol: float = 1e-9
    mc_samples: int = 2_000_000
    rng_seed: int = 0

    def __post_init__(self):
        if not (self.root_tol > 0 and self.quad_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.mc_samples < 10**4:
            raise ValueError("mc_samples must be at least 10^4")


DEFAULT_CONFIG = QuadratureConfig()


class QuadratureError(RuntimeError):
    def __init__(self, msg: str, achieved: float):
        super().__init__(f"{msg} (achieved error {achieved:.3g})")
        self.achieved = achieved


def h(x: float, y: float, t: float) -> float:
    z = x + y - t
    t2 = t * t
    return max(abs(x * y) * abs(z), t2 * abs(x), t2 * abs(y), t2 * abs(z))


def h_array(x, y, t):
    x, y, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float), np.asarray(t, float))
    z = x + y - t
    t2 = t * t
    return np.maximum(np.maximum(np.abs(x * y * z), t2 * np.abs(x)), np.maximum(t2 * np.abs(y), t2 * np.abs(z)))


def _overlap(lo: float, hi: float, a: float, b: float) -> float:
    return max(0.0, min(hi, b) - max(lo, a))


def _clip(lo: float, hi: float, a: float, b: float, width: float) -> float:
    if lo <= a and b <= hi:
        return width
    return _overlap(lo, hi, a, b)


def g1(y: float, t: float) -> float:
    """Length of {x : h(x, y, t) <= 1}."""
    if t <= 0:
        raise ValueError("t must be positive")
    it2 = 1.0 / (t * t)
    if abs(y) > it2:
        return 0.0
    lo = max(-it2, t - y - it2)
    hi = min(it2, t - y + it2)
    if lo >= hi:
        return 0.0
    if y == 0.0:
        return hi - lo
    # |y x (x + y - t)| <= 1 is symmetric about the vertex c = (t - y)/2:
    # |x - c| <= r_out, minus |x - c| < r_in when the inner gap exists
    lin = y * (y - t)
    ay = abs(y)
    d_out = lin * lin + 4 * ay
    d_in = lin * lin - 4 * ay
    r_out = math.sqrt(d_out) / (2 * ay)
    c = 0.5 * (t - y)
    lo, hi = lo - c, hi - c
    if d_in <= 0:
        return _overlap(lo, hi, -r_out, r_out)
    r_in = math.sqrt(d_in) / (2 * ay)
    # width of each remaining piece, free of cancellation
    w = 4.0 / (math.sqrt(d_out) + math.sqrt(d_in))
    return _clip(lo, hi, r_in, r_in + w, w) + _clip(lo, hi, -r_in - w, -r_in, w)


def y_support(t: float) -> tuple[float, float]:
    it2 = 1.0 / (t * t)
    return max(-it2, t - 2 * it2), it2


def _polish(coeffs: np.ndarray, r: float, tol: float) -> float:
    d = np.polyder(coeffs)
    for _ in range(8):
        dv = np.polyval(d, r)
        if dv == 0:
            break
        step = np.polyval(coeffs, r) / dv
        r -= step
        if abs(step) <= tol * max(1.0, abs(r)):
            break
    return float(r)


def g1_breakpoints(t: float, root_tol: float = 1e-12) -> list[float]:
    """y-values where g1(., t) may fail to be smooth, inside the support."""
    it2 = 1.0 / (t * t)
    cands = [0.0, t, -it2, it2, t - 2 * it2]
    polys = []
    for sg in (1.0, -1.0):
        # inner gap appears/disappears: y (y - t)^2 = 4 sg
        polys.append([1.0, -2 * t, t * t, -4 * sg])
        for xe in (it2, -it2):
            # x-root crosses a fixed endpoint x = xe
            polys.append([xe, xe * (xe - t), -sg])
        for de in (it2, -it2):
            # x-root crosses the moving endpoint x = t - y + de
            polys.append([-de, de * (t + de), -sg])
    for p in polys:
        c = np.array(p)
        for r in np.roots(c):
            if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)):
                cands.append(_polish(c, r.real, root_tol))
    # for small t, g1 behaves like |y|^(-1/2) near 0 and like y^(-2) far out;
    # dyadic cuts keep each panel's dynamic range bounded
    kmin = math.floor(math.log2(t**4)) - 1
    kmax = math.ceil(math.log2(it2)) + 1
    for k in range(kmin, kmax + 1):
        cands.extend((2.0**k, -(2.0**k)))
    lo, hi = y_support(t)
    return sorted({c for c in cands if lo < c < hi})


def g2(t: float, cfg: QuadratureConfig = DEFAULT_CONFIG, *, with_error: bool = False):
    """Integral of g1(y, t) over y."""
    if t <= 0:
        raise ValueError("t must be positive")
    lo, hi = y_support(t)
    if t >= T_MAX or lo >= hi:
        return (0.0, 0.0) if with_error else 0.0
    edges = [lo, *g1_breakpoints(t, cfg.root_tol), hi]
    total, err = 0.0, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0:
            continue
        val, e = _quad(g1, a, b, (t,), cfg.quad_tol / len(edges))
        total += val
        err += e
    if err > 100 * cfg.quad_tol:
        raise QuadratureError(f"g2({t}) did not converge", err)
    return (total, err) if with_error else total


def _quad(f, a, b, args, tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(f, a, b, args=args, epsabs=tol, epsrel=1e-12, limit=400)
    return val, err


# --------------------------------------------------------------------------
# omega_infinity

@dataclass(frozen=True)
class OmegaInfinity:
    value: float
    error: float
    quad_value: float
    quad_error: float
    mc_value: float
    mc_error: float

    @property
    def rel_diff(self) -> float:
        return abs(self.quad_value - self.mc_value) / self.quad_value

    @property
    def agree(self) -> bool:
        return self.rel_diff <= 0.005


def omega_infinity_quad(cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """3 * integral of g2 over 0 < t < 3^(1/3); error adds outer and inner estimates."""
    inner_err = [0.0]

    def f(t):
        v, e = g2(t, cfg, with_error=True)
        inner_err[0] = max(inner_err[0], e)
        return v

    val, err = _quad(f, 0.0, T_MAX, (), cfg.quad_tol)
    return 3 * val, 3 * (err + T_MAX * inner_err[0])


def _mc_chunk(seed: int, chunk: int, n: int) -> tuple[float, float]:
    """Sum and sum of squares of importance weights for one sample block.

    Points (a, b) of the plane are drawn from an equal mixture of three
    heavy-tailed product laws, one per pair of the coordinates (a, b, c),
    c = 1 - a - b.  Each point carries 1/(M(a,b) q(a,b)), the exact length
    of its section {s : |s| M <= 1} over two.
    """
    from scipy.stats import qmc

    # a bare Philox key still draws fresh entropy for its seed sequence,
    # so the stream is derived from (seed, chunk) explicitly
    bitgen = np.random.Philox(np.random.SeedSequence([seed, chunk]))
    sob = qmc.Sobol(d=4, scramble=True, seed=np.random.Generator(bitgen))
    with warnings.catch_warnings():
        # a short final block loses the power-of-two balance, not validity
        warnings.simplefilter("ignore", UserWarning)
        u = sob.random(n)
    comp = np.minimum((u[:, 0] * 3).astype(np.int64), 2)
    w1 = _heavy(u[:, 1], u[:, 3], 0)
    w2 = _heavy(u[:, 2], u[:, 3], 1)
    # the third coordinate is formed once; recovering a drawn one as 1 - a - b
    # cancels catastrophically when the other two are huge and opposite
    rest = 1 - w1 - w2
    a = np.where(comp == 0, w1, np.where(comp == 1, rest, w2))
    b = np.where(comp == 0, w2, np.where(comp == 1, w1, rest))
    c = np.where(comp == 0, rest, np.where(comp == 1, w2, w1))
    pa, pb, pc = _heavy_pdf(a), _heavy_pdf(b), _heavy_pdf(c)
    qdens = (pa * pb + pb * pc + pc * pa) / 3
    M = np.maximum.reduce([np.abs(a), np.abs(b), np.abs(c), np.abs(a * b * c)])
    w = 1.0 / (M * qdens)
    return float(w.sum()), float((w * w).sum())


def _heavy(u: np.ndarray, signs: np.ndarray, bit: int) -> np.ndarray:
    """Inverse CDF of the density (1/4)(1 + |x|)^(-3/2)."""
    mag = np.maximum(u, 1e-300) ** -2 - 1
    sgn = np.where((np.floor(signs * 4).astype(np.int64) >> bit) & 1, -1.0, 1.0)
    return sgn * mag


def _heavy_pdf(x: np.ndarray) -> np.ndarray:
    return 0.25 * (1 + np.abs(x)) ** -1.5


def omega_infinity_mc(cfg: QuadratureConfig = DEFAULT_CONFIG, chunk_size: int = 1 << 16) -> tuple[float, float]:
    """(3/2) vol{h <= 1} over all real t, estimated by randomized QMC.

    With x = a t, y = b t, s = t^3 the volume element becomes da db ds / 3
    and the region is {|s| M(a,b) <= 1}; the estimate has a 3-sigma error.
    """
    n = cfg.mc_samples
    sums, sqs, count = [], [], 0
    chunk = 0
    while count < n:
        m = min(chunk_size, n - count)
        s1, s2 = _mc_chunk(cfg.rng_seed, chunk, m)
        sums.append(s1)
        sqs.append(s2)
        count += m
        chunk += 1
    mean = math.fsum(sums) / n
    var = max(math.fsum(sqs) / n - mean * mean, 0.0)
    return mean, 3 * math.sqrt(var / n)


def omega_infinity(cfg: QuadratureConfig = DEFAULT_CONFIG) -> OmegaInfinity:
    qv, qe = omega_infinity_quad(cfg)
    mv, me = omega_infinity_mc(cfg)
    return OmegaInfinity(qv, qe, qv, qe, mv, me)
