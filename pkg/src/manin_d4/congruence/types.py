from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from ..arith import rad

Real = int | Fraction | float


def exact(x: Real) -> int | Fraction:
    """Exact rational copy of a real input (floats are converted bit-exactly)."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a real bound")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        f = Fraction(x)
    else:
        if not math.isfinite(x):
            raise ValueError("bounds must be finite")
        f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class CongruenceInstance:
    """The congruence a1*u + a2*v = b (mod q) with gcd(a1*a2, q) = 1 and rad(q) | b."""

    q: int
    a1: int
    a2: int
    b: int
    b_red: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if self.a1 == 0 or self.a2 == 0:
            raise ValueError("a1 and a2 must be nonzero")
        if math.gcd(self.a1 * self.a2, self.q) != 1:
            raise ValueError("gcd(a1*a2, q) must be 1")
        if self.b % rad(self.q):
            raise ValueError("rad(q) must divide b")
        object.__setattr__(self, "b_red", self.b % self.q)

    def solves(self, u: int, v: int) -> bool:
        return (self.a1 * u + self.a2 * v - self.b_red) % self.q == 0


@dataclass(frozen=True)
class IntegerRange:
    """Real interval with per-endpoint openness; only its integer points matter."""

    lo: Real
    hi: Real
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", exact(self.lo))
        object.__setattr__(self, "hi", exact(self.hi))
        if self.lo > self.hi:
            raise ValueError("lo must not exceed hi")

    @property
    def first(self) -> int:
        return math.floor(self.lo) + 1 if self.lo_open else math.ceil(self.lo)

    @property
    def last(self) -> int:
        return math.ceil(self.hi) - 1 if self.hi_open else math.floor(self.hi)

    def integers(self) -> range:
        return range(self.first, self.last + 1)

    def __len__(self) -> int:
        return max(0, self.last - self.first + 1)

    @property
    def length(self) -> int | Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class RegionS:
    """Planar region cut out by the four height-type conditions in (x, y).

    Membership is exact: all parameters are held as integers or Fractions.
    """

    X: Real
    T: Real
    A1: Real
    A2: Real

    def __post_init__(self):
        for name in ("X", "T", "A1", "A2"):
            val = exact(getattr(self, name))
            if val < 1:
                raise ValueError(f"{name} must be >= 1")
            object.__setattr__(self, name, val)

    @property
    def integral(self) -> bool:
        return all(isinstance(getattr(self, n), int) for n in ("X", "T", "A1", "A2"))

    def contains(self, x, y) -> bool:
        X, T, A1, A2 = self.X, self.T, self.A1, self.A2
        ax, ay = A1 * abs(x), A2 * abs(y)
        lin = abs(A1 * x + A2 * y - T)
        return ax <= X and ay <= X and lin <= X and ax * ay * lin <= T * T * X

    def contains_h(self, x: float, y: float) -> bool:
        """Same test through the normalized function h (floating point)."""
        from ..density.archimedean import h

        X, T = float(self.X), float(self.T)
        scale = X ** (1 / 3) * T ** (2 / 3)
        return h(float(self.A1) * x / scale, float(self.A2) * y / scale, (T / X) ** (1 / 3)) <= 1.0

    def box(self) -> tuple[int, int]:
        """Bounds on |u| and |v| for integer points."""
        return math.floor(self.X / self.A1), math.floor(self.X / self.A2)


@dataclass(frozen=True)
class PrimitiveVectorQuery:
    v: tuple[int, int, int]
    W: tuple[Real, Real, Real]

    def __post_init__(self):
        v = tuple(int(c) for c in self.v)
        if len(v) != 3 or len(self.W) != 3:
            raise ValueError("need three components")
        if math.gcd(*v) != 1:
            raise ValueError("v must be primitive")
        W = tuple(exact(w) for w in self.W)
        if any(w < 1 for w in W):
            raise ValueError("W_i must be >= 1")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "W", W)
