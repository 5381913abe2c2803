"""Points on the surface and on the torsor, with their invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce


class InvariantError(ValueError):
    pass


def canonical(coords) -> tuple[int, ...]:
    """Divide by the gcd and make the first nonzero coordinate positive."""
    coords = tuple(int(c) for c in coords)
    g = reduce(math.gcd, coords, 0)
    if g == 0:
        raise InvariantError("zero vector has no projective class")
    coords = tuple(c // g for c in coords)
    first = next(c for c in coords if c)
    return tuple(-c for c in coords) if first < 0 else coords


def surface_residual(x0: int, x1: int, x2: int, x3: int) -> int:
    return x0 * (x1 + x2 + x3) ** 2 - x1 * x2 * x3


@dataclass(frozen=True, order=True)
class SurfacePoint:
    x0: int
    x1: int
    x2: int
    x3: int

    def __post_init__(self):
        c = self.coords
        if surface_residual(*c) != 0:
            raise InvariantError(f"{c} is not on the surface")
        if canonical(c) != c:
            raise InvariantError(f"{c} is not the canonical representative")

    @property
    def coords(self) -> tuple[int, int, int, int]:
        return (self.x0, self.x1, self.x2, self.x3)

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coords)

    @property
    def in_U(self) -> bool:
        return self.x1 * self.x2 * self.x3 != 0 and self.x1 + self.x2 + self.x3 != 0


def torsor_residual(e) -> int:
    e1, e2, e3, e4, e5, e6, e7, e8, e9, e10 = e
    return e2 * e5 * e5 * e8 + e3 * e6 * e6 * e9 + e4 * e7 * e7 * e10 - e1 * e2 * e3 * e4 * e5 * e6 * e7


def height_monomials(e) -> tuple[int, int, int, int]:
    """The four quantities bounded by B, i.e. |x0|, ..., |x3| of the image."""
    e1, e2, e3, e4, e5, e6, e7, e8, e9, e10 = e
    base = e1 * e1 * e2 * e3 * e4
    return (
        abs(e8 * e9 * e10),
        base * e2 * e5 * e5 * abs(e8),
        base * e3 * e6 * e6 * abs(e9),
        base * e4 * e7 * e7 * abs(e10),
    )


def gcd_conditions(e) -> tuple[bool, ...]:
    e1, e2, e3, e4, e5, e6, e7, e8, e9, e10 = e
    g = math.gcd
    return (
        g(e10, e1 * e2 * e3 * e4 * e5 * e6) == 1,
        g(e9, e1 * e2 * e3 * e4 * e5 * e7) == 1,
        g(e8, e1 * e2 * e3 * e4 * e6 * e7) == 1,
        g(e1, e5 * e6 * e7) == 1,
        g(e2 * e5, e3 * e4 * e6 * e7) == 1,
        g(e3 * e6, e4 * e7) == 1,
    )


@dataclass(frozen=True, order=True)
class TorsorPoint:
    e1: int
    e2: int
    e3: int
    e4: int
    e5: int
    e6: int
    e7: int
    e8: int
    e9: int
    e10: int
    B: int

    def __post_init__(self):
        e = self.eta
        if min(e[:7]) < 1:
            raise InvariantError("eta1..eta7 must be positive")
        if 0 in e[7:]:
            raise InvariantError("eta8, eta9, eta10 must be nonzero")
        if torsor_residual(e) != 0:
            raise InvariantError(f"{e} violates the torsor equation")
        bad = [i + 1 for i, ok in enumerate(gcd_conditions(e)) if not ok]
        if bad:
            raise InvariantError(f"{e} violates coprimality conditions {bad}")
        if max(height_monomials(e)) > self.B:
            raise InvariantError(f"{e} violates the height conditions for B={self.B}")

    @property
    def eta(self) -> tuple[int, ...]:
        return (self.e1, self.e2, self.e3, self.e4, self.e5, self.e6, self.e7, self.e8, self.e9, self.e10)


@dataclass(frozen=True)
class FiberContext:
    """The fixed (eta2, ..., eta7) of a fiber, with its derived scales."""

    e2: int
    e3: int
    e4: int
    e5: int
    e6: int
    e7: int
    B: int

    def __post_init__(self):
        if min(self.eta) < 1:
            raise ValueError("eta2..eta7 must be positive")
        if self.B < 1:
            raise ValueError("B must be positive")

    @property
    def eta(self) -> tuple[int, ...]:
        return (self.e2, self.e3, self.e4, self.e5, self.e6, self.e7)

    def power(self, r) -> float:
        return math.prod(float(e) ** x for e, x in zip(self.eta, r))

    @property
    def Y(self) -> float:
        return self.B / (self.e2 * self.e3 * self.e4)

    @property
    def Z1(self) -> float:
        return self.B ** (1 / 3) / self.power((2 / 3, 2 / 3, 2 / 3, 1 / 3, 1 / 3, 1 / 3))

    @property
    def q8(self) -> int:
        return self.e2 * self.e5**2

    @property
    def q9(self) -> int:
        return self.e3 * self.e6**2

    @property
    def q10(self) -> int:
        return self.e4 * self.e7**2

    def coprime(self) -> bool:
        e2, e3, e4, e5, e6, e7 = self.eta
        return math.gcd(e2 * e5, e3 * e4 * e6 * e7) == 1 and math.gcd(e3 * e6, e4 * e7) == 1

    def in_region_V(self) -> bool:
        if self.B <= math.e:  # log log B must be positive
            return False
        L = math.log(math.log(self.B)) ** (2 / 3)
        z2 = self.Z1**2
        return (
            self.Y * L >= self.q8 * z2
            and self.Y * L >= self.q9 * z2
            and self.Z1 >= 3 ** (-1 / 3)
            and self.q8 >= self.q10
            and self.q9 >= self.q10
        )
