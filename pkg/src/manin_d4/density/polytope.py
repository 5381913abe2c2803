"""Exact volumes of bounded polytopes given by rational halfspaces.

Vertices come from solving every n-subset of facet equations; the volume
comes from a recursive cone triangulation of the face lattice.  Everything
is done over the rationals.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Vec = tuple[Fraction, ...]


class PolytopeError(ValueError):
    pass


def _frac_row(row) -> Vec:
    return tuple(Fraction(x) for x in row)


@dataclass(frozen=True)
class Polytope:
    """{t : a . t <= b for every (a, b) in halfspaces}."""

    halfspaces: tuple[tuple[Vec, Fraction], ...]

    @classmethod
    def from_rows(cls, rows) -> "Polytope":
        hs = tuple((_frac_row(a), Fraction(b)) for a, b in rows)
        dims = {len(a) for a, _ in hs}
        if len(dims) != 1:
            raise PolytopeError("halfspaces of mixed dimension")
        return cls(hs)

    @property
    def dimension(self) -> int:
        return len(self.halfspaces[0][0])

    def contains(self, t) -> bool:
        return all(_dot(a, t) <= b for a, b in self.halfspaces)


def _dot(a, t) -> Fraction:
    return sum((x * y for x, y in zip(a, t)), Fraction(0))


def alpha_polytope() -> Polytope:
    """The polytope in (t2, ..., t7) whose volume is the alpha constant."""
    rows = [
        ((2, -1, -1, 4, -2, -2), 1),
        ((-1, 2, -1, -2, 4, -2), 1),
        ((2, 2, 2, 1, 1, 1), 1),
        ((-1, 0, 1, -2, 0, 2), 0),
        ((0, -1, 1, 0, -2, 2), 0),
    ]
    for i in range(6):
        e = [0] * 6
        e[i] = -1
        rows.append((tuple(e), 0))
    return Polytope.from_rows(rows)


def cube(n: int) -> Polytope:
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append((tuple(e), 1))
        e = [0] * n
        e[i] = -1
        rows.append((tuple(e), 0))
    return Polytope.from_rows(rows)


def standard_simplex(n: int) -> Polytope:
    rows = [((1,) * n, 1)]
    for i in range(n):
        e = [0] * n
        e[i] = -1
        rows.append((tuple(e), 0))
    return Polytope.from_rows(rows)


def simplex_from_vertices(verts) -> Polytope:
    """Halfspace description of the simplex spanned by n+1 affinely independent points."""
    verts = [_frac_row(v) for v in verts]
    n = len(verts) - 1
    rows = []
    for k in range(n + 1):
        face = [v for i, v in enumerate(verts) if i != k]
        normal = _nullvector([tuple(x - y for x, y in zip(v, face[0])) for v in face[1:]], n)
        off = _dot(normal, face[0])
        if _dot(normal, verts[k]) > off:
            normal = tuple(-x for x in normal)
            off = -off
        rows.append((normal, off))
    return Polytope.from_rows(rows)


# --------------------------------------------------------------------------
# exact linear algebra

def _solve(A: list[Vec], b: list[Fraction]) -> Vec | None:
    """Unique solution of A x = b (square), or None if singular."""
    n = len(A)
    M = [list(r) + [bi] for r, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / pv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def _rank(rows: list[Vec]) -> int:
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(rank + 1, len(M)):
            if M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def _nullvector(rows: list[Vec], n: int) -> Vec:
    """A nonzero vector orthogonal to n-1 independent rows."""
    for k in range(n):
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        sol = _solve(rows + [tuple(e)], [Fraction(0)] * (n - 1) + [Fraction(1)])
        if sol is not None:
            return sol
    raise PolytopeError("rows are dependent")


def _det(rows: list[Vec]) -> Fraction:
    M = [list(r) for r in rows]
    n = len(M)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


# --------------------------------------------------------------------------
# vertices, faces, volume

@dataclass(frozen=True)
class VertexData:
    vertices: tuple[Vec, ...]
    tight: tuple[frozenset[int], ...]


def enumerate_vertices(P: Polytope) -> VertexData:
    n = P.dimension
    A = [a for a, _ in P.halfspaces]
    b = [bb for _, bb in P.halfspaces]
    found: dict[Vec, None] = {}
    for subset in itertools.combinations(range(len(A)), n):
        x = _solve([A[i] for i in subset], [b[i] for i in subset])
        if x is not None and P.contains(x):
            found.setdefault(x)
    verts = tuple(sorted(found))
    tight = tuple(frozenset(i for i in range(len(A)) if _dot(A[i], v) == b[i]) for v in verts)
    return VertexData(verts, tight)


def is_bounded(P: Polytope) -> bool:
    """True when the recession cone {d : A d <= 0} is trivial.

    The cone is pointed whenever A has full column rank, and then it is
    nontrivial exactly when it has an extreme ray, i.e. a direction fixed
    by n-1 independent tight rows.
    """
    n = P.dimension
    A = [a for a, _ in P.halfspaces]
    if _rank(A) < n:
        return False
    for subset in itertools.combinations(range(len(A)), n - 1):
        rows = [A[i] for i in subset]
        if _rank(rows) < n - 1:
            continue
        d = _nullvector(rows, n)
        for sgn in (1, -1):
            if all(sgn * _dot(a, d) <= 0 for a in A):
                return False
    return True


def _affine_dim(points: list[Vec]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]]
    return _rank(diffs) if diffs else 0


def triangulate(P: Polytope, data: VertexData | None = None) -> list[tuple[int, ...]]:
    """Simplices (as vertex indices) of a cone triangulation of P."""
    if data is None:
        data = enumerate_vertices(P)
    verts, tight = data.vertices, data.tight
    m = len(P.halfspaces)

    @lru_cache(maxsize=None)
    def face_dim(face: frozenset[int]) -> int:
        return _affine_dim([verts[i] for i in sorted(face)])

    @lru_cache(maxsize=None)
    def facets(face: frozenset[int], dim: int) -> tuple[frozenset[int], ...]:
        out = {}
        for row in range(m):
            sub = frozenset(v for v in face if row in tight[v])
            if sub and sub != face and sub not in out and face_dim(sub) == dim - 1:
                out[sub] = None
        return tuple(sorted(out, key=sorted))

    def tri(face: frozenset[int], dim: int) -> list[tuple[int, ...]]:
        if dim == 0:
            return [(min(face),)]
        apex = min(face)
        out = []
        for g in facets(face, dim):
            if apex in g:
                continue
            out.extend((apex, *s) for s in tri(g, dim - 1))
        return out

    return tri(frozenset(range(len(verts))), P.dimension)


def alpha_volume(P: Polytope) -> Fraction:
    """Exact volume of a bounded full-dimensional polytope."""
    n = P.dimension
    if not is_bounded(P):
        raise PolytopeError("polytope is unbounded")
    data = enumerate_vertices(P)
    if _affine_dim(list(data.vertices)) < n:
        raise PolytopeError("polytope is not full-dimensional")
    total = Fraction(0)
    for simplex in triangulate(P, data):
        v0 = data.vertices[simplex[0]]
        rows = [tuple(x - y for x, y in zip(data.vertices[i], v0)) for i in simplex[1:]]
        total += abs(_det(rows))
    return total / math.factorial(n)
