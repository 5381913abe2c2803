"""CSV renderings of point sets (the golden-file format)."""
from __future__ import annotations

from .._io import csv_text
from .counting import brute_force_count, torsor_count, torsor_to_point

POINT_HEADER = ["x0", "x1", "x2", "x3"]
TORSOR_HEADER = [f"eta{i}" for i in range(1, 11)]


def points_csv(B: int, *, method: str = "torsor", threads: int = 1) -> str:
    """Canonical representatives of U(Q) points of height <= B, sorted lexicographically."""
    if method == "brute":
        pts = brute_force_count(B, points=True, threads=threads).points
    elif method == "torsor":
        pts = [torsor_to_point(t) for t in torsor_count(B, points=True, threads=threads).points]
    else:
        raise ValueError(f"unknown method {method!r}")
    return csv_text(POINT_HEADER, sorted(p.coords for p in pts))


def torsor_csv(B: int, *, threads: int = 1) -> str:
    pts = torsor_count(B, points=True, threads=threads).points
    return csv_text(TORSOR_HEADER, sorted(t.eta for t in pts))
