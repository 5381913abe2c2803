import math
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from manin_d4.arith import mod_inverse, sq
from manin_d4.density import g2, theta1, theta2
from manin_d4.torsor import (
    CapError,
    FiberContext,
    InvariantError,
    SurfacePoint,
    TorsorPoint,
    admissible_tuples,
    asymptotic_report,
    bijection_check,
    brute_force_count,
    canonical,
    degenerate_count,
    degenerate_ratio,
    fiber_aggregate,
    fiber_count,
    fiber_main_term,
    fiber_partition,
    fiber_points,
    points_csv,
    squarefree_renormalize,
    torsor_count,
    torsor_csv,
    torsor_to_point,
)
from manin_d4.torsor.types import height_monomials, torsor_residual

from oracles import naive_points, naive_torsor

GOLDEN = Path(__file__).parent / "golden"


# -------------------------------------------------------------- points

def test_surface_point_validation():
    p = SurfacePoint(1, -1, -1, 1)
    assert p.height == 1 and p.in_U
    with pytest.raises(InvariantError):
        SurfacePoint(1, 1, 1, 1)
    with pytest.raises(InvariantError):
        SurfacePoint(-1, 1, 1, -1)  # not canonical
    assert not SurfacePoint(0, 0, 0, 1).in_U
    assert canonical((-2, 4, 0, 6)) == (1, -2, 0, -3)


def test_brute_force_examples():
    assert brute_force_count(1).count == 3
    pts = brute_force_count(1, points=True).points
    assert sorted(p.coords for p in pts) == [(1, -1, -1, 1), (1, -1, 1, -1), (1, 1, -1, -1)]
    with pytest.raises(ValueError):
        brute_force_count(0)
    with pytest.raises(CapError):
        brute_force_count(501)
    with pytest.raises(ValueError):
        brute_force_count(5, include_lines=True)


@pytest.mark.parametrize("B", [1, 4, 10, 17, 25])
def test_brute_force_matches_naive(B):
    pts = brute_force_count(B, points=True).points
    assert {p.coords for p in pts} == naive_points(B)


@pytest.mark.parametrize("B", [1, 4, 10, 17, 25])
def test_torsor_matches_naive(B):
    assert sorted(t.eta for t in torsor_count(B, points=True).points) == naive_torsor(B)


@pytest.mark.parametrize("B", [1, 5, 10, 25, 50, 100])
def test_pipelines_agree(B):
    assert torsor_count(B).count == brute_force_count(B).count


def test_torsor_count_monotone():
    counts = [torsor_count(B).count for B in range(1, 121)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


@pytest.mark.parametrize("B", [1, 77, 1000])
def test_thread_count_does_not_change_results(B):
    one = torsor_count(B, points=B <= 100)
    for threads in (2, 4, 8):
        other = torsor_count(B, points=B <= 100, threads=threads)
        assert other.count == one.count and other.points == one.points
    assert degenerate_count(B, threads=4) == degenerate_count(B)


def test_torsor_rejects_bad_heights():
    for B in (0, -3, 2.5):
        with pytest.raises(ValueError):
            torsor_count(B)
    with pytest.raises(CapError):
        torsor_count(10**9 + 1)


# -------------------------------------------------------------- the map

def test_torsor_to_point_example():
    t = TorsorPoint(1, 1, 1, 1, 1, 1, 1, 1, 1, -1, B=1)
    assert torsor_to_point(t).coords == canonical((-1, 1, 1, -1)) == (1, -1, -1, 1)


def test_torsor_point_validation():
    with pytest.raises(InvariantError):
        TorsorPoint(1, 1, 1, 1, 1, 1, 1, 1, 1, 1, B=10)  # equation fails
    with pytest.raises(InvariantError):
        TorsorPoint(1, 1, 1, 1, 1, 1, 1, 1, 1, -1, B=0)  # height fails
    with pytest.raises(InvariantError):
        TorsorPoint(1, 1, 1, 1, 1, 1, 1, 0, 1, 0, B=10)
    # the equation holds but eta10 = 2 shares a factor with eta2 = 2
    with pytest.raises(InvariantError, match="coprimality"):
        TorsorPoint(1, 2, 1, 1, 1, 1, 1, 1, -2, 2, B=100)


def test_image_heights_are_the_height_monomials():
    for t in torsor_count(200, points=True).points:
        p = torsor_to_point(t)
        assert sorted(map(abs, p.coords)) == sorted(height_monomials(t.eta))
        assert p.height <= 200 and p.in_U


@pytest.mark.parametrize("B", [1, 50, 200])
def test_bijection(B):
    rep = bijection_check(B)
    assert rep.ok, (rep.missing[:5], rep.extra[:5])


def test_golden_points():
    text = (GOLDEN / "points_B10.csv").read_text()
    assert points_csv(10) == text
    assert points_csv(10, method="brute") == text


def test_golden_torsor():
    assert torsor_csv(10) == (GOLDEN / "torsor_B10.csv").read_text()


def test_export_rejects_unknown_method():
    with pytest.raises(ValueError):
        points_csv(3, method="guess")


# -------------------------------------------------------------- renormalization

def test_squarefree_examples():
    assert squarefree_renormalize(1, 4, 1, 1, 1, 1, 1) == (2, 1, 1, 1, 2, 1, 1)
    assert squarefree_renormalize(5, 6, 1, 7, 1, 1, 1) == (5, 6, 1, 7, 1, 1, 1)
    assert squarefree_renormalize(1, 12, 9, 1, 1, 1, 1) == (6, 3, 1, 1, 2, 3, 1)
    with pytest.raises(ValueError):
        squarefree_renormalize(0, 1, 1, 1, 1, 1, 1)


def _squarefree(n):
    return sq(n) == 1


@given(st.lists(st.integers(1, 10**4), min_size=7, max_size=7))
@settings(max_examples=200, deadline=None)
def test_squarefree_invariants(e):
    new = squarefree_renormalize(*e)
    f1, f2, f3, f4, f5, f6, f7 = new
    e1, e2, e3, e4, e5, e6, e7 = e
    assert _squarefree(f2) and _squarefree(f3) and _squarefree(f4)
    assert f1**3 * (f2 * f3 * f4) ** 2 * f5 * f6 * f7 == e1**3 * (e2 * e3 * e4) ** 2 * e5 * e6 * e7
    assert (f2 * f5**2, f3 * f6**2, f4 * f7**2) == (e2 * e5**2, e3 * e6**2, e4 * e7**2)
    assert squarefree_renormalize(*new) == new


@given(st.lists(st.integers(1, 30), min_size=7, max_size=7), st.integers(-5, 5), st.integers(-5, 5))
@settings(max_examples=200, deadline=None)
def test_squarefree_preserves_residual_and_heights(e, e8, e9):
    # the residual is compared, it need not vanish
    old = (*e, e8, e9, 7)
    new = (*squarefree_renormalize(*e), e8, e9, 7)
    assert height_monomials(new) == height_monomials(old)
    assert torsor_residual(new) == torsor_residual(old)


# -------------------------------------------------------------- fibers

def test_fiber_preconditions():
    with pytest.raises(ValueError):
        fiber_count(FiberContext(2, 2, 1, 1, 1, 1, 10), 1)  # gcd5
    with pytest.raises(ValueError):
        fiber_count(FiberContext(1, 3, 3, 1, 1, 1, 10), 1)  # gcd6
    with pytest.raises(ValueError):
        fiber_count(FiberContext(1, 1, 1, 2, 1, 1, 10), 2)  # gcd4


def test_fiber_all_ones():
    ctx = FiberContext(1, 1, 1, 1, 1, 1, 1)
    assert fiber_count(ctx, 1) == 3
    for B in (5, 20):
        want = sum(1 for e in naive_torsor(B) if e[:7] == (1,) * 7)
        assert fiber_count(ctx, 1, B) == want
        assert len(fiber_points(ctx, 1, B)) == want


@pytest.mark.parametrize("B", [100, 500])
def test_fiber_partition(B):
    total, ntuples = fiber_partition(B)
    assert total == torsor_count(B).count
    assert ntuples > 0


def test_fibers_cover_pruned_box():
    # every tuple carrying a fiber is admissible, so no fiber is lost to pruning
    B = 60
    adm = {tuple(int(x) for x in row) for row in admissible_tuples(B)}
    assert {e[:7] for e in naive_torsor(B)} <= adm


def test_residue_steps_are_invertible():
    for row in admissible_tuples(2000):
        e1, e2, e3, e4, e5, e6, e7 = (int(x) for x in row)
        q8, q9, q10 = e2 * e5 * e5, e3 * e6 * e6, e4 * e7 * e7
        assert math.gcd(q8, q9) == math.gcd(q8, q10) == math.gcd(q9, q10) == 1
        if q10 > 1:
            assert q9 * mod_inverse(q9, q10) % q10 == 1


def test_fiber_main_term():
    ctx = FiberContext(1, 1, 1, 1, 1, 1, 1000)
    assert fiber_main_term(ctx, 1) == pytest.approx(1000 ** (2 / 3) * g2(1000 ** (-1 / 3)), rel=1e-12)
    assert fiber_main_term(ctx, math.ceil(3 ** (1 / 3) * ctx.Z1) + 1) == 0.0
    ctx = FiberContext(2, 3, 1, 1, 1, 5, 10**5)
    t = 7 / ctx.Z1
    expect = 1e5 ** (2 / 3) / ctx.power((1 / 3, 1 / 3, 1 / 3, 2 / 3, 2 / 3, 2 / 3)) * g2(t)
    expect *= float(theta1(7, 6) * theta2(2, 3, 1, 1, 1, 5))
    assert fiber_main_term(ctx, 7) == pytest.approx(expect, rel=1e-12)


def test_fiber_context_region():
    ctx = FiberContext(1, 1, 1, 1, 1, 1, 10**6)
    assert ctx.q8 == ctx.q9 == ctx.q10 == 1
    assert ctx.in_region_V()
    assert not FiberContext(1, 1, 1, 1, 1, 1, 2).in_region_V()
    assert not FiberContext(1, 1, 1, 1, 1, 3, 10**6).in_region_V()  # q10 > q8


def test_fiber_aggregate_tracks_count():
    agg = fiber_aggregate(1000)
    assert agg.count == torsor_count(1000).count
    assert 0.5 < agg.ratio < 2


# -------------------------------------------------------------- statistics

def test_degenerate_counts():
    assert degenerate_count(1) == 3
    with pytest.raises(ValueError):
        degenerate_count(0)
    ratios = [degenerate_ratio(B, degenerate_count(B)) for B in (10**2, 10**3, 10**4)]
    assert ratios[0] > ratios[1] > ratios[2]
    # oracle at small height
    naive = sum(1 for e in naive_torsor(25) if e[1] * e[4] ** 2 == e[3] * e[6] ** 2 or e[2] * e[5] ** 2 == e[3] * e[6] ** 2)
    assert degenerate_count(25) == naive


def test_asymptotic_report():
    assert asymptotic_report([], 1.0) == []
    (row,) = asymptotic_report([1000], 2e-6)
    assert row.N == 135403 and row.ratio > 0
    assert row.normalized == pytest.approx(135403 / (1000 * math.log(1000) ** 6))
    (row,) = asymptotic_report([50], 1.0, counts={50: 7})
    assert row.N == 7
    with pytest.raises(ValueError):
        asymptotic_report([2], 1.0)
