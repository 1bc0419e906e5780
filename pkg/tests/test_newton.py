from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsemult.config import SparseSystem, build_config
from sparsemult.errors import DimensionMismatch, NotConvenient, VanishesOnAxis
from sparsemult.families import witness_system
from sparsemult.linalg import determinant, rational_kernel_basis
from sparsemult.newton import (
    VanishingSumEvaluator,
    L_value,
    covolume_by_clipping,
    covolume_single,
    is_convenient,
    minkowski_sum,
    mixed_covolume,
    newton_diagram,
    polytope_from_points,
    sparsity_stats,
    staircase,
)


# independent oracles


def shoelace_covolume(points):
    """2 * area under the lower staircase hull, via monotone chain and shoelace."""
    pts = sorted({(Fraction(x), Fraction(y)) for x, y in points})
    keep = [p for p in pts if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts)]
    keep.sort()
    hull = []
    for p in keep:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    poly = [(Fraction(0), Fraction(0)), (hull[-1][0], Fraction(0))] + hull[::-1] + [(Fraction(0), hull[0][1])]
    area2 = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(poly, poly[1:] + poly[:1]))
    return abs(area2)


def simplicial_pyramid_covolume(points):
    """Sum of |det| over supporting n-subsets with positive normal; None if a facet is not a simplex."""
    pts = [tuple(Fraction(x) for x in p) for p in set(map(tuple, points))]
    n = len(pts[0])
    total = Fraction(0)
    for subset in combinations(pts, n):
        if determinant(subset) == 0:
            continue
        base = subset[0]
        diffs = [tuple(a - b for a, b in zip(p, base)) for p in subset[1:]]
        K = rational_kernel_basis(diffs, n) if diffs else tuple((Fraction(1),) for _ in range(n))
        w = [row[0] for row in K]
        if w[0] < 0 or (w[0] == 0 and any(x < 0 for x in w)):
            w = [-x for x in w]
        if not all(x > 0 for x in w):
            continue
        c = sum(a * b for a, b in zip(w, base))
        values = [sum(a * b for a, b in zip(w, p)) - c for p in pts]
        if any(v < 0 for v in values):
            continue
        if sum(1 for v in values if v == 0) > n:
            return None
        total += abs(determinant(subset))
    return total


def corner(n, intercepts):
    return [tuple(t if i == j else 0 for i in range(n)) for j, t in enumerate(intercepts)]


def convenient_points(n, max_extra=3, top=5):
    return st.tuples(
        st.lists(st.integers(1, top), min_size=n, max_size=n),
        st.lists(st.lists(st.integers(0, top - 1), min_size=n, max_size=n), max_size=max_extra),
    ).map(lambda t: corner(n, t[0]) + [tuple(p) for p in t[1]])


def poly_of(points):
    return polytope_from_points(points)


# examples


def test_L_value_examples():
    ev = VanishingSumEvaluator((-1, 3, -3, 1), ((0,), (1,), (2,), (3,)))
    assert L_value(ev, (2,)) == 0
    assert L_value(ev, (3,)) == 6
    assert L_value(ev, (0,)) == 0


def test_staircase_examples():
    st_ = staircase(VanishingSumEvaluator((1, -2, 1), ((0,), (1,), (2,))))
    assert st_.minimal_points == ((2,),) and st_.axis_intercepts == (2,)

    w = witness_system(2, 1)
    pts = w.system.config.points
    st1 = staircase(VanishingSumEvaluator(w.C[0], pts))
    assert set(st1.minimal_points) == {(0, 1), (2, 0)}

    square = ((0, 0), (1, 0), (0, 1), (1, 1))
    with pytest.raises(VanishesOnAxis) as info:
        staircase(VanishingSumEvaluator((1, -1, -1, 1), square))
    assert info.value.axis == 0


def test_newton_diagram_examples():
    from sparsemult.newton import Staircase

    triangle = newton_diagram(Staircase(2, ((0, 3), (1, 1), (3, 0)), (3, 3)))
    edges = sorted(tuple(sorted(f.vertices)) for f in triangle.faces)
    as_int = [tuple(tuple(int(x) for x in v) for v in e) for e in edges]
    assert as_int == [((0, 3), (1, 1)), ((1, 1), (3, 0))]
    assert is_convenient(triangle.staircase)

    single = newton_diagram(Staircase(1, ((4,),), (4,)))
    assert len(single.faces) == 1 and single.faces[0].dim == 0

    w = witness_system(2, 1)
    st2 = staircase(VanishingSumEvaluator(w.C[1], w.system.config.points))
    edges = sorted(tuple(sorted(tuple(int(x) for x in v) for v in f.vertices)) for f in newton_diagram(st2).faces)
    assert edges == [((0, 2), (1, 1)), ((1, 1), (3, 0))]
    for f in newton_diagram(st2).faces:
        assert all(x > 0 for x in f.normal)


def test_sparsity_stats_examples():
    s = sparsity_stats([[1, -2, 1]], [(0,), (1,), (2,)])
    assert s.s == (2,) and s.t == (2,) and s.rho == ((2,),)
    w = witness_system(2, 1)
    s = sparsity_stats(w.C, w.system.config.points)
    assert s.t == (3, 3)
    flat = sparsity_stats([[1, -1]], [(5,), (5,)])
    assert flat.t == (0,)


def test_minkowski_examples():
    P = poly_of([(2, 0), (0, 1)])
    zero = poly_of([(0, 0)])
    assert minkowski_sum(P, zero).vertices == P.vertices
    Q = poly_of([(1, 0), (0, 2)])
    S = minkowski_sum(P, Q)
    assert set(S.vertices) == {(3, 0), (2, 2), (1, 1), (0, 3)}
    T = poly_of([(2, 0), (0, 3)])
    doubled = minkowski_sum(T, T)
    assert set(doubled.vertices) == {(4, 0), (0, 6)}


def test_covolume_examples():
    assert covolume_single(poly_of([(3, 0), (1, 1), (0, 3)])) == 6
    for n in (1, 2, 3):
        assert covolume_single(poly_of(corner(n, [1] * n))) == 1
        sigma = poly_of(corner(n, [Fraction(1, i) for i in range(1, n + 1)]))
        assert covolume_single(sigma) == factorial(n) * Fraction(1, factorial(n)) ** 2


@pytest.mark.parametrize("m", range(0, 6))
def test_mixed_covolume_planar_cases(m):
    d1 = poly_of([(m + 1, 0), (0, m + 1)])
    d2 = poly_of([(m + 2, 0), (0, m + 2)])
    assert mixed_covolume(d1, d2) == (m + 1) * (m + 2)
    e1 = poly_of([(m + 1, 0), (0, m + 2)])
    e2 = poly_of([(m + 2, 0), (0, m + 1)])
    assert mixed_covolume(e1, e2) == (m + 1) ** 2


@pytest.mark.parametrize("m", range(1, 5))
def test_witness_diagram_covolume(m):
    w = witness_system(2, m)
    sts = [staircase(VanishingSumEvaluator(row, w.system.config.points)) for row in w.C]
    value = mixed_covolume(*[poly_of(s.minimal_points) for s in sts])
    assert value == comb(m + 2, 2)


def test_mixed_covolume_errors():
    with pytest.raises(NotConvenient):
        poly_of([(1, 1)])
    with pytest.raises(DimensionMismatch):
        mixed_covolume(poly_of([(1, 0), (0, 1)]))
    with pytest.raises(DimensionMismatch):
        mixed_covolume(poly_of([(1, 0), (0, 1)]), poly_of([(2,)]))


# properties


@settings(max_examples=60, deadline=None)
@given(convenient_points(2, max_extra=4, top=7))
def test_covolume_matches_shoelace(points):
    assert covolume_single(poly_of(points)) == shoelace_covolume(points)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: convenient_points(n, max_extra=3)))
def test_covolume_matches_clipping_and_pyramids(points):
    P = poly_of(points)
    value = covolume_single(P)
    assert value == covolume_by_clipping(P.vertices)
    pyramid = simplicial_pyramid_covolume(P.vertices)
    if pyramid is not None:
        assert value == pyramid


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.lists(convenient_points(n, max_extra=2, top=4), min_size=n, max_size=n)))
def test_mixed_covolume_symmetric_diagonal_integral(tuple_points):
    polys = [poly_of(p) for p in tuple_points]
    value = mixed_covolume(*polys)
    assert value.denominator == 1
    for perm in permutations(polys):
        assert mixed_covolume(*perm) == value
    for P in polys:
        assert mixed_covolume(*([P] * len(polys))) == covolume_single(P)


@settings(max_examples=25, deadline=None)
@given(convenient_points(2, max_extra=2), convenient_points(2, max_extra=2), convenient_points(2, max_extra=2))
def test_mixed_covolume_multilinear(p1, p2, q):
    P, Pp, Q = poly_of(p1), poly_of(p2), poly_of(q)
    assert mixed_covolume(minkowski_sum(P, Pp), Q) == mixed_covolume(P, Q) + mixed_covolume(Pp, Q)


@settings(max_examples=25, deadline=None)
@given(
    convenient_points(2, max_extra=2),
    convenient_points(2, max_extra=2),
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=3),
)
def test_mixed_covolume_decreasing(p1, p2, extra):
    P, Q = poly_of(p1), poly_of(p2)
    bigger = poly_of(list(p1) + list(extra))
    assert mixed_covolume(bigger, Q) <= mixed_covolume(P, Q)


def test_axis_intercept_chain(rng):
    """beta_{k,l} <= rho_{k,l} <= min(s_k, t_l) on random systems vanishing at 1."""
    checked = 0
    while checked < 40:
        n = rng.choice((1, 2))
        N = n + 1 + rng.randint(1, 3)
        pts = list({tuple(rng.randint(0, 4) for _ in range(n)) for _ in range(N)})
        try:
            cfg = build_config(pts)
        except Exception:
            continue
        K = rational_kernel_basis([[1] * cfg.N])
        rows = []
        for _ in range(n):
            weights = [rng.randint(-5, 5) for _ in K[0]]
            rows.append([sum(w * x for w, x in zip(weights, r)) for r in K])
        try:
            system = SparseSystem(cfg, rows)
        except Exception:
            continue
        stats = sparsity_stats(system.coeffs, cfg.points)
        for k, row in enumerate(system.coeffs):
            try:
                st_ = staircase(VanishingSumEvaluator(row, cfg.points))
            except VanishesOnAxis:
                assert min(stats.rho[k]) < 0
                continue
            pts_ = st_.minimal_points
            for a, b in combinations(pts_, 2):
                assert not all(x <= y for x, y in zip(a, b))
                assert not all(x >= y for x, y in zip(a, b))
            for l, beta in enumerate(st_.axis_intercepts):
                assert beta <= stats.rho[k][l] <= min(stats.s[k], stats.t[l])
        checked += 1
