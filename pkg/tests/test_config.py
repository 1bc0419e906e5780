from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsemult.config import (
    SparseSystem,
    anchor_at_zero,
    build_config,
    higher_matrix,
    invariant_factor_reduce,
    is_uniform,
    monomials_up_to,
    normalize_to_orthant,
)
from sparsemult.errors import DegenerateConfig, DuplicatePoint, ValidationError
from sparsemult.linalg import matmul, rank, rational_kernel_basis, smith_normal_form
from sparsemult.oracle import hypersurface_multiplicity


def test_build_config_counts():
    c = build_config([0, 1, 2, 3])
    assert (c.n, c.m, c.N) == (1, 2, 4)
    sq = build_config([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert (sq.n, sq.m) == (2, 1)
    assert build_config([0, 1, 2]).m == 1
    assert build_config([0, 2, 4]).m == 1
    with pytest.raises(DegenerateConfig):
        build_config([(0, 0), (1, 1), (2, 2)])
    with pytest.raises(DuplicatePoint):
        build_config([0, 1, 1])


def test_matrix_has_ones_row():
    c = build_config([0, 1, 2, 3])
    assert c.matrix == ((1, 1, 1, 1), (0, 1, 2, 3))


def test_sparse_system_validation():
    c = build_config([0, 1, 2])
    with pytest.raises(ValidationError):
        SparseSystem(c, [[0, 0, 0]])
    with pytest.raises(ValidationError):
        SparseSystem(c, [[1, 2]])
    s = SparseSystem(c, [[1, -2, 1]])
    assert s.base_point == (1,)
    assert s.evaluate((1,)) == (0,)


def test_normalize_to_orthant():
    cfg, shift = normalize_to_orthant(build_config([-1, 2]))
    assert cfg.points == ((0,), (3,)) and shift == (1,)
    pts = [(1, 1), (2, 0), (0, 3)]
    cfg, shift = normalize_to_orthant(build_config(pts))
    assert cfg.points == tuple(pts) and shift == (0, 0)
    moved, shift = normalize_to_orthant([(2, 5), (3, 4)])
    assert moved == ((0, 1), (1, 0)) and shift == (-2, -4)


def test_anchor_at_zero():
    cfg, order = anchor_at_zero(build_config([1, 3, 4]), 0)
    assert cfg.points == ((0,), (2,), (3,)) and order == (0, 1, 2)
    cfg, order = anchor_at_zero(build_config([(1, 1), (2, 3), (0, 0)]), 1)
    assert cfg.points[0] == (0, 0) and (-1, -2) in cfg.points and order[0] == 1
    base = build_config([0, 2, 5])
    assert anchor_at_zero(base, 0)[0] == base


def test_is_uniform():
    assert is_uniform(build_config([0, 1, 2, 3]))
    high = [(1, i, 0) for i in range(5)] + [(0, 0, j) for j in range(5)]
    assert not is_uniform(build_config(high))
    assert is_uniform(build_config([(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert not is_uniform(build_config([(0, 0), (1, 0), (2, 0), (0, 1)]))


def test_monomial_order():
    assert monomials_up_to(2, 2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_higher_matrix_examples():
    cfg = build_config([0, 1, 2, 3])
    for k in (1, 2, 3):
        assert higher_matrix(cfg, k) == tuple(tuple(j**i for j in range(4)) for i in range(k + 1))
    tri = build_config([(0, 0), (1, 0), (0, 1)])
    assert higher_matrix(tri, 1) == tri.matrix
    assert higher_matrix(tri, 2) == ((1, 1, 1), (0, 1, 0), (0, 0, 1), (0, 1, 0), (0, 0, 0), (0, 0, 1))


def test_invariant_factor_reduce_examples():
    cfg, t = invariant_factor_reduce(build_config([0, 2, 4]))
    assert sorted(cfg.points) == [(0,), (1,), (2,)] and t == (2,)
    cfg, t = invariant_factor_reduce(build_config([0, 1, 3]))
    assert cfg.points == ((0,), (1,), (3,)) and t == (1,)
    cfg, t = invariant_factor_reduce(build_config([(0, 0), (2, 0), (0, 2), (2, 2)]))
    assert t == (2, 2)
    assert set(map(tuple, cfg.points)) == {(0, 0), (1, 0), (0, 1), (1, 1)} or rank(cfg.matrix) == 3


lattice_points = st.lists(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=6, unique=True
)


@settings(max_examples=60, deadline=None)
@given(lattice_points, st.integers(1, 3))
def test_higher_matrix_shape_and_prefix(points, k):
    try:
        cfg = build_config(points)
    except DegenerateConfig:
        return
    H = higher_matrix(cfg, k)
    assert len(H) == comb(cfg.n + k, k)
    assert H[: cfg.n + 1] == cfg.matrix


@settings(max_examples=60, deadline=None)
@given(lattice_points)
def test_normalize_minima_zero(points):
    try:
        cfg = build_config(points)
    except DegenerateConfig:
        return
    moved, _ = normalize_to_orthant(cfg)
    for i in range(cfg.n):
        assert min(p[i] for p in moved.points) == 0


@settings(max_examples=60, deadline=None)
@given(lattice_points)
def test_invariant_factor_output_spans_lattice(points):
    try:
        cfg = build_config(points)
    except DegenerateConfig:
        return
    anchored, _ = anchor_at_zero(cfg, 0)
    reduced, _ = invariant_factor_reduce(anchored)
    diag, _, _ = smith_normal_form(reduced.matrix[1:])
    assert all(diag[i][i] == 1 for i in range(reduced.n))


def test_kernel_chain_matches_hypersurface_multiplicity(rng):
    """c in ker A^(k-1) minus ker A^(k) iff multiplicity exactly k at 1."""
    checked = 0
    for _ in range(40):
        pts = list({(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(7)})
        try:
            cfg = build_config(pts)
        except DegenerateConfig:
            continue
        for k in (1, 2, 3):
            K = rational_kernel_basis(higher_matrix(cfg, k - 1) if k > 1 else [[1] * cfg.N])
            if not K[0]:
                continue
            weights = [Fraction(rng.randint(-3, 3)) for _ in K[0]]
            c = [sum(w * x for w, x in zip(weights, row)) for row in K]
            if not any(c):
                continue
            f = {p: v for p, v in zip(cfg.points, c) if v}
            if not f:
                continue
            in_next = all(x == 0 for row in matmul(higher_matrix(cfg, k), [[v] for v in c]) for x in row)
            mu = hypersurface_multiplicity(f, (1, 1))
            assert (mu == k) == (not in_next)
            assert mu >= k
            checked += 1
    assert checked > 20
