from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsemult.config import SparseSystem, build_config
from sparsemult.errors import CodimNotOne, DuplicateValue, ValidationError
from sparsemult.families import (
    bounds_report,
    cyclic_config,
    f_dn,
    hypersurface_bounds,
    integerize_coefficients,
    max_hypersurface_mult,
    max_mult_circuit_system,
    sigma_bound,
    stirling_sum,
    verify_cyclic,
    weighted_degree,
    witness_diagram_coefficients,
    witness_diagram_prediction,
    witness_system,
)
from sparsemult.newton import VanishingSumEvaluator, staircase
from sparsemult.oracle import (
    hypersurface_multiplicity,
    shift_system,
    system_multiplicity,
    system_nondegeneracy,
)
from sparsemult.polytope import simplex_volume, triangulate


def stirling_second_kind(k, ell):
    """S(k, ell) by the triangular recurrence."""
    table = [[0] * (ell + 1) for _ in range(k + 1)]
    table[0][0] = 1
    for i in range(1, k + 1):
        for j in range(1, min(i, ell) + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[k][ell]


def shoelace_twice_area(points):
    pts = sorted(set(points))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return abs(sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(hull, hull[1:] + hull[:1])))


def test_f_dn_example():
    assert f_dn(3, 2) == {(0, 0): 1, (1, 1): -3, (2, 4): 3, (3, 9): -1}


def test_witness_system_rejects_bad_sizes():
    with pytest.raises(ValueError):
        witness_system(0, 2)


@pytest.mark.parametrize("n,m,expected", [(1, 1, 2), (2, 1, 3), (2, 2, 6), (3, 1, 4)])
def test_witness_multiplicity_examples(n, m, expected):
    assert system_multiplicity(witness_system(n, m).system) == expected


def test_witness_prediction_example():
    st_ = witness_diagram_prediction(2, 1, 1)
    assert st_.minimal_points == ((0, 1), (2, 0))
    assert st_.axis_intercepts == (2, 1)


@pytest.mark.parametrize("n,m", [(1, 2), (2, 1), (2, 3), (3, 1)])
def test_witness_prediction_matches_staircases(n, m):
    w = witness_system(n, m)
    for k in range(1, n + 1):
        row = w.system.coeffs[k - 1]
        found = staircase(VanishingSumEvaluator(row, w.system.config.points))
        predicted = witness_diagram_prediction(n, m, k)
        assert found.minimal_points == predicted.minimal_points
        assert found.axis_intercepts == predicted.axis_intercepts


def test_witness_diagram_coefficients_match_shift():
    w = witness_system(2, 2)
    ps = shift_system(w.system, 10)
    for k in (1, 2):
        pts = witness_diagram_prediction(2, 2, k).minimal_points
        for alpha, value in witness_diagram_coefficients(2, 2, k, pts).items():
            assert ps.polys[k - 1].get(alpha, 0) == value


@settings(max_examples=60, deadline=None)
@given(ell=st.integers(0, 12), k=st.integers(0, 14))
def test_stirling_sum_closed_form(ell, k):
    assert stirling_sum(ell, k) == (-1) ** ell * factorial(ell) * stirling_second_kind(k, ell)


def test_stirling_sum_vanishes_below():
    assert all(stirling_sum(6, k) == 0 for k in range(6))
    assert stirling_sum(6, 6) == factorial(6)


def test_weighted_degree():
    assert weighted_degree((2, 0, 1)) == 5


def test_bounds_report_witness():
    r = bounds_report(witness_system(2, 1).system)
    assert (r.kouchnirenko, r.gamma_covolume, r.coarse, r.planar) == (6, 6, 9, 6)
    assert (r.dual_kouchnirenko, r.dual_coarse, r.conjectured) == (3, 3, 3)
    assert r.gabrielov == 2 ** comb(4, 2) * 3**4
    assert "diag" in r.absent


def test_bounds_report_square_free():
    system = SparseSystem(build_config([(0, 0), (1, 0), (0, 1)]), ((1, -1, 0), (1, 0, -1)))
    r = bounds_report(system)
    assert r.diag == 1 and r.coarse == 4
    assert r.dual_coarse is None and "dual_kouchnirenko" in r.absent


@pytest.mark.parametrize(
    "n,m,sigma,b",
    [(2, 1, 2, 2), (2, 4, 3, 3), (2, 8, 4, 5), (3, 6, 2, 3), (1, 4, 5, 5)],
)
def test_hypersurface_bounds_examples(n, m, sigma, b):
    hb = hypersurface_bounds(n, m)
    assert (hb.sigma, hb.b) == (sigma, b)


@settings(max_examples=80, deadline=None)
@given(n=st.integers(1, 5), m=st.integers(1, 30))
def test_sigma_is_the_floor_of_the_root(n, m):
    s = sigma_bound(n, m)
    assert comb(n + s - 1, n) <= n + m < comb(n + s, n)
    lo, hi = hypersurface_bounds(n, m).mu0_bracket
    assert lo == s and hi in (s, s + 1)


@pytest.mark.parametrize("m", range(5, 30))
def test_planar_sigma_below_b(m):
    hb = hypersurface_bounds(2, m)
    assert hb.sigma < hb.b


def test_high_multiplicity_example():
    f = {}
    for j in range(5):
        c = (-1) ** j * comb(4, j)
        f[(1, j, 0)] = f.get((1, j, 0), 0) + c
        f[(0, 0, j)] = f.get((0, 0, j), 0) + c
    config = build_config(list(f))
    assert config.m == 6
    assert hypersurface_multiplicity(f, (1, 1, 1)) == 4
    assert hypersurface_bounds(3, 6).b == 3
    best = max_hypersurface_mult(config)
    assert best.multiplicity == 4 and not best.full_row_rank


def test_max_hypersurface_univariate():
    assert max_hypersurface_mult(build_config([0, 1, 2, 3, 4])).multiplicity == 4


@pytest.mark.parametrize("n", range(1, 5))
def test_circuit_reaches_n_plus_one(n):
    system = max_mult_circuit_system(list(range(n + 2)))
    assert system_multiplicity(system) == n + 1


def test_circuit_translation_and_duplicates():
    system = max_mult_circuit_system([3, 5, 6, 9])
    assert system_multiplicity(system) == 3
    with pytest.raises(DuplicateValue):
        max_mult_circuit_system([0, 1, 1])


def test_verify_cyclic():
    config = cyclic_config([0, 1, 2, 3], 2)
    assert verify_cyclic(config, [0, 1, 2, 3])
    square = build_config([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert not verify_cyclic(square, [0, 1, 2, 3])
    with pytest.raises(DuplicateValue):
        verify_cyclic(config, [0, 1, 1, 3])
    with pytest.raises(CodimNotOne):
        verify_cyclic(cyclic_config([0, 1, 2, 3, 4], 2), [0, 1, 2, 3, 4])


@pytest.mark.parametrize("m", range(0, 5))
def test_cyclic_polytope_volume(m):
    pts = cyclic_config(range(m + 3), 2).points
    normalized = sum(2 * simplex_volume(s) for s in triangulate(pts))
    assert normalized == shoelace_twice_area(pts) == 2 * comb(m + 3, 3)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 5), (2, 1), (2, 3), (3, 2)])
def test_gabrielov_exceeds_coarse(n, m):
    N = n + m + 1
    value = 2 ** comb(N, 2) * (n + 1) ** N
    assert value > (N - 1) ** n
    assert bounds_report(witness_system(n, m).system).gabrielov == value


def test_integerize_identity():
    w = witness_system(2, 1)
    system, mu = integerize_coefficients(w.system)
    assert mu == 3
    assert all(all(Fraction(x).denominator == 1 for x in row) for row in system.coeffs)


def test_integerize_rescaled():
    w = witness_system(2, 1)
    scaled = tuple(tuple(Fraction(x, 3 * (i + 1)) for x in row) for i, row in enumerate(w.system.coeffs))
    system, mu = integerize_coefficients(SparseSystem(w.system.config, scaled))
    assert mu == system_multiplicity(w.system)
    assert all(Fraction(x).denominator == 1 for row in system.coeffs for x in row)


def test_integerize_rejects_degenerate():
    config = build_config([(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)])
    system = SparseSystem(config, ((-9, 3, 1, 3, 2), (-3, -2, 1, 1, 3)))
    assert system_nondegeneracy(system).status == "Degenerate"
    with pytest.raises(ValidationError):
        integerize_coefficients(system)


def test_dual_bounds_need_certified_gale_system():
    # 5(1-x)^2(1+x): the Gale linear parts are proportional, so its covolume undercounts
    system = SparseSystem(build_config([0, 1, 2, 3]), ((5, -5, -5, 5),))
    r = bounds_report(system)
    assert system_multiplicity(system) == 2
    assert r.dual_kouchnirenko is None and "non-degenerate" in r.absent["dual_kouchnirenko"]
    assert r.kouchnirenko == 3 and r.dual_coarse == 9
