"""Gale dual systems, H-dual series and the four-corner duality square.

Conventions: ``B`` is N x m with columns spanning the integer kernel of the
configuration matrix, ``D`` is N x (m+1) with a first column of ones, row 0
equal to (1, 0, ..., 0), and C D = 0.  The remaining entries of row i form
delta_i, and p_i(y) = 1 + <delta_i, y>.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import poly as P
from .config import SparseSystem, SupportConfig, anchor_at_zero, as_integer_rows
from .errors import NotRepaired, OnesNotInKernel, TruncationTooShort, ValidationError
from .linalg import (
    as_fraction_matrix,
    determinant,
    lattice_kernel_basis,
    matmul,
    rank,
    rational_kernel_basis,
    rref,
    transpose,
)
from .newton import (
    VanishingSumEvaluator,
    is_convenient,
    staircase_of_poly,
    sparsity_stats,
)
from .oracle import (
    INFINITE,
    PolySystem,
    multiplicity_at_origin,
    multiplicity_of_series,
    system_multiplicity,
)


@dataclass(frozen=True)
class GaleData:
    B: Tuple[Tuple[int, ...], ...]
    D: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in row) for row in self.B)
        D = as_fraction_matrix(self.D)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "D", D)
        if len(B) != len(D):
            raise ValidationError("Gale shapes", "B and D need one row per point")
        m = len(D[0]) - 1
        if any(len(row) != m for row in B):
            raise ValidationError("Gale shapes", f"B must have {m} columns")
        if any(row[0] != 1 for row in D) or any(x != 0 for x in D[0][1:]):
            raise ValidationError("reduced D", "first column ones and delta_0 = 0 required")
        if m and rank(B) != m:
            raise ValidationError("rank-deficient B", f"rank(B) must be {m}")
        if rank(D) != m + 1:
            raise ValidationError("rank-deficient D", f"rank(D) must be {m + 1}")

    @property
    def m(self) -> int:
        return len(self.D[0]) - 1

    @property
    def deltas(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(row[1:] for row in self.D)

    def check_against(self, config: SupportConfig, coeffs: Sequence[Sequence]) -> None:
        if any(any(x for x in row) for row in matmul(config.matrix, self.B)):
            raise ValidationError("A B = 0", "columns of B must lie in the kernel of A")
        if any(any(x for x in row) for row in matmul(coeffs, self.D)):
            raise ValidationError("C D = 0", "columns of D must lie in the kernel of C")


def gale_dual_B(config: SupportConfig) -> Tuple[Tuple[int, ...], ...]:
    """A Z-basis (as columns) of the integer kernel of the configuration matrix."""
    return lattice_kernel_basis(config.matrix)


def reduced_gale_dual_D(coeffs: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    """The reduced Gale dual of C with its non-constant columns in echelon form."""
    C = as_fraction_matrix(coeffs)
    N = len(C[0])
    if any(sum(row) != 0 for row in C):
        raise OnesNotInKernel("the all-ones vector is not in the kernel of C")
    kernel = transpose(rational_kernel_basis(C))
    ones = tuple(Fraction(1) for _ in range(N))
    chosen: List[Tuple[Fraction, ...]] = []
    for vec in kernel:
        if rank([ones] + chosen + [vec]) == len(chosen) + 2:
            chosen.append(vec)
    adjusted = [tuple(x - v[0] for x in v) for v in chosen]
    echelon, _ = rref(adjusted) if adjusted else ((), ())
    columns = [ones] + list(echelon)
    return transpose(columns)


def gale_data(config: SupportConfig, coeffs: Sequence[Sequence]) -> GaleData:
    return GaleData(gale_dual_B(config), reduced_gale_dual_D(coeffs))


@dataclass(frozen=True)
class GaleSystem:
    """g_k = prod_{b>0} p_i^b - prod_{b<0} p_i^-b, with phi_k kept factored."""

    linear_forms: Tuple[P.Poly, ...]
    factors: Tuple[Tuple[Tuple[Tuple[int, int], ...], Tuple[Tuple[int, int], ...]], ...]
    polys: Tuple[P.Poly, ...]

    def as_poly_system(self) -> PolySystem:
        return PolySystem(len(self.polys), self.polys)

    def phi(self, k: int, y: Sequence) -> Fraction:
        """phi_k(y) = prod_i p_i(y)^{b_ik}, evaluated from the factorization."""
        num, den = self.factors[k]
        value = Fraction(1)
        for i, e in num:
            value *= P.evaluate(self.linear_forms[i], y) ** e
        for i, e in den:
            value /= P.evaluate(self.linear_forms[i], y) ** e
        return value


def gale_system(gd: GaleData) -> GaleSystem:
    m = gd.m
    forms = tuple(P.linear_form(1, delta) for delta in gd.deltas)
    factors = []
    polys = []
    for k in range(m):
        num = tuple((i, row[k]) for i, row in enumerate(gd.B) if row[k] > 0)
        den = tuple((i, -row[k]) for i, row in enumerate(gd.B) if row[k] < 0)
        left = P.constant(1, m)
        for i, e in num:
            left = P.mul(left, P.power(forms[i], e, m))
        right = P.constant(1, m)
        for i, e in den:
            right = P.mul(right, P.power(forms[i], e, m))
        factors.append((num, den))
        polys.append(P.add(left, right, -1))
    return GaleSystem(forms, tuple(factors), tuple(polys))


@dataclass(frozen=True)
class HDualSystem:
    series: Tuple[P.Poly, ...]
    order: int
    deltas: Tuple[Tuple[Fraction, ...], ...]
    columns: Tuple[Tuple[int, ...], ...]

    def as_poly_system(self) -> PolySystem:
        return PolySystem(len(self.series), self.series, self.order)

    def evaluator(self, k: int) -> VanishingSumEvaluator:
        return VanishingSumEvaluator(self.columns[k], self.deltas)


def hdual_series(gd: GaleData, order: int) -> HDualSystem:
    """H_k(y) = sum_i b_ik (1 + y)^{delta_i}, known below total degree ``order``."""
    expansions = [P.shifted_monomial(delta, order) for delta in gd.deltas]
    series = []
    for k in range(gd.m):
        acc: P.Poly = {}
        for row, exp in zip(gd.B, expansions):
            if row[k]:
                acc = P.add(acc, exp, row[k])
        series.append(acc)
    return HDualSystem(tuple(series), order, gd.deltas, transpose(gd.B))


def hdual_multiplicity(gd: GaleData, ceiling: int = 64):
    """Multiplicity of the H-dual series at 0, growing the truncation as needed."""
    order = 8
    while True:
        hd = hdual_series(gd, order)
        try:
            return multiplicity_of_series(hd.as_poly_system(), order, ceiling)
        except TruncationTooShort:
            if order > ceiling:
                return INFINITE
            order *= 2


def fourth_corner(config: SupportConfig, coeffs: Sequence[Sequence]) -> GaleSystem:
    """The Gale system of the H-dual: exponents from C^t, linear forms from A^t.

    Rows of C are scaled to integers first (left-equivalence), and the
    configuration must be anchored with a_0 = 0 so that A^t is reduced.
    """
    if any(x != 0 for x in config.points[0]):
        raise ValidationError("anchored configuration", "a_0 must be the origin")
    int_rows = as_integer_rows(coeffs)
    return gale_system(GaleData(transpose(int_rows), transpose(config.matrix)))


@dataclass(frozen=True)
class DualitySquare:
    system: SparseSystem
    gale: GaleData
    gale_system: GaleSystem
    hdual: HDualSystem
    fourth: GaleSystem
    mu: object
    mu_gale: object
    mu_prime: object
    mu_fourth: object
    staircases_agree: bool


def duality_square(system: SparseSystem, gd: GaleData | None = None, order: int | None = None) -> DualitySquare:
    config = system.config
    perm = tuple(range(config.N))
    if any(x != 0 for x in config.points[0]):
        config, perm = anchor_at_zero(config, 0)
    coeffs = tuple(tuple(row[j] for j in perm) for row in system.coeffs)
    system = SparseSystem(config, coeffs)
    if gd is None:
        gd = gale_data(config, coeffs)
    gd.check_against(config, coeffs)
    gs = gale_system(gd)
    mu = system_multiplicity(system)
    mu_gale = multiplicity_at_origin(gs.as_poly_system())
    mu_prime = hdual_multiplicity(gd)
    fourth = fourth_corner(config, coeffs)
    mu_fourth = multiplicity_at_origin(fourth.as_poly_system())
    if order is None:
        order = 2 + max((max(sum(e) for e in g) for g in gs.polys if g), default=1)
    hd = hdual_series(gd, order)
    agree = all(
        _truncated_staircase(g, order) == _truncated_staircase(h, order)
        for g, h in zip(gs.polys, hd.series)
    )
    return DualitySquare(system, gd, gs, hd, fourth, mu, mu_gale, mu_prime, mu_fourth, agree)


def _truncated_staircase(p: P.Poly, order: int):
    return tuple(e for e in P.minimal_exponents(p.keys()) if sum(e) < order)


def coefficient_law(gs: GaleSystem, hd: HDualSystem, k: int):
    """Check g/H coefficient relations on lattice points of the diagram of g_k.

    Returns a list of (beta, coefficient in g_k, coefficient in H_k, L*_k(beta)/beta!).
    """
    from math import factorial

    from .newton import L_value, newton_diagram

    diagram = newton_diagram(staircase_of_poly(gs.polys[k], len(hd.deltas[0])))
    rows = []
    for beta in diagram.lattice_points():
        fact = 1
        for b in beta:
            fact *= factorial(b)
        rows.append(
            (
                beta,
                gs.polys[k].get(beta, Fraction(0)),
                hd.series[k].get(beta, Fraction(0)),
                L_value(hd.evaluator(k), beta) / fact,
            )
        )
    return rows


def multiplicity_ge_two(points_matrix, coeffs, B, D) -> Tuple[bool, bool, bool]:
    """Both linear-part conditions for multiplicity at least two, and whether they agree.

    ``points_matrix`` is the (n+1) x N configuration matrix with a_0 = 0.
    """
    A_prime = [row[1:] for row in points_matrix[1:]]
    C_prime = [row[1:] for row in coeffs]
    B_prime = [row for row in B[1:]]
    D_prime = [row[1:] for row in D[1:]]
    primal = determinant(matmul(A_prime, transpose(C_prime))) == 0
    m = len(D[0]) - 1
    if m == 0:
        dual = False
    else:
        dual = determinant(matmul(transpose(B_prime), D_prime)) == 0
    return primal, dual, primal == dual


def _random_invertible(size: int, rng: random.Random) -> Tuple[Tuple[int, ...], ...]:
    while True:
        M = tuple(tuple(rng.randint(-3, 3) for _ in range(size)) for _ in range(size))
        if determinant(M) != 0:
            return M


def _convenient_rows(coeffs, exponents) -> bool:
    stats = sparsity_stats(coeffs, exponents)
    return all(min(row) >= 0 for row in stats.rho)


def repair_convenience(system: SparseSystem, seed: int = 0, trials: int = 200) -> SparseSystem:
    """Left-multiply C by small random invertible matrices until every F_k is convenient."""
    rng = random.Random(seed)
    if _convenient_rows(system.coeffs, system.config.points):
        return system
    for _ in range(trials):
        M = _random_invertible(system.n, rng)
        C = matmul(M, system.coeffs)
        if _convenient_rows(C, system.config.points):
            return SparseSystem(system.config, C, system.base_point)
    raise NotRepaired(f"no repairing matrix in {trials} trials")


def repair_gale_convenience(gd: GaleData, seed: int = 0, trials: int = 200) -> GaleData:
    """Right-multiply B by small random invertible matrices until every g_k is convenient."""
    rng = random.Random(seed)

    def ok(B):
        return all(is_convenient(staircase_of_poly(g, gd.m)) for g in gale_system(GaleData(B, gd.D)).polys)

    if ok(gd.B):
        return gd
    for _ in range(trials):
        M = _random_invertible(gd.m, rng)
        B = matmul(gd.B, M)
        if ok(B):
            return GaleData(B, gd.D)
    raise NotRepaired(f"no repairing matrix in {trials} trials")
