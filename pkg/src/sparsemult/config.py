"""Exponent configurations and the sparse systems supported on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Sequence, Tuple

from .errors import DegenerateConfig, DuplicatePoint, ValidationError
from .linalg import (
    IntMatrix,
    Matrix,
    as_fraction_matrix,
    determinant,
    matmul,
    rank,
    smith_normal_form,
    transpose,
)

Point = Tuple  # tuple of int (lattice) or Fraction (rational configurations)


def _normalize_point(p) -> Point:
    if isinstance(p, (int, Fraction)):
        p = (p,)
    out = []
    for x in p:
        q = Fraction(x)
        out.append(q.numerator if q.denominator == 1 else q)
    return tuple(out)


@dataclass(frozen=True)
class SupportConfig:
    """An ordered configuration a_0..a_{N-1} spanning R^n affinely."""

    points: Tuple[Point, ...]
    n: int = field(init=False)
    N: int = field(init=False)
    m: int = field(init=False)

    def __post_init__(self):
        pts = tuple(_normalize_point(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise DegenerateConfig("empty configuration")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise DegenerateConfig("points of different dimensions")
        if len(set(pts)) != len(pts):
            raise DuplicatePoint("configuration has repeated points")
        n = dims.pop()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "N", len(pts))
        object.__setattr__(self, "m", len(pts) - n - 1)
        if rank(self.matrix) < n + 1:
            raise DegenerateConfig("points lie in an affine hyperplane")

    @property
    def matrix(self) -> tuple:
        """The (n+1) x N matrix with a top row of ones and columns (1, a_j)."""
        rows = [tuple(1 for _ in self.points)]
        for i in range(len(self.points[0])):
            rows.append(tuple(p[i] for p in self.points))
        return tuple(rows)

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for p in self.points for x in p)


def build_config(points: Sequence) -> SupportConfig:
    return SupportConfig(tuple(points))


@dataclass(frozen=True)
class SparseSystem:
    """The system C . x^A = 0 together with the point whose multiplicity we study."""

    config: SupportConfig
    coeffs: Matrix
    base_point: Tuple[Fraction, ...] | None = None

    def __post_init__(self):
        coeffs = as_fraction_matrix(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        n, N = self.config.n, self.config.N
        if len(coeffs) != n or any(len(row) != N for row in coeffs):
            raise ValidationError("coefficient shape", f"C must be {n}x{N}")
        if rank(coeffs) != n:
            raise ValidationError("rank-deficient C", f"rank(C) must be {n}")
        if self.base_point is None:
            object.__setattr__(self, "base_point", tuple(Fraction(1) for _ in range(n)))
        else:
            object.__setattr__(self, "base_point", tuple(Fraction(x) for x in self.base_point))

    @property
    def n(self) -> int:
        return self.config.n

    def evaluate(self, x: Sequence) -> Tuple[Fraction, ...]:
        """Value of each equation at a point of the torus."""
        values = []
        for row in self.coeffs:
            total = Fraction(0)
            for c, a in zip(row, self.config.points):
                if c:
                    term = Fraction(c)
                    for xi, ai in zip(x, a):
                        term *= Fraction(xi) ** ai
                    total += term
            values.append(total)
        return tuple(values)


def _as_points(config_or_points) -> Tuple[Tuple[Point, ...], bool]:
    if isinstance(config_or_points, SupportConfig):
        return config_or_points.points, True
    return tuple(_normalize_point(p) for p in config_or_points), False


def normalize_to_orthant(config_or_points):
    """Translate so every coordinate minimum is 0; returns (result, shift)."""
    pts, is_config = _as_points(config_or_points)
    dim = len(pts[0])
    shift = tuple(-min(p[i] for p in pts) for i in range(dim))
    moved = tuple(tuple(x + s for x, s in zip(p, shift)) for p in pts)
    return (SupportConfig(moved) if is_config else moved), shift


def anchor_at_zero(config: SupportConfig, j: int) -> Tuple[SupportConfig, Tuple[int, ...]]:
    """Translate so a_j is the origin and move it to the front.

    Returns the new configuration and the permutation: entry i is the old
    index of the new point i.
    """
    if not 0 <= j < config.N:
        raise IndexError(f"anchor index {j} out of range")
    base = config.points[j]
    order = (j,) + tuple(i for i in range(config.N) if i != j)
    moved = tuple(tuple(x - b for x, b in zip(config.points[i], base)) for i in order)
    return SupportConfig(moved), order


def is_uniform(config: SupportConfig) -> bool:
    """True iff every maximal minor of the configuration matrix is nonzero."""
    cols = transpose(config.matrix)
    for subset in combinations(cols, config.n + 1):
        if determinant(transpose(subset)) == 0:
            return False
    return True


def monomials_up_to(n: int, k: int) -> Tuple[Tuple[int, ...], ...]:
    """Exponents of total degree <= k, by degree then lexicographically.

    Within a degree, x_1 precedes x_2 precedes ..., so for n=2, k=2 the
    order is 1, x1, x2, x1^2, x1 x2, x2^2.
    """
    out = []
    for d in range(k + 1):
        out.extend(_monomials_of_degree(n, d))
    return tuple(out)


def _monomials_of_degree(n: int, d: int):
    if n == 0:
        return [()] if d == 0 else []
    res = []
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            res.append((first,) + rest)
    return res


def higher_matrix(config: SupportConfig, k: int) -> tuple:
    """The matrix whose rows are the monomials of degree <= k evaluated on the points."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rows = []
    for alpha in monomials_up_to(config.n, k):
        row = []
        for p in config.points:
            val = 1
            for x, e in zip(p, alpha):
                val *= x**e
            row.append(val)
        rows.append(tuple(row))
    assert len(rows) == comb(config.n + k, k)
    return tuple(rows)


def invariant_factor_reduce(config: SupportConfig) -> Tuple[SupportConfig, Tuple[int, ...]]:
    """Rewrite an anchored lattice configuration in a basis of the lattice it spans.

    With U P V = diag(t) for the point matrix P, the rows of U P are divisible
    by t_i; dividing gives points spanning Z^n.
    """
    if any(x != 0 for x in config.points[0]):
        raise ValueError("configuration must be anchored with a_0 = 0")
    if not config.is_lattice:
        raise ValueError("invariant factors need a lattice configuration")
    point_matrix = config.matrix[1:]
    diag, left, _ = smith_normal_form(point_matrix)
    factors = tuple(diag[i][i] for i in range(config.n))
    moved = matmul(left, point_matrix)
    reduced_rows = [tuple(x // t for x in row) for row, t in zip(moved, factors)]
    for row, t in zip(moved, factors):
        assert all(x % t == 0 for x in row)
    return SupportConfig(transpose(reduced_rows)), factors


def as_integer_rows(rows: Sequence[Sequence]) -> IntMatrix:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for q in fr:
            lcm = lcm * q.denominator // gcd(lcm, q.denominator)
        out.append(tuple(int(q * lcm) for q in fr))
    return tuple(out)
