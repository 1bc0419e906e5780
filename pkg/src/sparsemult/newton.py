"""Newton diagrams of shifted systems, sparsity statistics and mixed covolumes.

The shifted polynomial F(z) = f(z + 1) is never expanded here.  Whether the
coefficient of z^beta vanishes is decided through the vanishing sum
L(beta) = sum_j c_j a_j^beta: the minimal exponents of F are exactly the
minimal beta with L(beta) != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import List, Sequence, Tuple

from . import polytope
from .linalg import determinant
from .errors import DimensionMismatch, NotConvenient, VanishesOnAxis
from .poly import Poly

Vec = Tuple[Fraction, ...]


@dataclass(frozen=True)
class VanishingSumEvaluator:
    """One coefficient row together with the exponent vectors it weights."""

    coeff_row: Tuple[Fraction, ...]
    exponent_rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff_row", tuple(Fraction(c) for c in self.coeff_row))
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.exponent_rows)
        object.__setattr__(self, "exponent_rows", rows)
        if len(self.coeff_row) != len(rows):
            raise DimensionMismatch("one exponent vector per coefficient is required")

    @property
    def dim(self) -> int:
        return len(self.exponent_rows[0])


def L_value(ev: VanishingSumEvaluator, alpha: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for c, a in zip(ev.coeff_row, ev.exponent_rows):
        if c:
            term = c
            for base, e in zip(a, alpha):
                term *= base**e
            total += term
    return total


def axis_hints(ev: VanishingSumEvaluator) -> Tuple[int, ...]:
    """t_l: number of distinct l-th coordinates minus one."""
    return tuple(len({a[i] for a in ev.exponent_rows}) - 1 for i in range(ev.dim))


@dataclass(frozen=True)
class Staircase:
    dim: int
    minimal_points: Tuple[Tuple[int, ...], ...]
    axis_intercepts: Tuple[int | None, ...]


def staircase(ev: VanishingSumEvaluator, axis_bound_hints: Sequence[int] | None = None) -> Staircase:
    """Minimal exponents of the shifted polynomial, found from the vanishing sums."""
    n = ev.dim
    hints = tuple(axis_bound_hints) if axis_bound_hints is not None else axis_hints(ev)
    zero = (0,) * n
    if L_value(ev, zero) != 0:
        return Staircase(n, (zero,), zero)
    intercepts = []
    for axis in range(n):
        found = None
        for lam in range(1, hints[axis] + 1):
            alpha = tuple(lam if i == axis else 0 for i in range(n))
            if L_value(ev, alpha) != 0:
                found = lam
                break
        if found is None:
            raise VanishesOnAxis(axis)
        intercepts.append(found)
    box = sorted(product(*(range(b + 1) for b in intercepts)), key=lambda a: (sum(a), a))
    minimal: List[Tuple[int, ...]] = []
    for alpha in box:
        if any(all(x <= y for x, y in zip(q, alpha)) for q in minimal):
            continue
        if L_value(ev, alpha) != 0:
            minimal.append(alpha)
    return Staircase(n, tuple(sorted(minimal)), tuple(intercepts))


def staircase_of_poly(p: Poly, dim: int | None = None) -> Staircase:
    """Staircase read off an explicit polynomial; axes without a point get None."""
    from .poly import minimal_exponents

    if dim is None:
        dim = len(next(iter(p)))
    mins = minimal_exponents(p.keys())
    intercepts = []
    for axis in range(dim):
        on_axis = [q[axis] for q in mins if all(x == 0 for i, x in enumerate(q) if i != axis)]
        intercepts.append(on_axis[0] if on_axis else None)
    return Staircase(dim, mins, tuple(intercepts))


@dataclass(frozen=True)
class NewtonDiagram:
    staircase: Staircase
    faces: Tuple[polytope.Face, ...]

    def all_faces(self) -> List[polytope.Face]:
        return polytope.bounded_faces(self.staircase.minimal_points)

    def lattice_points(self) -> Tuple[Tuple[int, ...], ...]:
        """Lattice points lying on some bounded face."""
        pts = self.staircase.minimal_points
        if not pts:
            return ()
        facets = polytope.orthant_facets(polytope.as_points(pts))
        top = [max(p[i] for p in pts) for i in range(self.staircase.dim)]
        out = []
        for beta in product(*(range(t + 1) for t in top)):
            values = [polytope.dot(f.normal, beta) - f.offset for f in facets]
            if any(v < 0 for v in values):
                continue
            total = [0] * len(beta)
            for f, v in zip(facets, values):
                if v == 0:
                    total = [a + b for a, b in zip(total, f.normal)]
            if all(x > 0 for x in total):
                out.append(beta)
        return tuple(out)


def newton_diagram(st: Staircase) -> NewtonDiagram:
    """Maximal bounded faces of conv(minimal points) + R>=0^n."""
    faces = polytope.bounded_faces(st.minimal_points)
    maximal = [
        f for f in faces if not any(g is not f and set(f.points) < set(g.points) for g in faces)
    ]
    return NewtonDiagram(st, tuple(maximal))


def is_convenient(st: Staircase) -> bool:
    return all(b is not None for b in st.axis_intercepts)


@dataclass(frozen=True)
class ConvenientPolytope:
    """A rational polytope in the orthant meeting every coordinate axis."""

    vertices: Tuple[Vec, ...]

    def __post_init__(self):
        pts = polytope.as_points(self.vertices)
        if not pts:
            raise NotConvenient("empty polytope")
        n = len(pts[0])
        if any(x < 0 for p in pts for x in p):
            raise NotConvenient("polytope leaves the nonnegative orthant")
        for axis in range(n):
            if not any(all(x == 0 for i, x in enumerate(p) if i != axis) for p in pts):
                raise NotConvenient(f"polytope misses axis {axis + 1}")
        object.__setattr__(self, "vertices", polytope.hull_vertices(pts))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])


def polytope_from_points(points) -> ConvenientPolytope:
    return ConvenientPolytope(tuple(tuple(Fraction(x) for x in p) for p in points))


def minkowski_sum(P: ConvenientPolytope, Q: ConvenientPolytope) -> ConvenientPolytope:
    if P.dim != Q.dim:
        raise DimensionMismatch("summands live in different dimensions")
    sums = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return ConvenientPolytope(tuple(sums))


def _covolume_of_points(points: Sequence[Vec]) -> Fraction:
    """n! Vol of the orthant minus (conv(points) + orthant).

    The region is the union of the cones from the origin over the bounded
    facets, so triangulating each facet and summing |det| of the simplices
    gives n! times its volume.
    """
    pts = polytope.lower_vertices(points)
    if all(x == 0 for x in pts[0]) and len(pts) == 1:
        return Fraction(0)
    total = Fraction(0)
    for f in polytope.orthant_facets(pts):
        if not all(x > 0 for x in f.normal):
            continue
        for simplex in polytope.triangulate([pts[i] for i in sorted(f.tight)]):
            total += abs(determinant(simplex))
    return total


def covolume_by_clipping(points: Sequence[Vec]) -> Fraction:
    """The same quantity computed by clipping conv(points) + orthant to a box."""
    pts = polytope.lower_vertices(points)
    n = len(pts[0])
    big = max(max(p) for p in pts)
    if big == 0:
        return Fraction(0)
    halfspaces = [(f.normal, f.offset) for f in polytope.orthant_facets(pts)]
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        halfspaces.append((e, Fraction(0)))
        halfspaces.append((tuple(-x for x in e), -big))
    clipped = polytope.halfspace_vertices(halfspaces, n)
    return factorial(n) * (big**n - polytope.volume(clipped))


def covolume_single(delta: ConvenientPolytope) -> Fraction:
    return _covolume_of_points(delta.vertices)


def mixed_covolume(*deltas: ConvenientPolytope) -> Fraction:
    """Polarization of the covolume, normalized so that equal arguments give covolume_single."""
    if len(deltas) == 1 and isinstance(deltas[0], (list, tuple)):
        deltas = tuple(deltas[0])
    for d in deltas:
        if not isinstance(d, ConvenientPolytope):
            raise NotConvenient("mixed covolume needs convenient polytopes")
    n = deltas[0].dim
    if any(d.dim != n for d in deltas) or len(deltas) != n:
        raise DimensionMismatch(f"need exactly {n} polytopes in dimension {n}")
    total = Fraction(0)
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            pts = deltas[subset[0]].vertices
            for i in subset[1:]:
                pts = polytope.lower_vertices(
                    [tuple(a + b for a, b in zip(p, q)) for p in pts for q in deltas[i].vertices]
                )
            sign = -1 if (n - size) % 2 else 1
            total += sign * _covolume_of_points(pts)
    return total / factorial(n)


@dataclass(frozen=True)
class SparsityStats:
    rho: Tuple[Tuple[int, ...], ...]
    s: Tuple[int, ...]
    t: Tuple[int, ...]
    gammas: Tuple[ConvenientPolytope | None, ...]


def sparsity_stats(coeffs: Sequence[Sequence], exponents: Sequence[Sequence]) -> SparsityStats:
    """rho, s, t and the simplices Gamma_k.

    ``coeffs`` has one row per equation and one column per exponent vector.
    Passing (C, points of A) gives the primal statistics; passing (B^t, rows of
    D without the leading one) gives the dual ones.
    """
    rows = [tuple(Fraction(c) for c in r) for r in coeffs]
    pts = [tuple(Fraction(x) for x in p) for p in exponents]
    dim = len(pts[0])
    t = tuple(len({p[i] for p in pts}) - 1 for i in range(dim))
    s = tuple(sum(1 for c in r if c) - 1 for r in rows)
    rho = []
    for r in rows:
        rho_row = []
        for axis in range(dim):
            sums: dict = {}
            for c, p in zip(r, pts):
                sums[p[axis]] = sums.get(p[axis], 0) + c
            rho_row.append(sum(1 for v in sums.values() if v != 0) - 1)
        rho.append(tuple(rho_row))
    gammas = []
    for rho_row in rho:
        if min(rho_row) < 0:
            gammas.append(None)
        else:
            gammas.append(
                polytope_from_points(
                    [tuple(rho_row[i] if i == j else 0 for i in range(dim)) for j in range(dim)]
                )
            )
    return SparsityStats(tuple(rho), s, t, tuple(gammas))
