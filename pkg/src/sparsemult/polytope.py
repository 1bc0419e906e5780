"""Exact convex geometry for small point sets in low dimension.

Facets are found by brute force over affinely independent subsets, which
is fine at the sizes we need (dimension <= 4, a few dozen points).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .linalg import determinant, primitive, rank, rational_kernel_basis, rref, solve

Vec = Tuple[Fraction, ...]


def as_points(points: Sequence[Sequence]) -> Tuple[Vec, ...]:
    return tuple(sorted({tuple(Fraction(x) for x in p) for p in points}))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def affine_dimension(points: Sequence[Vec]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([tuple(a - b for a, b in zip(p, p0)) for p in points[1:]])


def _projection(points: Sequence[Vec]) -> Tuple[int, Tuple[int, ...]]:
    """Affine dimension and coordinates on which projection is injective on the hull."""
    if len(points) <= 1:
        return 0, ()
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    _, pivots = rref(diffs)
    return len(pivots), pivots


def _normal_through(vectors: Sequence[Sequence], dim: int):
    """A vector orthogonal to the given (dim-1) independent vectors, or None."""
    if len(vectors) != dim - 1:
        return None
    if dim == 2:
        (a, b), = vectors
        return primitive((-b, a)) if (a or b) else None
    if dim == 3:
        (a1, a2, a3), (b1, b2, b3) = vectors
        cross = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
        return primitive(cross) if any(cross) else None
    if vectors and rank(vectors) < dim - 1:
        return None
    kernel = rational_kernel_basis(vectors, dim) if vectors else tuple((Fraction(1),) for _ in range(dim))
    if len(kernel[0]) != 1:
        return None
    return primitive([row[0] for row in kernel])


@dataclass(frozen=True)
class Facet:
    normal: Tuple[int, ...]
    offset: Fraction
    tight: FrozenSet[int]


def hull_facets(points: Sequence[Vec]) -> Tuple[int, Tuple[int, ...], List[Facet]]:
    """Facets of conv(points) inside its affine hull.

    Returns (dimension, projection coordinates, facets); facet normals live in
    the projected coordinates and satisfy normal . p >= offset on the hull.
    """
    dim, coords = _projection(points)
    if dim == 0:
        return 0, coords, []
    proj = [tuple(p[i] for i in coords) for p in points]
    facets: Dict[Tuple[int, ...], Facet] = {}
    for subset in combinations(range(len(proj)), dim):
        base = proj[subset[0]]
        diffs = [tuple(a - b for a, b in zip(proj[i], base)) for i in subset[1:]]
        w = _normal_through(diffs, dim)
        if w is None:
            continue
        c = dot(w, base)
        values = [dot(w, p) - c for p in proj]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            w = tuple(-x for x in w)
            c = -c
            values = [-v for v in values]
        else:
            continue
        if w not in facets:
            facets[w] = Facet(w, c, frozenset(i for i, v in enumerate(values) if v == 0))
    return dim, coords, list(facets.values())


def hull_vertices(points: Sequence[Sequence]) -> Tuple[Vec, ...]:
    pts = as_points(points)
    dim, _, facets = hull_facets(pts)
    if dim == 0:
        return pts[:1]
    verts = []
    for i, p in enumerate(pts):
        common = None
        for f in facets:
            if i in f.tight:
                common = set(f.tight) if common is None else common & f.tight
        if common == {i}:
            verts.append(p)
    return tuple(sorted(verts))


def triangulate(points: Sequence[Sequence]) -> List[Tuple[Vec, ...]]:
    """Triangulate conv(points) by coning from its lexicographically smallest vertex."""
    pts = as_points(points)
    dim, _, facets = hull_facets(pts)
    if dim == 0:
        return [(pts[0],)]
    apex = pts[0]  # the lexicographic minimum of a point set is always a vertex
    out = []
    for f in facets:
        if 0 in f.tight:
            continue
        for simplex in triangulate([pts[i] for i in sorted(f.tight)]):
            out.append((apex,) + simplex)
    return out


def simplex_volume(simplex: Sequence[Vec]) -> Fraction:
    """Euclidean volume of a full-dimensional simplex."""
    v0 = simplex[0]
    dim = len(v0)
    mat = [tuple(a - b for a, b in zip(v, v0)) for v in simplex[1:]]
    return abs(determinant(mat)) / factorial(dim)


def volume(points: Sequence[Sequence]) -> Fraction:
    """Euclidean volume of conv(points) in the ambient space (0 if not full-dimensional)."""
    pts = as_points(points)
    if not pts or affine_dimension(pts) < len(pts[0]):
        return Fraction(0)
    return sum((simplex_volume(s) for s in triangulate(pts)), Fraction(0))


def orthant_facets(points: Sequence[Vec]) -> List[Facet]:
    """Facets of conv(points) + R>=0^n; normals are nonnegative primitive vectors."""
    scale = 1
    for p in points:
        for x in p:
            d = Fraction(x).denominator
            scale = scale * d // gcd(scale, d)
    # integer coordinates are much faster than Fractions here
    pts = [tuple(int(Fraction(x) * scale) for x in p) for p in points]
    dim = len(pts[0])
    axes = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    facets: Dict[Tuple[int, ...], Facet] = {}
    for r in range(1, dim + 1):
        for subset in combinations(range(len(pts)), r):
            base = pts[subset[0]]
            diffs = [tuple(a - b for a, b in zip(pts[i], base)) for i in subset[1:]]
            for dirs in combinations(axes, dim - r):
                w = _normal_through(diffs + list(dirs), dim)
                if w is None:
                    continue
                if any(x < 0 for x in w):
                    w = tuple(-x for x in w)
                    if any(x < 0 for x in w):
                        continue
                if w in facets:
                    continue
                c = sum(a * b for a, b in zip(w, base))
                values = [sum(a * b for a, b in zip(w, p)) - c for p in pts]
                if all(v >= 0 for v in values):
                    tight = frozenset(i for i, v in enumerate(values) if v == 0)
                    facets[w] = Facet(w, Fraction(c, scale), tight)
    return list(facets.values())


@dataclass(frozen=True)
class Face:
    """A bounded face of conv(points) + R>=0^n."""

    points: Tuple[Vec, ...]
    vertices: Tuple[Vec, ...]
    normal: Tuple[int, ...]
    dim: int


def bounded_faces(points: Sequence[Sequence]) -> List[Face]:
    """All bounded faces (every dimension) of conv(points) + R>=0^n.

    A face is bounded iff the sum of the normals of the facets containing it
    is strictly positive; that sum is then an interior normal of the face.
    """
    pts = as_points(points)
    facets = orthant_facets(pts)
    sets = {f.tight for f in facets if f.tight}
    frontier = set(sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in sets:
                c = a & b
                if c and c not in sets:
                    new.add(c)
        sets |= new
        frontier = new
    faces = []
    for s in sets:
        total = [0] * len(pts[0])
        for f in facets:
            if s <= f.tight:
                total = [a + b for a, b in zip(total, f.normal)]
        if all(x > 0 for x in total):
            face_pts = tuple(pts[i] for i in sorted(s))
            faces.append(
                Face(face_pts, hull_vertices(face_pts), primitive(total), affine_dimension(face_pts))
            )
    faces.sort(key=lambda f: (f.dim, f.vertices))
    return faces


def lower_vertices(points: Sequence[Sequence]) -> Tuple[Vec, ...]:
    """Vertices of conv(points) + R>=0^n."""
    pts = prune_dominated(as_points(points))
    if len(pts) <= 1:
        return tuple(pts)
    facets = orthant_facets(pts)
    verts = []
    for i, p in enumerate(pts):
        common = None
        for f in facets:
            if i in f.tight:
                common = set(f.tight) if common is None else common & f.tight
        if common == {i}:
            verts.append(p)
    return tuple(sorted(verts))


def prune_dominated(points: Sequence[Vec]) -> Tuple[Vec, ...]:
    """Drop points that dominate another point componentwise."""
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    kept: List[Vec] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in kept):
            kept.append(p)
    return tuple(sorted(kept))


def halfspace_vertices(halfspaces: Sequence[Tuple[Sequence, Fraction]], dim: int) -> Tuple[Vec, ...]:
    """Vertices of {x : w . x >= c for every (w, c)} by exhaustive dim-subsets."""
    found = set()
    hs = [(tuple(Fraction(x) for x in w), Fraction(c)) for w, c in halfspaces]
    for subset in combinations(hs, dim):
        mat = [w for w, _ in subset]
        if rank(mat) < dim:
            continue
        x = solve(mat, [c for _, c in subset])
        if all(dot(w, x) >= c for w, c in hs):
            found.add(x)
    return tuple(sorted(found))
