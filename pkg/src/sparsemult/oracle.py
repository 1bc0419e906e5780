"""Brute-force local intersection multiplicity and non-degeneracy certificates.

The multiplicity at the origin is the limit of the Hilbert-Samuel ladder
D_K = dim Q[z]/(I + m^K), where I is the ideal of the system and m the
maximal ideal at 0.  D_K is computed as (#monomials of degree < K) minus
the rank of the truncations z^g F_i mod m^K.  Once D_{K+1} = D_K, Nakayama's
lemma gives m^K inside I locally, so D_K is the multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Sequence, Tuple

from . import poly as P
from .config import SparseSystem, monomials_up_to, normalize_to_orthant
from .errors import OriginNotRoot, TruncationTooShort
from .linalg import primitive, rank_large
from .polytope import bounded_faces, prune_dominated

INFINITE = math.inf

NON_DEGENERATE = "NonDegenerate"
DEGENERATE = "Degenerate"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PolySystem:
    """Polynomials (or power series known below total degree ``order``) in ``dim`` variables."""

    dim: int
    polys: Tuple[P.Poly, ...]
    order: int | None = None

    def __post_init__(self):
        cleaned = []
        for p in self.polys:
            q = {tuple(e): Fraction(c) for e, c in p.items() if c}
            if self.order is not None:
                q = P.truncate(q, self.order)
            cleaned.append(q)
        object.__setattr__(self, "polys", tuple(cleaned))


def shift_system(system: SparseSystem, order: int | None = None) -> PolySystem:
    """F_k(z) = f_k(q * (1 + z)) expanded around z = 0.

    The support is first moved into the orthant (a monomial factor is a unit
    near the torus point); the coefficient of z^alpha is then
    sum_j c_kj q^{a_j} prod_i binom(a_ij, alpha_i).
    """
    config, _ = normalize_to_orthant(system.config)
    q = system.base_point
    n = config.n
    polys = []
    expansions = [P.shifted_monomial(a, order) for a in config.points]
    weights = []
    for a in config.points:
        w = Fraction(1)
        for qi, ai in zip(q, a):
            w *= qi**ai
        weights.append(w)
    for row in system.coeffs:
        acc: Dict[Tuple[int, ...], Fraction] = {}
        for c, w, exp in zip(row, weights, expansions):
            if not c:
                continue
            factor = c * w
            for e, b in exp.items():
                acc[e] = acc.get(e, 0) + factor * b
        polys.append({e: v for e, v in acc.items() if v})
    return PolySystem(n, tuple(polys), order)


def hilbert_samuel(ps: PolySystem, K: int) -> int:
    """D_K = dim Q[z] / (I + m^K)."""
    n = ps.dim
    columns = monomials_up_to(n, K - 1)
    index = {e: i for i, e in enumerate(columns)}
    rows = []
    for f in ps.polys:
        low = P.order_of(f)
        if low is None or low >= K:
            continue
        terms = [(e, c, sum(e)) for e, c in f.items() if sum(e) < K]
        for g in monomials_up_to(n, K - 1 - low):
            dg = sum(g)
            row = [0] * len(columns)
            for e, c, d in terms:
                if dg + d < K:
                    row[index[tuple(a + b for a, b in zip(g, e))]] = c
            rows.append(row)
    return len(columns) - (rank_large(rows) if rows else 0)


def _ladder(ps: PolySystem, ceiling: int, known_order: int | None):
    for f in ps.polys:
        if f.get((0,) * ps.dim, 0) != 0:
            raise OriginNotRoot("the origin is not a common zero")
    previous = hilbert_samuel(ps, 1)
    K = 1
    while True:
        if known_order is not None and K + 1 > known_order:
            raise TruncationTooShort(
                f"ladder not stable below the truncation order {known_order}"
            )
        if K > ceiling:
            return INFINITE
        current = hilbert_samuel(ps, K + 1)
        if current == previous:
            return previous
        previous = current
        K += 1


def multiplicity_at_origin(ps: PolySystem, ceiling: int | None = None):
    """Local multiplicity at 0; ``INFINITE`` when the ladder passes the ceiling."""
    if ps.order is not None:
        return multiplicity_of_series(ps, ps.order, ceiling)
    return _ladder(ps, 64 if ceiling is None else ceiling, None)


def multiplicity_of_series(ps: PolySystem, order: int, ceiling: int | None = None):
    """Multiplicity of a system known only below total degree ``order``.

    Raises TruncationTooShort when the ladder does not settle inside the
    known range; the answer is then unknown.
    """
    truncated = PolySystem(ps.dim, ps.polys, order)
    return _ladder(truncated, order if ceiling is None else ceiling, order)


def default_ceiling(system: SparseSystem) -> int:
    """min(prod s, prod t) + 2 when every s_k, t_l is positive, else 64."""
    from .newton import sparsity_stats

    stats = sparsity_stats(system.coeffs, system.config.points)
    if min(stats.s) > 0 and min(stats.t) > 0:
        return min(math.prod(stats.s), math.prod(stats.t)) + 2
    return 64


def system_multiplicity(system: SparseSystem, ceiling: int | None = None):
    """Multiplicity of C . x^A = 0 at its base point.

    The shifted system is expanded only as far as the ladder needs, doubling
    the expansion order whenever the ladder runs out of known terms.
    """
    if any(v != 0 for v in system.evaluate(system.base_point)):
        raise OriginNotRoot("the base point is not a solution")
    ceiling = default_ceiling(system) if ceiling is None else ceiling
    order = 8
    while True:
        order = min(order, ceiling + 2)
        ps = shift_system(system, order)
        try:
            return _ladder(ps, ceiling, order)
        except TruncationTooShort:
            if order >= ceiling + 2:
                return INFINITE
            order *= 2


@dataclass(frozen=True)
class FaceTruncation:
    variables: Tuple[int, ...]
    weight: Tuple[int, ...]
    face_dim: int
    initial_forms: Tuple[P.Poly, ...]


def _restrict(p: P.Poly, variables: Sequence[int]) -> P.Poly:
    keep = set(variables)
    out = {}
    for e, c in p.items():
        if all(x == 0 for i, x in enumerate(e) if i not in keep):
            out[tuple(e[i] for i in variables)] = c
    return out


def _initial_form(p: P.Poly, weight: Sequence[int]) -> P.Poly:
    values = {e: sum(w * x for w, x in zip(weight, e)) for e in p}
    low = min(values.values())
    return {e: c for e, c in p.items() if values[e] == low}


def face_truncations(ps: PolySystem) -> List[FaceTruncation] | None:
    """Initial systems for every variable subset and every positive weight class.

    Returns None when some restriction vanishes identically (the system is
    not convenient).
    """
    n = ps.dim
    out = []
    for size in range(1, n + 1):
        for variables in combinations(range(n), size):
            restricted = [_restrict(f, variables) for f in ps.polys]
            if any(not r for r in restricted):
                return None
            mins = [P.minimal_exponents(r.keys()) for r in restricted]
            sums = {tuple(0 for _ in variables)}
            for m in mins:
                sums = set(prune_dominated([tuple(a + b for a, b in zip(s, q)) for s in sums for q in m]))
            for face in bounded_faces(list(sums)):
                forms = tuple(_initial_form(r, face.normal) for r in restricted)
                out.append(FaceTruncation(variables, face.normal, face.dim, forms))
    return out


def _trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _univariate_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd of two coefficient lists (index = power)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        r = list(a)
        while len(r) >= len(b):
            factor = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[i + shift] -= factor * c
            r = _trim(r)
        a, b = b, r
    if not a:
        return a
    return [c / a[-1] for c in a]


def _line_polynomial(form: P.Poly, direction: Tuple[int, ...]) -> List[Fraction]:
    """Write a form supported on a line p + Z v as x^p P(x^v); return P's coefficients."""
    pts = sorted(form)
    pivot = next(i for i, x in enumerate(direction) if x != 0)
    steps = {e: Fraction(e[pivot], direction[pivot]) for e in pts}
    base = min(steps.values())
    coeffs: Dict[int, Fraction] = {}
    for e, c in form.items():
        j = steps[e] - base
        assert j.denominator == 1
        coeffs[int(j)] = coeffs.get(int(j), 0) + c
    top = max(coeffs)
    return [coeffs.get(i, Fraction(0)) for i in range(top + 1)]


def _face_status(ft: FaceTruncation) -> str:
    if ft.face_dim == 0 or any(len(f) == 1 for f in ft.initial_forms):
        return NON_DEGENERATE
    if ft.face_dim >= 2:
        return UNKNOWN
    direction = None
    for f in ft.initial_forms:
        pts = sorted(f)
        if len(pts) >= 2:
            direction = primitive([a - b for a, b in zip(pts[-1], pts[0])])
            break
    common = None
    for f in ft.initial_forms:
        line = _line_polynomial(f, direction)
        common = line if common is None else _univariate_gcd(common, line)
    while common and common[0] == 0:
        common = common[1:]
    return DEGENERATE if len(common) > 1 else NON_DEGENERATE


@dataclass(frozen=True)
class NonDegeneracyReport:
    status: str
    faces: Tuple[Tuple[FaceTruncation, str], ...]
    reason: str = ""


def nondegeneracy_check(ps: PolySystem) -> NonDegeneracyReport:
    truncs = face_truncations(ps)
    if truncs is None:
        return NonDegeneracyReport(UNKNOWN, (), "not convenient")
    per_face = tuple((ft, _face_status(ft)) for ft in truncs)
    statuses = {s for _, s in per_face}
    if DEGENERATE in statuses:
        overall = DEGENERATE
    elif UNKNOWN in statuses:
        overall = UNKNOWN
    else:
        overall = NON_DEGENERATE
    return NonDegeneracyReport(overall, per_face)


def hypersurface_multiplicity(f: Dict[Tuple[int, ...], Fraction], point: Sequence) -> int:
    """Order of vanishing of a Laurent polynomial at a torus point.

    Returns the least |alpha| with a nonzero coefficient of z^alpha in
    f(q * (1 + z)); it is at most (#terms - 1) unless f is zero.
    """
    terms = [(tuple(e), Fraction(c)) for e, c in f.items() if c]
    if not terms:
        raise ValueError("zero polynomial has no multiplicity")
    q = [Fraction(x) for x in point]
    n = len(q)
    weighted = []
    for e, c in terms:
        w = c
        for qi, ai in zip(q, e):
            w *= qi**ai
        weighted.append((e, w))
    for d in range(len(terms)):
        for alpha in _exponents_of_degree(n, d):
            total = Fraction(0)
            for e, w in weighted:
                term = w
                for ai, k in zip(e, alpha):
                    term *= P.generalized_binomial(ai, k)
                total += term
            if total != 0:
                return d
    raise ValueError("polynomial vanishes identically after combining terms")


def _exponents_of_degree(n: int, d: int):
    for alpha in product(range(d + 1), repeat=n):
        if sum(alpha) == d:
            yield alpha


def certification_order(system: SparseSystem) -> int:
    """A truncation order that keeps every term the face certificates can touch.

    Staircase points lie in the box cut out by the axis intercepts, and each
    intercept is at most t_l, so total degree <= sum(t) suffices.
    """
    from .newton import sparsity_stats

    config, _ = normalize_to_orthant(system.config)
    stats = sparsity_stats(system.coeffs, config.points)
    return sum(stats.t) + 1


def system_nondegeneracy(system: SparseSystem) -> NonDegeneracyReport:
    """Non-degeneracy of the shifted system C . (q(1+z))^A at z = 0."""
    return nondegeneracy_check(shift_system(system, certification_order(system)))
