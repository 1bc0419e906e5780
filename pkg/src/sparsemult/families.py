"""Explicit high-multiplicity families, multiplicity bounds and circuit constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from . import poly as P
from .config import SparseSystem, SupportConfig, higher_matrix, normalize_to_orthant
from .errors import CodimNotOne, DuplicateValue, NotFound, ValidationError, VanishesOnAxis
from .gale import GaleData, gale_data, gale_system
from .linalg import (
    as_int_matrix,
    lattice_kernel_basis,
    matmul,
    primitive,
    rank,
    rational_kernel_basis,
    transpose,
)
from .newton import (
    Staircase,
    VanishingSumEvaluator,
    mixed_covolume,
    sparsity_stats,
    staircase,
)
from .oracle import (
    NON_DEGENERATE,
    hypersurface_multiplicity,
    nondegeneracy_check,
    system_multiplicity,
    system_nondegeneracy,
)


def moment_point(value, n: int) -> tuple:
    return tuple(Fraction(value) ** i for i in range(1, n + 1))


def f_dn(d: int, n: int) -> Dict[Tuple[int, ...], Fraction]:
    """sum_k (-1)^k binom(d, k) x1^k x2^(k^2) ... xn^(k^n)."""
    if d < 0 or n < 1:
        raise ValueError("need d >= 0 and n >= 1")
    return {tuple(k**i for i in range(1, n + 1)): Fraction((-1) ** k * comb(d, k)) for k in range(d + 1)}


def witness_coefficients(n: int, m: int) -> Tuple[Tuple[int, ...], ...]:
    """Row i (1-based) holds (-1)^j binom(m+i, j) for j = 0..n+m."""
    return tuple(
        tuple((-1) ** j * P.binomial(m + i, j) for j in range(n + m + 1)) for i in range(1, n + 1)
    )


def moment_matrix(n: int, m: int) -> Tuple[Tuple[int, ...], ...]:
    """The (n+1) x (n+m+1) matrix with entry (i, j) = j^i."""
    return tuple(tuple(j**i for j in range(n + m + 1)) for i in range(n + 1))


@dataclass(frozen=True)
class WitnessSystem:
    n: int
    m: int
    C: Tuple[Tuple[int, ...], ...]
    A: Tuple[Tuple[int, ...], ...]
    polys: Tuple[Dict[Tuple[int, ...], Fraction], ...]
    system: SparseSystem = field(repr=False)


def witness_system(n: int, m: int) -> WitnessSystem:
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    C = witness_coefficients(n, m)
    A = moment_matrix(n, m)
    dual = moment_matrix(m, n)
    if any(x for row in matmul(C, transpose(dual)) for x in row):
        raise ValidationError("C A^t = 0", "witness coefficients are not Gale dual to the moment matrix")
    config = SupportConfig(tuple(tuple(j**i for i in range(1, n + 1)) for j in range(n + m + 1)))
    polys = tuple(f_dn(m + k, n) for k in range(1, n + 1))
    return WitnessSystem(n, m, C, A, polys, SparseSystem(config, C))


def stirling_sum(ell: int, k: int) -> int:
    """sum_q (-1)^q binom(ell, q) q^k, checked against k! [x^k] (1 - e^x)^ell."""
    if ell < 0 or k < 0:
        raise ValueError("need ell, k >= 0")
    direct = sum((-1) ** q * comb(ell, q) * q**k for q in range(ell + 1))
    series = _one_minus_exp_coefficient(ell, k)
    if direct != series:
        raise AssertionError(f"stirling_sum routes disagree at ({ell}, {k})")
    return direct


def _one_minus_exp_coefficient(ell: int, k: int) -> int:
    base = [Fraction(0)] + [Fraction(-1, factorial(i)) for i in range(1, k + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * k
    for _ in range(ell):
        acc = [sum(acc[i] * base[d - i] for i in range(d + 1)) for d in range(k + 1)]
    value = acc[k] * factorial(k)
    assert value.denominator == 1
    return int(value)


def weighted_degree(alpha: Sequence[int]) -> int:
    """|alpha|' = sum_j j * alpha_j."""
    return sum((j + 1) * a for j, a in enumerate(alpha))


def witness_diagram_prediction(n: int, m: int, k: int) -> Staircase:
    """Minimal alpha with |alpha|' >= m + k; axis i is met at ceil((m+k)/i)."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    target = m + k
    intercepts = tuple(-(-target // i) for i in range(1, n + 1))
    box = sorted(product(*(range(b + 1) for b in intercepts)), key=lambda a: (sum(a), a))
    minimal: List[Tuple[int, ...]] = []
    for alpha in box:
        if weighted_degree(alpha) < target:
            continue
        if any(all(x <= y for x, y in zip(q, alpha)) for q in minimal):
            continue
        minimal.append(alpha)
    return Staircase(n, tuple(sorted(minimal)), intercepts)


def witness_diagram_coefficients(n: int, m: int, k: int, points: Sequence[Tuple[int, ...]]):
    """Predicted coefficient stirling_sum(m+k, |alpha|') / alpha! at each given point."""
    out = {}
    for alpha in points:
        denom = math.prod(factorial(a) for a in alpha)
        out[tuple(alpha)] = Fraction(stirling_sum(m + k, weighted_degree(alpha)), denom)
    return out


@dataclass(frozen=True)
class BoundsReport:
    kouchnirenko: int | None
    gamma_covolume: Fraction | None
    coarse: int
    diag: int | None
    box: int | None
    planar: int | None
    dual_kouchnirenko: int | None
    dual_gamma_covolume: Fraction | None
    dual_coarse: int | None
    dual_diag: int | None
    dual_planar: int | None
    conjectured: int
    gabrielov: int
    absent: Dict[str, str]

    def applicable(self) -> Dict[str, object]:
        names = (
            "kouchnirenko", "gamma_covolume", "coarse", "diag", "box", "planar",
            "dual_kouchnirenko", "dual_gamma_covolume", "dual_coarse", "dual_diag", "dual_planar",
        )
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}


def _has_diagonal_block(rows: Sequence[Sequence]) -> bool:
    """Whether some columns form an invertible diagonal square block (rows x rows)."""
    size = len(rows)
    found = set()
    for col in transpose(rows):
        nonzero = [i for i, x in enumerate(col) if x]
        if len(nonzero) == 1:
            found.add(nonzero[0])
    return len(found) == size


def _gamma_covolume(stats) -> Fraction | None:
    if any(g is None for g in stats.gammas):
        return None
    return mixed_covolume(*stats.gammas)


def bounds_report(system: SparseSystem, gd: GaleData | None = None) -> BoundsReport:
    config, _ = normalize_to_orthant(system.config)
    n, m, N = config.n, config.m, config.N
    absent: Dict[str, str] = {}
    stats = sparsity_stats(system.coeffs, config.points)
    convenient = all(min(r) >= 0 for r in stats.rho)
    kouch = gamma = None
    if not convenient:
        absent["kouchnirenko"] = absent["gamma_covolume"] = "shifted system is not convenient"
    elif system_nondegeneracy(system).status != NON_DEGENERATE:
        absent["kouchnirenko"] = absent["gamma_covolume"] = "shifted system is not certified non-degenerate"
    else:
        kouch = min(math.prod(stats.s), math.prod(stats.t))
        gamma = _gamma_covolume(stats)
    diag = None
    if _has_diagonal_block(system.coeffs):
        diag = (m + 1) ** n
    else:
        absent["diag"] = "no invertible diagonal n x n submatrix in C"
    box = None
    if config.is_lattice:
        box = math.prod(max(p[i] for p in config.points) for i in range(n))
    else:
        absent["box"] = "configuration is not a lattice configuration"
    planar = (m + 1) * (m + 2) if n == 2 else None
    if planar is None:
        absent["planar"] = "dimension is not 2"

    dual_kouch = dual_gamma = dual_coarse = dual_diag = dual_planar = None
    if m == 0:
        for key in ("dual_kouchnirenko", "dual_gamma_covolume", "dual_coarse", "dual_diag", "dual_planar"):
            absent[key] = "codimension 0 has no Gale side"
    else:
        if gd is None:
            gd = gale_data(config, system.coeffs)
        dual_stats = sparsity_stats(transpose(gd.B), gd.deltas)
        if not all(min(r) >= 0 for r in dual_stats.rho):
            absent["dual_kouchnirenko"] = absent["dual_gamma_covolume"] = "Gale system is not convenient"
        elif nondegeneracy_check(gale_system(gd).as_poly_system()).status != NON_DEGENERATE:
            absent["dual_kouchnirenko"] = absent["dual_gamma_covolume"] = (
                "Gale system is not certified non-degenerate"
            )
        else:
            dual_kouch = min(math.prod(dual_stats.s), math.prod(dual_stats.t))
            dual_gamma = _gamma_covolume(dual_stats)
        dual_coarse = (n + m) ** m
        if _has_diagonal_block(transpose(gd.B)):
            dual_diag = (n + 1) ** m
        else:
            absent["dual_diag"] = "no invertible diagonal m x m submatrix in B"
        if m == 2:
            dual_planar = (n + 1) * (n + 2)
        else:
            absent["dual_planar"] = "codimension is not 2"
    return BoundsReport(
        kouchnirenko=kouch,
        gamma_covolume=gamma,
        coarse=(n + m) ** n,
        diag=diag,
        box=box,
        planar=planar,
        dual_kouchnirenko=dual_kouch,
        dual_gamma_covolume=dual_gamma,
        dual_coarse=dual_coarse,
        dual_diag=dual_diag,
        dual_planar=dual_planar,
        conjectured=comb(n + m, n),
        gabrielov=2 ** comb(N, 2) * (n + 1) ** N,
        absent=absent,
    )


@dataclass(frozen=True)
class HypersurfaceBounds:
    sigma: int
    b: int
    mu0_bracket: Tuple[int, int]


def sigma_bound(n: int, m: int) -> int:
    """Largest k >= 1 with binom(n+k-1, n) <= n+m."""
    k = 1
    while comb(n + k, n) <= n + m:
        k += 1
    return k


def hypersurface_bounds(n: int, m: int) -> HypersurfaceBounds:
    """sigma(n, m), b(n, m) = 1 + ceil(m/n), and integers bracketing the positive root mu_0."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    sigma = sigma_bound(n, m)
    b = 1 + -(-m // n)
    exact = comb(n + sigma - 1, n) == n + m
    return HypersurfaceBounds(sigma, b, (sigma, sigma if exact else sigma + 1))


def _order_matrix(config: SupportConfig, k: int):
    if k == 0:
        return (tuple(1 for _ in config.points),)
    return higher_matrix(config, k)


@dataclass(frozen=True)
class HypersurfaceMaximum:
    multiplicity: int
    witness: Tuple[int, ...]
    full_row_rank: bool


def max_hypersurface_mult(config: SupportConfig) -> HypersurfaceMaximum:
    """Largest multiplicity at 1 of a polynomial supported on the configuration.

    A coefficient vector c gives order >= k exactly when c is in the kernel of
    the matrix of monomials of degree <= k-1 evaluated on the points.
    """
    config, _ = normalize_to_orthant(config)
    k = 1
    kernel = rational_kernel_basis(_order_matrix(config, 0))
    while True:
        nxt = rational_kernel_basis(_order_matrix(config, k))
        if not nxt or not nxt[0]:
            break
        kernel = nxt
        k += 1
    witness = primitive([row[0] for row in kernel])
    f = {p: Fraction(c) for p, c in zip(config.points, witness) if c}
    verified = hypersurface_multiplicity(f, (1,) * config.n)
    if verified != k:
        raise AssertionError(f"witness has multiplicity {verified}, expected {k}")
    lower = _order_matrix(config, k - 1)
    return HypersurfaceMaximum(k, witness, rank(lower) == len(lower))


def cyclic_config(d_values: Sequence, n: int) -> SupportConfig:
    """Points (d, d^2, ..., d^n) on the moment curve."""
    values = [Fraction(d) for d in d_values]
    if len(set(values)) != len(values):
        raise DuplicateValue("moment curve parameters must be distinct")
    return SupportConfig(tuple(moment_point(d, n) for d in values))


def max_mult_circuit_system(d_values: Sequence) -> SparseSystem:
    """A circuit system of multiplicity n+1 at 1, n = len(d_values) - 2.

    C is the transpose of a kernel basis of the 2-row matrix (1, ..., 1),
    (0, d_1 - d_0, ...), with rows scaled to integers.
    """
    values = [Fraction(d) for d in d_values]
    if len(set(values)) != len(values):
        raise DuplicateValue("moment curve parameters must be distinct")
    n = len(values) - 2
    if n < 1:
        raise ValueError("need at least three parameters")
    shifted = [d - values[0] for d in values]
    config = cyclic_config(shifted, n)
    kernel = rational_kernel_basis([[1] * len(shifted), shifted])
    C = tuple(primitive(col) for col in transpose(kernel))
    return SparseSystem(config, C)


def verify_cyclic(config: SupportConfig, d_values: Sequence) -> bool:
    """Whether the distinct values d certify that a circuit is affinely a cyclic configuration."""
    if config.m != 1:
        raise CodimNotOne(f"configuration has codimension {config.m}")
    values = [Fraction(d) for d in d_values]
    if len(set(values)) != len(values):
        raise DuplicateValue("certificate values must be distinct")
    if len(values) != config.N:
        raise ValueError("one certificate value per point is required")
    kernel = rational_kernel_basis(config.matrix)
    lam = [row[0] for row in kernel]
    return all(sum(l * d**i for l, d in zip(lam, values)) == 0 for i in range(1, config.n + 1))


def _shifted_staircases(system: SparseSystem, coeffs) -> Tuple[Staircase, ...] | None:
    config, _ = normalize_to_orthant(system.config)
    out = []
    for row in coeffs:
        try:
            out.append(staircase(VanishingSumEvaluator(row, config.points)))
        except VanishesOnAxis:
            return None
    return tuple(out)


def _constraint_rows(points, st: Staircase):
    """Rows a^alpha for every alpha of the box lying strictly under the staircase."""
    rows = []
    for alpha in product(*(range(b + 1) for b in st.axis_intercepts)):
        if any(all(x >= y for x, y in zip(alpha, q)) for q in st.minimal_points):
            continue
        row = []
        for p in points:
            val = Fraction(1)
            for x, e in zip(p, alpha):
                val *= Fraction(x) ** e
            row.append(val)
        rows.append(row)
    return rows


def _lattice_candidates(basis: Sequence[Tuple[int, ...]], height: int) -> Iterator[Tuple[int, ...]]:
    """Integer combinations of the basis, by growing max |multiplier|."""
    size = len(basis)
    for h in range(1, height + 1):
        for mult in product(range(-h, h + 1), repeat=size):
            if max(abs(t) for t in mult) != h:
                continue
            vec = tuple(sum(t * b[j] for t, b in zip(mult, basis)) for j in range(len(basis[0])))
            if any(vec):
                yield vec


def integerize_coefficients(
    system: SparseSystem, max_height: int = 10**4, max_candidates: int = 10**5
) -> Tuple[SparseSystem, object]:
    """An integer coefficient matrix with the same staircases and a non-degeneracy certificate.

    Each row is searched inside the integer kernel of the constraints that
    force its coefficients under the staircase to vanish; the primitive
    integer multiple of the given row is tried first.
    """
    if any(q != 1 for q in system.base_point):
        raise ValidationError("base point 1", "integerization works at the point 1")
    report = system_nondegeneracy(system)
    if report.status != NON_DEGENERATE:
        raise ValidationError(
            "convenient and non-degenerate", f"non-degeneracy status is {report.status}"
        )
    targets = _shifted_staircases(system, system.coeffs)
    if targets is None:
        raise ValidationError("convenient and non-degenerate", "shifted system is not convenient")
    config, _ = normalize_to_orthant(system.config)
    per_row: List[List[Tuple[int, ...]]] = []
    for row, st in zip(system.coeffs, targets):
        first = primitive(row)
        rows = _constraint_rows(config.points, st)
        basis = transpose(lattice_kernel_basis(_integer_rows(rows), config.N)) if rows else None
        options = [first]
        if basis:
            for vec in _lattice_candidates(basis, 2):
                if len(options) >= 16:
                    break
                options.append(primitive(vec))
        per_row.append(options)
    tried = 0
    for choice in product(*per_row):
        tried += 1
        if tried > max_candidates:
            break
        if max(abs(x) for row in choice for x in row) > max_height:
            continue
        if rank(choice) != system.n:
            continue
        candidate = SparseSystem(system.config, choice, system.base_point)
        if any(v != 0 for v in candidate.evaluate(candidate.base_point)):
            continue
        if _shifted_staircases(candidate, candidate.coeffs) != targets:
            continue
        if system_nondegeneracy(candidate).status != NON_DEGENERATE:
            continue
        return candidate, system_multiplicity(candidate)
    raise NotFound(f"no integer representative among {tried} candidates")


def _integer_rows(rows):
    from .config import as_integer_rows

    return as_int_matrix(as_integer_rows(rows))
