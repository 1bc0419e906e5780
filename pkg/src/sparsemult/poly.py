"""Sparse multivariate polynomials and truncated power series.

A polynomial is a dict mapping exponent tuples to nonzero ``Fraction``
coefficients.  Truncation ``order=T`` keeps only terms of total degree < T.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Sequence, Tuple

Exponent = Tuple[int, ...]
Poly = Dict[Exponent, Fraction]


def constant(value, nvars: int) -> Poly:
    value = Fraction(value)
    return {(0,) * nvars: value} if value else {}


def variable(i: int, nvars: int) -> Poly:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): Fraction(1)}


def linear_form(const, coeffs: Sequence) -> Poly:
    """const + sum_i coeffs[i] * y_i."""
    nvars = len(coeffs)
    out = constant(const, nvars)
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if c:
            e = [0] * nvars
            e[i] = 1
            out[tuple(e)] = c
    return out


def degree(e: Exponent) -> int:
    return sum(e)


def add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    scale = Fraction(scale)
    for e, c in q.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def mul(p: Poly, q: Poly, order: int | None = None) -> Poly:
    out: Dict[Exponent, Fraction] = {}
    for e1, c1 in p.items():
        d1 = sum(e1)
        if order is not None and d1 >= order:
            continue
        for e2, c2 in q.items():
            if order is not None and d1 + sum(e2) >= order:
                continue
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def power(p: Poly, k: int, nvars: int, order: int | None = None) -> Poly:
    result = constant(1, nvars)
    base = p
    while k:
        if k & 1:
            result = mul(result, base, order)
        k >>= 1
        if k:
            base = mul(base, base, order)
    return result


def truncate(p: Poly, order: int) -> Poly:
    return {e: c for e, c in p.items() if sum(e) < order}


def scale(p: Poly, factor) -> Poly:
    factor = Fraction(factor)
    if not factor:
        return {}
    return {e: c * factor for e, c in p.items()}


def order_of(p: Poly) -> int | None:
    """Lowest total degree of a term, or None for the zero polynomial."""
    if not p:
        return None
    return min(sum(e) for e in p)


def generalized_binomial(top, k: int) -> Fraction:
    """binom(top, k) = top (top-1) ... (top-k+1) / k! for rational top."""
    top = Fraction(top)
    num = Fraction(1)
    for i in range(k):
        num *= top - i
    return num / factorial(k)


def shifted_monomial(exponent: Sequence[int], order: int | None = None) -> Poly:
    """Expand (z+1)^a = prod_i sum_k binom(a_i, k) z_i^k, truncated below total degree ``order``.

    Negative or fractional exponents give infinite series, so ``order`` is
    required then.
    """
    nvars = len(exponent)
    factors = []
    for a in exponent:
        a = Fraction(a)
        if a >= 0 and a.denominator == 1:
            top = int(a) if order is None else min(int(a), order - 1)
        else:
            if order is None:
                raise ValueError("negative or fractional exponent needs a truncation order")
            top = order - 1
        factors.append([(k, generalized_binomial(a, k)) for k in range(top + 1)])
    out = {(): Fraction(1)}
    for f in factors:
        new = {}
        for e, c in out.items():
            d = sum(e)
            for k, b in f:
                if order is not None and d + k >= order:
                    break
                new[e + (k,)] = c * b
        out = new
    return {e: c for e, c in out.items() if c} if nvars else out


def minimal_exponents(support: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    """Minimal elements of a set of exponents under the componentwise order."""
    pts = sorted(set(support), key=lambda e: (sum(e), e))
    found = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in found):
            found.append(p)
    return tuple(sorted(found))


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def evaluate(p: Poly, point: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = c
        for x, a in zip(point, e):
            term *= Fraction(x) ** a
        total += term
    return total


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    if not p:
        return "0"
    nvars = len(next(iter(p)))
    names = names or [f"y{i + 1}" for i in range(nvars)]
    parts = []
    for e in sorted(p, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = p[e]
        mono = "*".join(
            (names[i] if a == 1 else f"{names[i]}^{a}") for i, a in enumerate(e) if a
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
