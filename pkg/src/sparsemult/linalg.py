"""Exact linear algebra over the rationals and the integers.

Matrices are plain sequences of rows.  Everything returned is a tuple of
tuples of ``Fraction`` (rational routines) or ``int`` (lattice routines),
so results can be hashed and compared directly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

try:
    import flint
except ImportError:  # pragma: no cover - the dependency is declared
    flint = None

Row = Tuple[Fraction, ...]
Matrix = Tuple[Row, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


def as_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def as_int_matrix(rows: Sequence[Sequence]) -> IntMatrix:
    out = []
    for row in rows:
        new_row = []
        for x in row:
            q = Fraction(x)
            if q.denominator != 1:
                raise ValueError(f"entry {x} is not an integer")
            new_row.append(q.numerator)
        out.append(tuple(new_row))
    return tuple(out)


def shape(rows: Sequence[Sequence]) -> Tuple[int, int]:
    if len(rows) == 0:
        return 0, 0
    return len(rows), len(rows[0])


def transpose(rows: Sequence[Sequence]) -> tuple:
    if len(rows) == 0:
        return ()
    return tuple(zip(*rows))


def matmul(left: Sequence[Sequence], right: Sequence[Sequence]) -> tuple:
    cols = transpose(right)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in left)


def identity(size: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def _clear_denominators(rows: Sequence[Sequence]) -> Tuple[List[List[int]], Fraction]:
    """Scale each row to integers; return the integer rows and the product of scales."""
    out = []
    scale = Fraction(1)
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for q in fr:
            lcm = lcm * q.denominator // gcd(lcm, q.denominator)
        out.append([int(q * lcm) for q in fr])
        scale *= lcm
    return out, scale


def _bareiss(work: List[List[int]], ncols: int) -> Tuple[int, int]:
    """In-place fraction-free elimination; returns (rank, signed last pivot).

    The second value equals the determinant when the matrix is square and
    of full rank.
    """
    nrows = len(work)
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            work[r], work[pivot] = work[pivot], work[r]
            sign = -sign
        prow = work[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = work[i]
            a = row[c]
            if a == 0:
                if p != prev:
                    for j in range(c + 1, ncols):
                        row[j] = row[j] * p // prev
                continue
            for j in range(c + 1, ncols):
                row[j] = (row[j] * p - a * prow[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free (Bareiss) elimination."""
    nrows, ncols = shape(rows)
    if nrows == 0 or ncols == 0:
        return 0
    work, _ = _clear_denominators(rows)
    return _bareiss(work, ncols)[0]


def rank_large(rows: Sequence[Sequence]) -> int:
    """Rank over Q for big matrices, via FLINT's exact integer rank when available."""
    nrows, ncols = shape(rows)
    if nrows == 0 or ncols == 0:
        return 0
    work, _ = _clear_denominators(rows)
    if flint is None or nrows * ncols < 400:
        return _bareiss(work, ncols)[0]
    return flint.fmpz_mat(work).rank()


def determinant(rows: Sequence[Sequence]) -> Fraction:
    nrows, ncols = shape(rows)
    if nrows != ncols:
        raise ValueError("determinant of a non-square matrix")
    if nrows == 0:
        return Fraction(1)
    work, scale = _clear_denominators(rows)
    r, last = _bareiss(work, ncols)
    if r < nrows:
        return Fraction(0)
    return Fraction(last) / scale


def rref(rows: Sequence[Sequence]) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    work = [[Fraction(x) for x in row] for row in rows]
    nrows, ncols = shape(work)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rational_kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Columns spanning the right kernel over Q, returned as a (cols x nullity) matrix.

    ``ncols`` is needed only when ``rows`` is empty.
    """
    if ncols is None:
        ncols = shape(rows)[1]
    reduced, pivots = rref(rows) if len(rows) else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    if not basis:
        return tuple(() for _ in range(ncols))
    return transpose(basis)


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Tuple[Fraction, ...] | None:
    """One rational solution of rows * x = rhs, or None when inconsistent."""
    ncols = shape(rows)[1]
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def smith_normal_form(rows: Sequence[Sequence]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (S, U, V) with U * M * V = S diagonal, U and V unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    work = [list(row) for row in as_int_matrix(rows)]
    nrows, ncols = shape(work)
    left = [list(row) for row in identity(nrows)]
    right = [list(row) for row in identity(ncols)]

    def swap_rows(i, j):
        work[i], work[j] = work[j], work[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in work:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        work[dst] = [a + k * b for a, b in zip(work[dst], work[src])]
        left[dst] = [a + k * b for a, b in zip(left[dst], left[src])]

    def add_col(dst, src, k):
        for row in work:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    for t in range(min(nrows, ncols)):
        entries = [(abs(work[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if work[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, nrows):
                if work[i][t]:
                    add_row(i, t, -(work[i][t] // work[t][t]))
                    if work[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, ncols):
                if work[t][j]:
                    add_col(j, t, -(work[t][j] // work[t][t]))
                    if work[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if work[i][j] % work[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if work[t][t] < 0:
            work[t] = [-a for a in work[t]]
            left[t] = [-a for a in left[t]]
    return (
        tuple(tuple(r) for r in work),
        tuple(tuple(r) for r in left),
        tuple(tuple(r) for r in right),
    )


def lattice_kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> IntMatrix:
    """Columns forming a Z-basis of the saturated integer kernel (cols x nullity)."""
    if ncols is None:
        ncols = shape(rows)[1]
    if len(rows) == 0:
        return identity(ncols)
    diag, _, right = smith_normal_form(rows)
    r = sum(1 for t in range(min(shape(diag))) if diag[t][t] != 0)
    return tuple(tuple(row[r:]) for row in right)


def primitive(vec: Sequence) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in vec]
    lcm = 1
    for q in fr:
        lcm = lcm * q.denominator // gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)
