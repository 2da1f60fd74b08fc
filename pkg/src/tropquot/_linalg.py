"""Exact linear algebra over Q and Z on plain tuples.

Everything here works on sequences of ``int`` / ``Fraction``; nothing is
ever converted to floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    """Rational basis of ``{x : row . x = 0 for all rows}``."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive factor to a primitive integer vector."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Some rational solution of ``rows . x = rhs`` (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def column_reduce(rows: Sequence[Sequence[int]], n: int) -> tuple[int, list[list[int]]]:
    """Unimodular column reduction.

    Returns ``(r, U)`` with ``U`` an ``n x n`` unimodular integer matrix
    (list of columns) such that ``A U`` has nonzero columns only among the
    first ``r``.  The last ``n - r`` columns of ``U`` are a Z-basis of the
    integer kernel of ``A`` and the whole of ``U`` is a Z-basis of Z^n.
    """
    a = [list(map(int, row)) for row in rows]
    u = [[int(i == j) for i in range(n)] for j in range(n)]  # u[j] is column j
    k = 0
    for row in a:
        if k == n:
            break
        while True:
            nz = [j for j in range(k, n) if row[j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(row[j]))
            _swap_cols(a, u, k, piv)
            done = True
            for j in range(k + 1, n):
                if row[j] != 0:
                    q = row[j] // row[k]
                    _addmul_col(a, u, j, k, -q)
                    if row[j] != 0:
                        done = False
            if done:
                k += 1
                break
    return k, u


def _swap_cols(a, u, i, j):
    if i == j:
        return
    for row in a:
        row[i], row[j] = row[j], row[i]
    u[i], u[j] = u[j], u[i]


def _addmul_col(a, u, dst, src, q):
    for row in a:
        row[dst] += q * row[src]
    u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]


def hermite_rows(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``."""
    m = [list(map(int, v)) for v in vectors]
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[p] = m[p], m[r]
            clean = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        clean = False
            if clean:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
    return [tuple(row) for row in m[:r]]


def lattice_kernel(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Hermite-normalized Z-basis of ``{x in Z^n : A x = 0}``."""
    r, u = column_reduce(rows, n)
    return hermite_rows(u[r:], n)


def integer_solve(cols: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Integer ``c`` with ``sum c_i cols_i = target``, or None if none exists."""
    n = len(target)
    k = len(cols)
    if k == 0:
        return [] if all(x == 0 for x in target) else None
    # rows of A are coordinates; A has k columns
    a = [[cols[j][i] for j in range(k)] for i in range(n)]
    r, u = column_reduce(a, k)
    # A U = H, with H lower echelon in its first r columns
    h = [[dot(a_row, u[j]) for j in range(r)] for a_row in a]
    y = [0] * r
    col = 0
    for i in range(n):
        resid = target[i] - sum(h[i][j] * y[j] for j in range(col))
        if col < r and h[i][col] != 0:
            if resid % h[i][col]:
                return None
            y[col] = resid // h[i][col]
            col += 1
        elif resid != 0:
            return None
    return [sum(u[j][i] * y[j] for j in range(r)) for i in range(k)]
