"""Small exact integer linear algebra used by the abelian instances."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def echelon(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer row echelon basis of the Z-span of ``rows``.

    Pivots are produced by Euclidean row reduction, so the returned rows span
    exactly the same lattice as the input.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis = []
    for col in range(ncols):
        while True:
            nz = [r for r in work if r[col]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: abs(r[col]))
            nxt = []
            for r in work:
                if r is p or not r[col]:
                    nxt.append(r)
                else:
                    q = r[col] // p[col]
                    nxt.append([a - q * b for a, b in zip(r, p)])
            work = nxt
        nz = [r for r in work if r[col]]
        if nz:
            pivot = nz[0]
            if pivot[col] < 0:
                pivot = [-a for a in pivot]
            basis.append(pivot)
            work = [r for r in work if r is not nz[0] and any(r)]
        if not work:
            break
    return basis


def in_lattice(gens: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Whether ``target`` is an integer combination of ``gens``."""
    t = list(target)
    basis = echelon(gens)
    by_col = {}
    for row in basis:
        lead = next(i for i, a in enumerate(row) if a)
        by_col[lead] = row
    for col in range(len(t)):
        if not t[col]:
            continue
        row = by_col.get(col)
        if row is None or t[col] % row[col]:
            return False
        q = t[col] // row[col]
        t = [a - q * b for a, b in zip(t, row)]
    return not any(t)


def rank(columns: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q of a list of rational vectors."""
    rows = []
    for c in columns:
        den = 1
        for a in c:
            den = lcm(den, Fraction(a).denominator)
        rows.append([int(Fraction(a) * den) for a in c])
    return len(echelon(rows))


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def solve_left(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]):
    """The unique rational ``Y`` with ``Y a = b``, or ``None``.

    ``a`` is ``r x n`` and ``b`` is ``s x n``; a unique solution needs the
    rows of ``a`` to be independent.
    """
    r = len(a)
    n = len(a[0]) if r else (len(b[0]) if b else 0)
    # Solve a^T y_k = b_k for each row b_k of b by Gauss-Jordan on [a^T | b^T].
    aug = [[Fraction(a[i][j]) for i in range(r)] + [Fraction(row[j]) for row in b] for j in range(n)]
    pivots = []
    row = 0
    for col in range(r):
        p = next((k for k in range(row, n) if aug[k][col] != 0), None)
        if p is None:
            return None
        aug[row], aug[p] = aug[p], aug[row]
        piv = aug[row][col]
        aug[row] = [v / piv for v in aug[row]]
        for k in range(n):
            if k != row and aug[k][col] != 0:
                c = aug[k][col]
                aug[k] = [v - c * w for v, w in zip(aug[k], aug[row])]
        pivots.append(row)
        row += 1
    # remaining equations must be consistent
    for k in range(row, n):
        if any(v != 0 for v in aug[k][r:]):
            return None
    return [[aug[i][r + s] for i in range(r)] for s in range(len(b))]
