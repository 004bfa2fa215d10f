"""Exact rank and determinants.

Integer matrices use fraction-free (Bareiss) elimination so every
intermediate stays an integer minor; general fields fall back to ordinary
Gaussian elimination on exact elements.
"""

from __future__ import annotations

import math
from typing import Sequence

from .fields import MPQ

__all__ = ["integer_rank", "field_rank", "rank", "clear_denominators", "kernel_support", "bareiss_det", "det"]


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (Bareiss elimination)."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        row_r = M[r]
        for i in range(r + 1, nrows):
            row = M[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - a * row_r[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def field_rank(rows: Sequence[Sequence]) -> int:
    """Rank by Gaussian elimination over any exact field (elements support + - * /)."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        row_r = M[r]
        for i in range(r + 1, nrows):
            a = M[i][c]
            if a:
                f = a * inv
                row = M[i]
                for j in range(c, ncols):
                    row[j] = row[j] - f * row_r[j]
        r += 1
        if r == nrows:
            break
    return r


def clear_denominators(vec: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector (rank-preserving)."""
    den = 1
    for x in vec:
        d = int(x.denominator) if isinstance(x, MPQ) else 1
        den = den * d // math.gcd(den, d)
    out = [int(x * den) for x in vec]
    g = 0
    for x in out:
        g = math.gcd(g, x)
    if g > 1:
        out = [x // g for x in out]
    return out


def rank(rows: Sequence[Sequence]) -> int:
    if rows and rows[0] and all(isinstance(x, int) for r in rows for x in r):
        return integer_rank(rows)
    if rows and rows[0] and all(isinstance(x, (int, MPQ)) for r in rows for x in r):
        return integer_rank([clear_denominators(r) for r in rows])
    return field_rank(rows)


def kernel_support(vectors: Sequence[Sequence]) -> tuple[int, set[int]]:
    """Rank of a list of vectors and the union of supports of their dependencies.

    Returns ``(rank, support)`` where support holds the indices of vectors that
    appear with nonzero coefficient in some linear dependency.  A family of k
    vectors is a circuit iff rank == k-1 and support is everything.
    """
    k = len(vectors)
    if k == 0:
        return 0, set()
    # row-reduce the transpose augmented with identity: track combinations
    M = [list(v) + [1 if j == i else 0 for j in range(k)] for i, v in enumerate(vectors)]
    m = len(vectors[0])
    if all(isinstance(x, int) for v in vectors for x in v):
        M = [[MPQ(x) for x in row] for row in M]
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, k):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        for i in range(r + 1, k):
            a = M[i][c]
            if a:
                f = a * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    support = set()
    for i in range(r, k):
        for j in range(k):
            if M[i][m + j]:
                support.add(j)
    return r, support


def bareiss_det(M: Sequence[Sequence], divide) -> object:
    """Determinant over an integral domain given an exact-division callback."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return A[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                A[i][j] = num if prev is None else divide(num, prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def det(M: Sequence[Sequence]):
    """Cofactor expansion; intended for the small polynomial matrices of NM computations."""
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        a = M[0][j]
        if not a:
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        t = a * det(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    if total is None:
        return M[0][0] * 0
    return total
