"""Exact integer linear algebra on lists of Python ints.

Matrices are lists of rows.  Only what the Dold-Kan machinery needs:
column Hermite reduction with a unimodular transform, kernels,
complements of saturated sublattices and exact solving.
"""
from __future__ import annotations

from fractions import Fraction


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def column_hermite(A, ncols):
    """Return ``(H, U)`` with ``A U = H``, ``U`` unimodular and ``H`` in column echelon form.

    ``H``'s nonzero columns come first; their count is the rank.
    """
    rows = len(A)
    H = [row[:] for row in A]
    U = identity(ncols)
    pivot_col = 0
    for r in range(rows):
        if pivot_col >= ncols:
            break
        # gcd-combine columns pivot_col.. on row r
        while True:
            nz = [c for c in range(pivot_col, ncols) if H[r][c] != 0]
            if not nz:
                break
            c_min = min(nz, key=lambda c: abs(H[r][c]))
            _swap_cols(H, U, pivot_col, c_min)
            done = True
            for c in range(pivot_col + 1, ncols):
                if H[r][c]:
                    q = H[r][c] // H[r][pivot_col]
                    _addmul_col(H, U, c, pivot_col, -q)
                    if H[r][c]:
                        done = False
            if done:
                break
        if H[r][pivot_col] != 0:
            if H[r][pivot_col] < 0:
                _neg_col(H, U, pivot_col)
            pivot_col += 1
    return H, U, pivot_col


def _swap_cols(H, U, a, b):
    if a == b:
        return
    for row in H:
        row[a], row[b] = row[b], row[a]
    for row in U:
        row[a], row[b] = row[b], row[a]


def _addmul_col(H, U, dst, src, q):
    for row in H:
        row[dst] += q * row[src]
    for row in U:
        row[dst] += q * row[src]


def _neg_col(H, U, c):
    for row in H:
        row[c] = -row[c]
    for row in U:
        row[c] = -row[c]


def kernel_and_complement(A, ncols):
    """Split ``Z^ncols = ker A (+) C``.  Returns ``(rank, K, C)`` as lists of column vectors."""
    H, U, rank = column_hermite(A, ncols)
    cols = transpose(U) if U else []
    return rank, cols[rank:], cols[:rank]


def rank(A, ncols):
    return column_hermite(A, ncols)[2]


def solve_exact(A, b):
    """Solve ``A x = b`` over the rationals; returns a solution list or None.

    Free variables are set to zero.
    """
    rows = len(A)
    ncols = len(A[0]) if rows else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(rows)]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = M[i][ncols]
    return x


def solve_integer(A, b):
    """Exact solution that must be integral; raises ValueError otherwise."""
    x = solve_exact(A, b)
    if x is None:
        raise ValueError("system has no solution")
    if any(v.denominator != 1 for v in x):
        raise ValueError("solution is not integral")
    return [int(v) for v in x]


def smith_diagonal(A, ncols):
    """Invariant factors of ``A`` (nonzero ones), via sympy."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form
    from sympy.polys.domains import ZZ

    if not A or ncols == 0:
        return []
    S = smith_normal_form(Matrix(A), domain=ZZ)
    out = []
    for i in range(min(S.shape)):
        if S[i, i] != 0:
            out.append(abs(int(S[i, i])))
    return out
