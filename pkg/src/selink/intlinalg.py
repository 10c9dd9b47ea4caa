"""Exact integer and rational linear algebra for small matrices.

Cone construction and lattice bookkeeping need Smith normal form with its
unimodular transforms, exact ranks, determinants, kernels and linear
solves.  Everything here works on plain Python ints and Fractions so no
precision is ever lost; the matrices involved are tiny (dimensions in the
single digits, at most a few dozen rows), so asymptotics are irrelevant
and clarity wins.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "smith_normal_form",
    "det_int",
    "rank_rational",
    "rref",
    "solve_exact",
    "kernel_vector",
    "primitive_vector",
]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Return (U, D, V) with U @ matrix @ V = D diagonal, U and V unimodular.

    The diagonal entries of D are the invariant factors d_1 | d_2 | ...,
    nonnegative, with zeros trailing.  Classic pivot-and-reduce algorithm;
    the transforms are carried along so callers can read off coordinates
    on the cokernel.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise DomainError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (
                    pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if not changed:
                break
        # Divisibility repair: d_t must divide the rest of the submatrix.
        stray = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t]:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            add_row(stray, t, 1)
            continue  # re-reduce at the same position
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V


def det_int(matrix) -> int:
    """Exact determinant of an integer matrix (Bareiss, fraction-free)."""
    A = [[int(x) for x in row] for row in matrix]
    n = len(A)
    if any(len(row) != n for row in A):
        raise DomainError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[-1][-1]


def rref(matrix):
    """Reduced row echelon form over Fractions; returns (rows, pivot_cols)."""
    M = [[Fraction(x) for x in row] for row in matrix]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        pv = M[r][col]
        M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank_rational(matrix) -> int:
    return len(rref(matrix)[1])


def solve_exact(matrix, rhs):
    """Solve A x = b exactly over the rationals.

    Returns ("unique", x) with x a tuple of Fractions, or
    ("inconsistent", None), or ("underdetermined", None).
    """
    mat = [list(row) for row in matrix]
    b = list(rhs)
    if len(mat) != len(b):
        raise DomainError("matrix and right-hand side differ in length")
    rows = [row + [bv] for row, bv in zip(mat, b)]
    ncols = len(rows[0]) - 1
    reduced, pivots = rref(rows)
    aug = ncols  # column index of the right-hand side
    if aug in pivots:
        return "inconsistent", None
    if len(pivots) < ncols:
        return "underdetermined", None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = reduced[r][aug]
    return "unique", tuple(x)


def kernel_vector(matrix, ncols: int):
    """A primitive integer spanning vector of a one-dimensional kernel.

    Returns None unless the kernel of the (rows x ncols) matrix has
    dimension exactly one.
    """
    reduced, pivots = rref(matrix)
    free = [j for j in range(ncols) if j not in pivots]
    if len(free) != 1:
        return None
    j0 = free[0]
    x = [Fraction(0)] * ncols
    x[j0] = Fraction(1)
    for r, col in enumerate(pivots):
        x[col] = -reduced[r][j0]
    scale = math.lcm(*(f.denominator for f in x))
    ints = [int(f * scale) for f in x]
    return primitive_vector(ints)


def primitive_vector(vec) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    ints = [int(x) for x in vec]
    g = math.gcd(*ints) if ints else 0
    if g == 0:
        raise DomainError("zero vector has no primitive form")
    return tuple(x // g for x in ints)
