"""Exact integer matrices.

Matrices are immutable tuples of tuples of Python ints, so they hash,
compare, and never overflow.  All operations are pure functions; nothing
here is clever, it just has to be *right*.
"""

from __future__ import annotations

from typing import Sequence

IntegerMatrix = tuple  # tuple[tuple[int, ...], ...]


def freeze(rows: Sequence[Sequence[int]]) -> IntegerMatrix:
    """Normalize any nested sequence of ints into the canonical tuple form."""
    M = tuple(tuple(int(x) for x in row) for row in rows)
    d = len(M)
    if any(len(row) != d for row in M):
        raise ValueError("matrix must be square")
    return M


def identity(d: int) -> IntegerMatrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def mat_mul(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    d = len(A)
    Bt = tuple(zip(*B))
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A
    )


def mat_vec(A: IntegerMatrix, v: Sequence[int]) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def mat_add(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(c: int, A: IntegerMatrix) -> IntegerMatrix:
    return tuple(tuple(c * a for a in row) for row in A)


def transpose(A: IntegerMatrix) -> IntegerMatrix:
    return tuple(zip(*A))


def mat_pow(A: IntegerMatrix, n: int) -> IntegerMatrix:
    """Exact A**n by binary powering, n >= 0.  A**0 is the identity."""
    if n < 0:
        raise ValueError("n must be >= 0")
    A = freeze(A)
    result = identity(len(A))
    base = A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if n > 1 else base
        n >>= 1
    return result


def det(A: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    d = len(A)
    if d == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(d - 1):
        if M[k][k] == 0:
            for i in range(k + 1, d):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[d - 1][d - 1]


def is_sl(A: IntegerMatrix) -> bool:
    """Verified det == +1.  Never assume; always check."""
    return det(A) == 1


def adjugate(A: IntegerMatrix) -> IntegerMatrix:
    """Exact adjugate (transpose of cofactors): A * adj(A) = det(A) * I."""
    d = len(A)
    if d == 1:
        return ((1,),)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            minor = tuple(
                tuple(A[r][c] for c in range(d) if c != i)
                for r in range(d) if r != j
            )
            row.append((-1) ** (i + j) * det(minor))
        rows.append(tuple(row))
    return tuple(rows)


def inverse_unimodular(A: IntegerMatrix) -> IntegerMatrix:
    """Exact integer inverse for |det| = 1 matrices."""
    dA = det(A)
    if dA not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {dA})")
    adj = adjugate(A)
    if dA == 1:
        return adj
    return mat_scale(-1, adj)


def char_poly(A: IntegerMatrix) -> tuple:
    """Monic characteristic polynomial det(tI - A), low-degree-first coefficients.

    Uses the Faddeev-LeVerrier recurrence; every division is exact over
    the integers, so the result is exact.  Cross-checked against minors
    expansion for d <= 4 in the test suite.
    """
    d = len(A)
    A = freeze(A)
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    N = identity(d)
    for k in range(1, d + 1):
        AN = mat_mul(A, N)
        tr = sum(AN[i][i] for i in range(d))
        if tr % k != 0:
            # cannot happen for integer matrices; guard against logic rot
            raise ArithmeticError("non-integer trace quotient in characteristic polynomial")
        c = -(tr // k)
        coeffs[d - k] = c
        N = mat_add(AN, tuple(tuple(c * int(i == j) for j in range(d)) for i in range(d)))
    return tuple(coeffs)
