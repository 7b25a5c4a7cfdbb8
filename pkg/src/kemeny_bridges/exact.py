"""Exact rational linear algebra on small dense matrices.

Matrices are numpy object arrays (or nested sequences) holding ``int`` or
``fractions.Fraction``.  Elimination is fraction-free (Bareiss) so the heavy
O(n^3) work runs on Python integers; only the back substitution touches
fractions.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

__all__ = ["bareiss_det", "solve", "inverse", "as_fraction_array", "to_float"]


def _integer_rows(rows):
    out = []
    for row in rows:
        scale = lcm(*(Fraction(a).denominator for a in row)) if row else 1
        out.append([int(Fraction(a) * scale) for a in row])
    return out


def bareiss_det(A) -> int:
    """Determinant of an integer matrix, computed without leaving the integers."""
    M = [[int(a) for a in row] for row in np.asarray(A, dtype=object).tolist()]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk, f = M[i], M[k], M[i][k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * pivot - f * Mk[j]) // prev
            Mi[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def solve(A, B) -> np.ndarray:
    """Solve ``A X = B`` exactly.  ``B`` may be a vector or a matrix.

    Raises ``ZeroDivisionError`` if ``A`` is singular.
    """
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    vector = B.ndim == 1
    if vector:
        B = B.reshape(-1, 1)
    n, p = A.shape[0], B.shape[1]
    if A.shape != (n, n) or B.shape[0] != n:
        raise ValueError(f"shape mismatch: A {A.shape}, B {B.shape}")
    M = _integer_rows(np.hstack([A, B]).tolist())
    width = n + p
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                raise ZeroDivisionError("singular matrix")
            M[k], M[swap] = M[swap], M[k]
        pivot = M[k][k]
        Mk = M[k]
        for i in range(k + 1, n):
            Mi = M[i]
            f = Mi[k]
            for j in range(k + 1, width):
                Mi[j] = (Mi[j] * pivot - f * Mk[j]) // prev
            Mi[k] = 0
        prev = pivot
    X = np.empty((n, p), dtype=object)
    for c in range(p):
        for i in range(n - 1, -1, -1):
            acc = Fraction(M[i][n + c])
            row = M[i]
            for j in range(i + 1, n):
                if row[j]:
                    acc -= row[j] * X[j, c]
            X[i, c] = acc / row[i]
    return X[:, 0] if vector else X


def inverse(A) -> np.ndarray:
    n = np.asarray(A).shape[0]
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    return solve(A, eye)


def as_fraction_array(a) -> np.ndarray:
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = Fraction(v)
    return out


def to_float(a) -> np.ndarray:
    return np.asarray(a, dtype=object).astype(float)
