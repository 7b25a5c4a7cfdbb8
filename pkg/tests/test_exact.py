from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kemeny_bridges import exact as xla

small_ints = st.integers(-6, 6)


def _matrix(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def _fraction_det(rows):
    # plain Gaussian elimination over the rationals, as a reference
    M = [[Fraction(a) for a in r] for r in rows]
    n, det = len(M), Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            M[k], M[p] = M[p], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return det


def test_known_determinants():
    assert xla.bareiss_det([[2, 1], [1, 2]]) == 3
    assert xla.bareiss_det([[0, 1], [1, 0]]) == -1
    assert xla.bareiss_det([[1, 2], [2, 4]]) == 0
    assert xla.bareiss_det(np.zeros((0, 0))) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(_matrix))
def test_bareiss_matches_rational_elimination(rows):
    assert xla.bareiss_det(rows) == _fraction_det(rows)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(_matrix(n), st.lists(small_ints, min_size=n, max_size=n))))
def test_solve_is_exact(data):
    A, b = data
    if _fraction_det(A) == 0:
        with pytest.raises(ZeroDivisionError):
            xla.solve(A, b)
        return
    x = xla.solve(A, b)
    assert all(isinstance(v, Fraction) for v in x)
    assert list(np.asarray(A, dtype=object) @ x) == b


def test_solve_with_fraction_entries():
    A = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), 1]]
    x = xla.solve(A, [1, 1])
    assert list(np.asarray(A, dtype=object) @ x) == [1, 1]


def test_inverse_round_trip():
    A = np.array([[3, 1, 0], [1, 3, 1], [0, 1, 3]], dtype=object)
    inv = xla.inverse(A)
    assert (A @ inv == np.eye(3, dtype=int)).all()


def test_shape_mismatch():
    with pytest.raises(ValueError):
        xla.solve([[1, 2], [3, 4]], [1, 2, 3])


def test_conversions():
    a = xla.as_fraction_array([[1, 2]])
    assert isinstance(a[0, 1], Fraction)
    assert xla.to_float(a).dtype == float
