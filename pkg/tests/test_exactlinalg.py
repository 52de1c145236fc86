from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from theta_pos.exactlinalg import (
    ApproxReal,
    EigenError,
    LinalgError,
    Matrix,
    charpoly,
    congruence_diagonalize,
    det,
    eigen_moduli,
    intersect,
    inverse,
    kernel,
    rank,
    rref,
    solve,
    symmetric_signature,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


def test_matrix_is_immutable_and_hashable():
    m = Matrix([[1, 2], [3, 4]])
    assert hash(m) == hash(Matrix([["1", "2"], ["3", "4"]]))
    with pytest.raises(AttributeError):
        m.rows = 3


def test_ragged_rows_rejected():
    with pytest.raises(LinalgError):
        Matrix([[1, 2], [3]])


def test_det_small_oracle():
    assert det(Matrix([[1, 2], [3, 4]])) == -2
    assert det(Matrix([[F(1, 2), 0, 0], [0, 3, 0], [0, 0, F(2, 3)]])) == 1


@given(square(3), square(3))
def test_det_multiplicative(a, b):
    assert det(a @ b) == det(a) * det(b)


@given(square(4))
def test_det_matches_numpy(a):
    assert abs(float(det(a)) - np.linalg.det(a.to_float())) < 1e-6 * max(1.0, abs(float(det(a))))


@given(square(3))
def test_inverse_roundtrip(a):
    if det(a) == 0:
        with pytest.raises(LinalgError):
            inverse(a)
    else:
        assert a @ inverse(a) == Matrix.identity(3)


@given(square(4))
def test_rank_nullity(a):
    ker = kernel(a)
    nullity = 0 if ker is None else ker.cols
    assert rank(a) + nullity == 4
    if ker is not None:
        assert (a @ ker).is_zero()


def test_rref_pivots():
    r, piv = rref(Matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]]))
    assert piv == [0, 1]
    assert r.row(0) == (1, 0, 1)


def test_solve_inconsistent_is_none():
    a = Matrix([[1, 1], [1, 1]])
    assert solve(a, Matrix.column([1, 2])) is None
    x = solve(a, Matrix.column([2, 2]))
    assert a @ x == Matrix.column([2, 2])


def test_intersect_planes():
    a = Matrix.from_columns([(1, 0, 0), (0, 1, 0)])
    b = Matrix.from_columns([(0, 1, 0), (0, 0, 1)])
    line = intersect(a, b)
    assert line.cols == 1 and rank(line.hstack(Matrix.column((0, 1, 0)))) == 1


def test_signature_and_congruence():
    g = Matrix([[0, 1], [1, 0]])
    assert symmetric_signature(g) == (1, 1, 0)
    c, d = congruence_diagonalize(g)
    assert c.T @ g @ c == Matrix.diag(d)


def test_charpoly():
    # x^2 - 5x - 2 for [[1,2],[3,4]]
    assert charpoly(Matrix([[1, 2], [3, 4]]))[-3:] in ([1, -5, -2], [-2, -5, 1])


def test_eigen_moduli_exact_and_approximate():
    mods = eigen_moduli(Matrix([[2, 1], [1, 1]]))
    phi2 = (3 + 5 ** 0.5) / 2
    assert abs(mods[0].value - phi2) <= mods[0].abs_tol + 1e-12
    assert mods[0].exact is None
    ex = eigen_moduli(Matrix([[4, 0], [1, F(1, 4)]]))
    assert [m.exact for m in ex] == [4, F(1, 4)]


def test_eigen_moduli_tolerance_guard():
    with pytest.raises(EigenError):
        eigen_moduli(Matrix([[2, 1], [1, 1]]), max_tol=0.0)


def test_approx_real_interval():
    a = ApproxReal(1.0, 0.25)
    assert (a.lo, a.hi) == (0.75, 1.25)
    with pytest.raises(ValueError):
        ApproxReal(1.0, -1.0)
