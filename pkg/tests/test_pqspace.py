import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from theta_pos.exactlinalg import Matrix, symmetric_signature
from theta_pos.positivity import elementary, random_vj_boundary, random_vj_interior
from theta_pos.pqspace import (
    ConeClass,
    FormError,
    Signature,
    bJ,
    build_form,
    cone_classify,
    involution_H,
    involution_K,
    is_isometry,
    qJ,
)

SIGS = [(p, q) for p in range(2, 6) for q in range(p + 1, 7)]


def test_form_23_oracle():
    f = build_form(2, 3)
    assert f.Q == Matrix([[0, 0, 0, 0, -1], [0, 0, 0, 1, 0], [0, 0, -1, 0, 0], [0, 1, 0, 0, 0], [-1, 0, 0, 0, 0]])


@pytest.mark.parametrize("p,q", SIGS)
def test_signature_and_blocks(p, q):
    f = build_form(p, q)
    assert f.Q.T == f.Q
    assert symmetric_signature(f.Q) == (p, q, 0)
    m = q - p + 2
    assert f.J[0, m - 1] == f.J[m - 1, 0] == 1
    assert all(f.J[i, i] == -1 for i in range(1, m - 1))


@pytest.mark.parametrize("p,q", [(2, 2), (3, 2), (1, 4)])
def test_invalid_signature(p, q):
    with pytest.raises(FormError):
        Signature(p, q)


def test_elementary_23_oracle():
    f = build_form(2, 3)
    e = elementary(f, 1, (1, 0, 1))
    assert e == Matrix([[1, 1, 0, 1, 1], [0, 1, 0, 0, 1], [0, 0, 1, 0, 0], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]])


@pytest.mark.parametrize("p,q", SIGS)
def test_involutions(p, q):
    f = build_form(p, q)
    K, H = involution_K(f), involution_H(f)
    n = f.n
    assert K @ K == Matrix.identity(n) and is_isometry(f, K)
    assert H @ H == Matrix.identity(n) and is_isometry(f, H)
    rng = random.Random(p * 10 + q)
    for k in range(1, p):
        s = F(rng.randint(-4, 4), 3) if k <= p - 2 else tuple(F(rng.randint(-4, 4), 3) for _ in range(f.m))
        neg = -s if k <= p - 2 else tuple(-x for x in s)
        e = elementary(f, k, s)
        assert K @ e @ K == e.T
        assert H @ e @ H == elementary(f, k, neg)


def test_H_23_oracle():
    assert involution_H(build_form(2, 3)) == Matrix.diag([1, -1, -1, -1, 1])


def test_cone_classify():
    f = build_form(2, 3)
    assert cone_classify(f, (1, 0, 1)) is ConeClass.INTERIOR
    assert cone_classify(f, (1, 0, 0)) is ConeClass.BOUNDARY
    assert cone_classify(f, (-1, 0, -1)) is ConeClass.OUTSIDE
    assert cone_classify(f, (1, 5, 1)) is ConeClass.OUTSIDE
    assert qJ(f, (1, 0, 1)) == 1


@given(st.integers(0, 10 ** 6), st.sampled_from(SIGS))
def test_cone_lemma(seed, pq):
    f = build_form(*pq)
    rng = random.Random(seed)
    v = random_vj_interior(f, rng)
    w = random_vj_interior(f, rng) if rng.random() < 0.5 else random_vj_boundary(f, rng)
    assert bJ(f, v, w) > 0


@given(st.integers(0, 10 ** 6), st.sampled_from(SIGS))
def test_last_coordinate_nonnegative_on_closure(seed, pq):
    f = build_form(*pq)
    rng = random.Random(seed)
    for w in (random_vj_interior(f, rng), random_vj_boundary(f, rng)):
        assert w[-1] >= 0
        if qJ(f, w) > 0:
            assert w[-1] > 0
    # boundary vector with vanishing middle block: the last coordinate is exactly 0
    w = (F(1),) + (F(0),) * (f.m - 1)
    assert cone_classify(f, w) is ConeClass.BOUNDARY and w[-1] == 0
