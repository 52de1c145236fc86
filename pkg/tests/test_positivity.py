import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from theta_pos.exactlinalg import Matrix
from theta_pos.flags import standard_flags
from theta_pos.positivity import (
    MAX_CERTIFIED_P,
    UNDECIDED,
    PositivityError,
    ThetaCoordinates,
    ab,
    certify_tuple,
    elementary,
    factor_ab,
    factor_ba,
    inverse_positive_check,
    is_positive_triple,
    is_positive_tuple,
    positive_element,
    random_closure_block,
    random_coords,
    transpose_form,
    word_product,
)
from theta_pos.pqspace import build_form

SIGS = [(2, 3), (3, 4), (3, 6), (4, 5), (4, 6)]
seeds = st.integers(0, 10 ** 6)


def test_undecided_has_no_truth_value():
    with pytest.raises(TypeError):
        bool(UNDECIDED)
    assert repr(UNDECIDED) == "UNDECIDED"


def test_positive_element_requires_interior():
    f = build_form(2, 3)
    bad = ThetaCoordinates.from_json([[["1", "5", "1"]]])
    with pytest.raises(PositivityError):
        positive_element(f, bad)


def test_coords_json_roundtrip():
    f = build_form(3, 4)
    c = random_coords(f, random.Random(0))
    assert ThetaCoordinates.from_json(c.to_json()) == c


@given(seeds, st.sampled_from(SIGS))
def test_semigroup_closure(seed, pq):
    f = build_form(*pq)
    rng = random.Random(seed)
    u = word_product(f, random_coords(f, rng)) @ word_product(f, random_coords(f, rng))
    c = factor_ab(f, u)
    assert c is not None and c.is_interior(f)
    assert word_product(f, c) == u


@given(seeds, st.sampled_from(SIGS))
def test_sum_corollary(seed, pq):
    f = build_form(*pq)
    rng = random.Random(seed)
    u = ab(f, random_closure_block(f, rng)) @ word_product(f, random_coords(f, rng))
    c = factor_ab(f, u)
    assert c is not None and c.is_interior(f) and word_product(f, c) == u


@given(seeds, st.sampled_from(SIGS))
def test_braid_relation(seed, pq):
    f = build_form(*pq)
    u = word_product(f, random_coords(f, random.Random(seed)))
    c = factor_ba(f, u)
    assert c is not None and c.is_interior(f)
    assert word_product(f, c, "ba") == u


def test_non_positive_element_refuted():
    f = build_form(2, 3)
    assert factor_ab(f, elementary(f, 1, (1, 2, 1))) is None
    assert factor_ab(f, Matrix.identity(5)) is None


def test_triple_oracles():
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    assert is_positive_triple(X, X.apply(elementary(f, 1, (1, 0, 1))), Z) is True
    assert is_positive_triple(X, X.apply(elementary(f, 1, (1, 2, 1))), Z) is False


@pytest.mark.parametrize("pq", [(3, 4), (4, 5)])
def test_triple_symmetries(pq):
    f = build_form(*pq)
    X, Z = standard_flags(f)
    y = X.apply(word_product(f, random_coords(f, random.Random(3))))
    for t in [(X, y, Z), (y, Z, X), (Z, X, y), (Z, y, X)]:
        assert is_positive_triple(*t) is True


def test_tuple_certificate_remultiplies():
    f = build_form(3, 4)
    X, Z = standard_flags(f)
    rng = random.Random(9)
    u1 = word_product(f, random_coords(f, rng))
    u2 = u1 @ word_product(f, random_coords(f, rng))
    v = certify_tuple([X, X.apply(u1), X.apply(u2), Z])
    assert v.result is True and len(v.certificate) == 2
    assert v.to_json()["result"] is True


def test_p5_is_undecided():
    assert MAX_CERTIFIED_P == 4
    f = build_form(5, 6)
    X, Z = standard_flags(f)
    y = X.apply(word_product(f, random_coords(f, random.Random(1))))
    assert is_positive_tuple([X, y, Z]) is UNDECIDED


@pytest.mark.parametrize("pq", [(2, 3), (3, 4), (4, 5)])
def test_transpose_and_inverse(pq):
    f = build_form(*pq)
    X, Z = standard_flags(f)
    c = random_coords(f, random.Random(11))
    w = transpose_form(f, c)
    assert X.apply(word_product(f, c)).same_as(Z.apply(word_product(f, w).T))
    assert inverse_positive_check(f, c) is True


def test_negative_scalar_refuted():
    f = build_form(3, 4)
    c = random_coords(f, random.Random(2))
    b0 = c.blocks[0]
    flipped = ThetaCoordinates((type(b0)((-b0.scalars[0],), b0.vector),) + c.blocks[1:])
    assert factor_ab(f, word_product(f, flipped)) is None
