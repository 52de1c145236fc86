import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from theta_pos.crossratio import (
    CrossRatioError,
    CrossRatioInput,
    cone_tangent_path,
    cr,
    cr_1_form,
    cr_derivative_fd,
    cr_project,
)
from theta_pos.exactlinalg import Matrix
from theta_pos.flags import IsotropicSubspace, standard_flags
from theta_pos.harness import random_config, random_flag, random_isometry
from theta_pos.positivity import elementary
from theta_pos.pqspace import build_form

SIGS = [(2, 3), (3, 4), (3, 5), (4, 5)]
seeds = st.integers(0, 10 ** 6)


def anchor():
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    x = X.apply(elementary(f, 1, (1, 0, 1)))
    y = X.apply(elementary(f, 1, (3, 0, 3)))
    return f, X, x, y, Z


def test_anchor_is_nine():
    f, X, x, y, Z = anchor()
    assert cr(X.level(1), x.level(1), y.level(1), Z.level(1)) == 9
    assert cr_1_form(f, (0, 0, 0, 0, 1), x.basis.col(0), y.basis.col(0), (1, 0, 0, 0, 0)) == 9


def test_equal_W_gives_one_and_nontransverse_raises():
    f, X, x, y, Z = anchor()
    assert cr(X.level(1), x.level(1), x.level(1), Z.level(1)) == 1
    with pytest.raises(CrossRatioError):
        cr(X.level(1), X.level(1), y.level(1), Z.level(1))


def test_mixed_dimensions_rejected():
    f = build_form(3, 4)
    X, Z = standard_flags(f)
    with pytest.raises(CrossRatioError):
        CrossRatioInput(X.level(1), Z.level(2), Z.level(1), X.level(1))


@given(seeds, st.sampled_from(SIGS))
def test_identities(seed, pq):
    f = build_form(*pq)
    rng = random.Random(seed)
    k = rng.randint(1, f.p - 1)
    V1, W1, W2, V2, V3 = random_config(f, rng, k, extra=1)
    base = cr(V1, W1, W2, V2)
    assert cr(V2, W1, W2, V1) == 1 / base
    assert cr(V1, W1, W2, V2) * cr(V2, W1, W2, V3) == cr(V1, W1, W2, V3)
    g = random_isometry(f, rng)
    assert cr(V1.apply(g), W1.apply(g), W2.apply(g), V2.apply(g)) == base


def test_weight_period_fixture():
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    gam = Matrix.diag([4, 2, 1, F(1, 2), F(1, 4)])
    x = random_flag(f, random.Random(0)).level(1)
    assert cr(X.level(1), x, x.apply(gam), Z.level(1)) == 16


@pytest.mark.parametrize("pq", [(3, 4), (4, 5)])
@pytest.mark.parametrize("method", ["perp", "plus"])
def test_projection_formula(pq, method):
    f = build_form(*pq)
    rng = random.Random(7)
    e = Matrix.identity(f.n).columns()
    for k in range(1, f.p):
        g = random_isometry(f, rng)
        P1 = IsotropicSubspace(f, Matrix.from_columns(e[:k])).apply(g)
        P2 = IsotropicSubspace(f, Matrix.from_columns(e[:k - 1] + [e[f.n - k]])).apply(g)
        U1, U2 = random_flag(f, rng).level(k), random_flag(f, rng).level(k)
        inp = CrossRatioInput(P1, U1, U2, P2)
        if method == "perp" and k != f.p - 1:
            continue
        assert cr_project(inp, method) == cr(P1, U1, U2, P2)


def test_projection_needs_large_intersection():
    f = build_form(3, 4)
    rng = random.Random(1)
    V1, W1, W2, V2 = random_config(f, rng, 2)
    with pytest.raises(CrossRatioError):
        cr_project(CrossRatioInput(V1, W1, W2, V2))


def test_derivative_fixture_p2():
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    y = X.apply(elementary(f, 1, (1, 0, 1)))
    fd = cr_derivative_fd(X, y, Z, 1, (1, 0, 1))
    assert abs(float(fd) - 2) < 1e-2


def test_tangent_path_requires_standard_position():
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    y = X.apply(elementary(f, 1, (1, 0, 1)))
    with pytest.raises(CrossRatioError):
        cone_tangent_path(y, X, Z, 1, F(1, 10), (1, 0, 1))
