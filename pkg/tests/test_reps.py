from fractions import Fraction as F

import numpy as np
import pytest

from theta_pos.crossratio import cr
from theta_pos.exactlinalg import Matrix, eigen_moduli
from theta_pos.positivity import is_positive_tuple
from theta_pos.pqspace import is_isometry
from theta_pos.reps import (
    RepError,
    Representation,
    attracting_flag,
    base_moduli,
    collar_check,
    curve_flag,
    cyclically_ordered,
    default_base,
    fuchsian_locus_rep,
    linked,
    point_angle,
    ratioed_check,
    sym_form,
    sym_power,
    sym_power_raw,
)


def test_sym_power_diagonal_oracle():
    m = sym_power(Matrix.diag([2, F(1, 2)]), 4)
    mods = [x.exact for x in eigen_moduli(m)]
    assert mods == [16, 4, 1, F(1, 4), F(1, 16)]


def test_sym_power_is_homomorphism_and_preserves_form():
    a, b = default_base()["a"], default_base()["b"]
    for n in (2, 4):
        assert sym_power_raw(a @ b, n) == sym_power_raw(a, n) @ sym_power_raw(b, n)
        s = sym_power_raw(b, n)
        assert s.T @ sym_form(n) @ s == sym_form(n)


@pytest.mark.parametrize("pq", [(2, 3), (3, 4), (3, 5), (4, 5)])
def test_fuchsian_rep_builds(pq):
    rep = fuchsian_locus_rep(default_base(), *pq)
    for g in rep.generators.values():
        assert is_isometry(rep.form, g)
    assert Representation.from_json(rep.to_json()).generators == rep.generators


def test_twist_must_preserve_complement():
    with pytest.raises(RepError):
        fuchsian_locus_rep(default_base(), 2, 4, twist={"a": Matrix([[2, 0], [0, F(1, 2)]])})


def test_base_moduli_match_matrix_spectrum():
    rep = fuchsian_locus_rep(default_base(), 3, 4)
    for w in ("a", "b", "ab", "aB"):
        for x, y in zip(base_moduli(rep, w), eigen_moduli(rep.evaluate(w))):
            assert abs(x.value - y.value) <= x.abs_tol + y.abs_tol + 1e-9 * x.value


def test_linked_default_generators():
    base = default_base()
    assert linked(base["a"], base["b"])
    assert not linked(base["a"], base["a"] @ base["a"])


def test_attracting_flags_positive_in_circle_order():
    rep = fuchsian_locus_rep(default_base(), 3, 4)
    words = ["a", "b", "A", "B", "ab"]
    words.sort(key=lambda w: point_angle(rep.attracting_point(w)))
    flags = [rep.attracting_flag(w) for w in words]
    assert is_positive_tuple(flags) is True


def _gap(a, b):
    qa, _ = np.linalg.qr(a.to_float())
    qb, _ = np.linalg.qr(b.to_float())
    return 1 - np.linalg.svd(qa.T @ qb, compute_uv=False).min()


def test_generic_attracting_flag_is_near_fixed():
    rep = fuchsian_locus_rep(default_base(), 3, 4)
    g = rep.element("ab")
    fl = attracting_flag(g)
    curve = rep.attracting_flag("ab")
    for l in (1, 2):
        assert _gap(fl.level(l).basis, fl.apply(g.matrix).level(l).basis) < 1e-6
        assert _gap(fl.level(l).basis, curve.level(l).basis) < 1e-6


@pytest.mark.parametrize("pq", [(2, 3), (3, 4), (3, 5)])
def test_collar_and_ratioed(pq):
    rep = fuchsian_locus_rep(default_base(), *pq)
    for k in range(1, pq[0]):
        assert collar_check(rep, "a", "b", k).verdict == "PASS"
        assert collar_check(rep, "b", "a", k).verdict == "PASS"
    words = sorted(["a", "b", "A", "B"], key=lambda w: point_angle(rep.attracting_point(w)))
    for k in range(1, pq[0]):
        c = ratioed_check(rep, words, k)
        assert c.verdict == "PASS" and c.rhs > 1
        # reversing the cyclic order leaves cr unchanged; swapping the outer pair inverts it
        assert ratioed_check(rep, words[::-1], k).rhs == c.rhs
        fl = [rep.attracting_flag(w).level(k) for w in words]
        swapped = cr(fl[3], fl[1], fl[2], fl[0])
        assert swapped < 1 and swapped == 1 / c.rhs


def test_collar_requires_linked_pair():
    rep = fuchsian_locus_rep(default_base(), 2, 3)
    with pytest.raises(RepError):
        collar_check(rep, "a", "aa", 1)


def test_cyclic_order():
    assert cyclically_ordered([0.1, 0.5, 2.0, 3.0])
    assert cyclically_ordered([2.0, 3.0, 0.1, 0.5])
    assert cyclically_ordered([3.0, 2.0, 0.5, 0.1])
    assert not cyclically_ordered([0.1, 2.0, 0.5, 3.0])


def test_curve_flag_is_isotropic():
    fl = curve_flag(3, 4, (F(1), F(2)))
    assert fl.level(2).k == 2
