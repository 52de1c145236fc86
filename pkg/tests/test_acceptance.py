"""Acceptance criteria 1-15.  Each test prints one line: criterion number, PASS/FAIL, detail."""

import random
import time
from fractions import Fraction as F

import pytest

from theta_pos.crossratio import cr, cr_derivative_fd
from theta_pos.exactlinalg import Matrix
from theta_pos.flags import standard_flags
from theta_pos.harness import cmd_verify, collar2q_fixture, random_flag
from theta_pos.positivity import elementary, random_block, random_vj_boundary, random_vj_interior
from theta_pos.pqspace import bJ, build_form, is_isometry

SIGS = [(p, q) for p in range(2, 6) for q in range(p + 1, 7)]
SEED = 20240601

# pinned tolerances and budgets
ISOMETRY_BUDGET_S = 5.0
CONE_BUDGET_S = 1.0
SEMIGROUP_BUDGET_S = 30.0
COLLAR_BUDGET_S = 120.0
HYBRID_UNDECIDED_MAX = 0.05
FD_STEP = F(1, 1000)
FD_TOL = 1e-2


@pytest.fixture
def line(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print("\ncriterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
        return ok
    return emit


def _counts(reports):
    out = {"PASS": 0, "FAIL": 0, "UNDECIDED": 0}
    for r in reports:
        for k, v in r.counts().items():
            out[k] += v
    return out


def _rows(reports, prefix):
    return [t for r in reports for t in r.trials if t["statement"].startswith(prefix)]


def test_01_isometry(line):
    rng = random.Random(SEED)
    start = time.perf_counter()
    bad = total = 0
    for p, q in SIGS:
        f = build_form(p, q)
        for i in range(500):
            k = 1 + i % (p - 1)
            if not is_isometry(f, elementary(f, k, random_block(f, rng).param(k))):
                bad += 1
            total += 1
    dt = time.perf_counter() - start
    ok = bad == 0 and dt < ISOMETRY_BUDGET_S
    assert line(1, ok, "%d elementary matrices, %d non-isometries, %.2fs (< %.0fs)" % (total, bad, dt, ISOMETRY_BUDGET_S))


def test_02_cone_lemma(line):
    rng = random.Random(SEED + 2)
    forms = [build_form(p, q) for p, q in SIGS]
    start = time.perf_counter()
    bad = 0
    for i in range(1000):
        f = forms[i % len(forms)]
        v = random_vj_interior(f, rng)
        w = random_vj_interior(f, rng) if i % 2 else random_vj_boundary(f, rng)
        bad += bJ(f, v, w) <= 0
    dt = time.perf_counter() - start
    ok = bad == 0 and dt < CONE_BUDGET_S
    assert line(2, ok, "1000 pairs, %d with b_J <= 0, %.2fs (< %.0fs)" % (bad, dt, CONE_BUDGET_S))


def test_03_semigroup(line):
    start = time.perf_counter()
    reps = {p: cmd_verify("semigroup", p, p + 1, trials=200, seed=SEED) for p in (2, 3, 4)}
    dt = time.perf_counter() - start
    c = {p: r.counts() for p, r in reps.items()}
    und = {p: c[p]["UNDECIDED"] / sum(c[p].values()) for p in c}
    ok = all(c[p]["FAIL"] == 0 for p in c) and und[2] == 0 and und[3] == 0 and dt < SEMIGROUP_BUDGET_S
    assert line(3, ok, "p=2,3,4 x 200 trials x 2 products: FAIL %s, UNDECIDED rate %s, %.1fs"
                % ([c[p]["FAIL"] for p in c], ["%.3f" % und[p] for p in und], dt))


def test_04_braid(line):
    c = _counts([cmd_verify("braid", p, p + 1, trials=200, seed=SEED) for p in (2, 3, 4)])
    assert line(4, c["FAIL"] == 0 and c["UNDECIDED"] == 0, "600 ba factorizations: %s" % c)


@pytest.fixture(scope="module")
def identity_reports():
    return [cmd_verify("identities", p, q, trials=200, seed=SEED) for p, q in ((2, 3), (3, 4), (4, 5))]


def test_05_identities(line, identity_reports):
    names = ["cr(V2,W1,W2,V1)", "cr(W1,V1,V2,W2)", "cocycle in V", "cocycle in W", "cr(gV1", "cr independent"]
    counts = {n: len(_rows(identity_reports, n)) for n in names}
    fails = sum(t["verdict"] != "PASS" for n in names for t in _rows(identity_reports, n))
    enough = all(v >= 200 for k, v in counts.items() if k != "cr(W1,V1,V2,W2)")
    assert line(5, fails == 0 and enough, "rows per identity %s, non-PASS %d" % (counts, fails))


def test_06_anchor(line):
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    x = X.apply(elementary(f, 1, (1, 0, 1)))
    y = X.apply(elementary(f, 1, (3, 0, 3)))
    val = cr(X.level(1), x.level(1), y.level(1), Z.level(1))
    assert line(6, val == 9, "cr_1(e_5, x, y, e_1) = %s (expected 9)" % val)


def test_07_weight_period(line, identity_reports):
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    gam = Matrix.diag([4, 2, 1, F(1, 2), F(1, 4)])
    x = random_flag(f, random.Random(SEED)).level(1)
    val = cr(X.level(1), x, x.apply(gam), Z.level(1))
    rows = _rows(identity_reports, "weight period")
    ok = val == 16 and rows and all(t["verdict"] == "PASS" for t in rows)
    assert line(7, ok, "fixture %s (expected 16); %d random exact-diagonal periods" % (val, len(rows)))


def test_08_projection(line, identity_reports):
    by = {}
    for r in identity_reports[1:]:
        rows = [t for t in r.trials if t["statement"] == "cr_project = cr_k"]
        by[(r.p, r.q)] = (len(rows), sum(t["verdict"] != "PASS" for t in rows))
    ok = all(n >= 100 and bad == 0 for n, bad in by.values())
    assert line(8, ok, "(configs, non-PASS) per signature %s" % by)


def test_09_poscr(line):
    c = _counts([cmd_verify("poscr", 2, q, trials=50, seed=SEED) for q in (3, 4, 5, 6)])
    assert line(9, c["FAIL"] == 0 and c["UNDECIDED"] == 0, "200 positive 4-tuples in (2,q), q=3..6: %s" % c)


def test_10_collar2q(line):
    reps = [cmd_verify("collar2q", 2, q, trials=50, seed=SEED) for q in (3, 4, 5, 6)]
    bound_rows = [t for r in reps for t in r.trials
                  if t["statement"].startswith("cr_1(h-") and t["index"] >= 0]
    fixture = collar2q_fixture()
    min_margin = min(t["margin"] for t in bound_rows)
    c = _counts(reps)
    ok = c["FAIL"] == 0 and c["UNDECIDED"] == 0 and len(bound_rows) == 200 and min_margin > 0 \
        and fixture.rhs == 4 and fixture.lhs == 2
    assert line(10, ok, "200 samples, min margin %.3g (exact, tolerance 0); fixture cr=%s vs bound %s"
                % (min_margin, fixture.rhs, fixture.lhs))


def test_11_hybrid(line):
    reps = [cmd_verify("hybrid", p, q, trials=100, seed=SEED) for p, q in ((3, 4), (4, 5))]
    c = _counts(reps)
    total = sum(c.values())
    rate = c["UNDECIDED"] / total
    ok = c["FAIL"] == 0 and rate <= HYBRID_UNDECIDED_MAX
    assert line(11, ok, "100 quadruples each in (3,4),(4,5): %s, UNDECIDED rate %.3f (<= %.2f)"
                % (c, rate, HYBRID_UNDECIDED_MAX))


def test_12_derivative(line):
    reps = [cmd_verify("derivative", p, q, trials=100, seed=SEED) for p, q in ((2, 3), (3, 4), (4, 5))]
    c = _counts(reps)
    f = build_form(2, 3)
    X, Z = standard_flags(f)
    y = X.apply(elementary(f, 1, (1, 0, 1)))
    fd = cr_derivative_fd(X, y, Z, 1, (1, 0, 1), h=FD_STEP)
    closed = 2 * bJ(f, (1, 0, 1), (1, 0, 1)) / bJ(f, (1, 0, 1), (1, 0, 1))
    ok = c["FAIL"] == 0 and c["UNDECIDED"] == 0 and abs(float(fd) - float(closed)) < FD_TOL
    assert line(12, ok, "300 triples: %s; fixture fd %.6f vs closed form %s (tol %.0e)"
                % (c, float(fd), closed, FD_TOL))


def test_13_collar(line):
    start = time.perf_counter()
    reps = [cmd_verify("collar", p, q, trials=50, seed=SEED) for p, q in ((2, 3), (3, 4), (3, 5))]
    dt = time.perf_counter() - start
    c = _counts(reps)
    margins = [t["margin"] for r in reps for t in r.trials]
    ok = c["FAIL"] == 0 and c["UNDECIDED"] == 0 and min(margins) > 0 and dt < COLLAR_BUDGET_S
    assert line(13, ok, "150 linked pairs, both orders, all k: %s, min margin %.3g, %.1fs"
                % (c, min(margins), dt))


def test_14_ratioed(line):
    reps = [cmd_verify("ratioed", p, q, trials=100, seed=SEED) for p, q in ((2, 3), (3, 4), (3, 5))]
    c = _counts(reps)
    assert line(14, c["FAIL"] == 0 and c["UNDECIDED"] == 0, "100 quadruples per representation, all k: %s" % c)


def test_15_involutions(line):
    c = _counts([cmd_verify("involutions", p, q, trials=100, seed=SEED) for p, q in SIGS])
    assert line(15, c["FAIL"] == 0 and c["UNDECIDED"] == 0, "10 signatures x 100 s x all k: %s" % c)
