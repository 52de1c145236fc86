"""Elementary matrices, positive elements P(v) and the positivity certifier.

Factorization peels letters off the left of a word.  For every letter the
peeling plan names columns c in which the remaining suffix product has a known
zero pattern, so the letter's parameter can be read off as a ratio of entries
of the current matrix.  Plans are derived once per form by exact evaluation at
generic rational points and self-tested before use.  Every certificate is
re-multiplied before it is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactlinalg import Matrix, inverse, rank, scalar_str, solve, to_scalar
from .pqspace import (
    ConeClass,
    FormData,
    cone_classify,
    form_with_middle,
    involution_K,
    is_isometry,
    param_q,
)

# factorizations for p >= 5 are out of scope; they report UNDECIDED
MAX_CERTIFIED_P = 4


class PositivityError(ValueError):
    pass


class Undecided(Exception):
    """The solver found neither a certificate nor a refutation."""


class _UndecidedType:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNDECIDED"

    def __bool__(self):
        raise TypeError("UNDECIDED has no truth value; compare with `is UNDECIDED`")


UNDECIDED = _UndecidedType()


# ---------------------------------------------------------------------------
# elementary matrices

def _check_param(f: FormData, k: int, s):
    if not 1 <= k <= f.p - 1:
        raise PositivityError("letter index k must lie in 1..%d" % (f.p - 1))
    if k <= f.p - 2:
        if isinstance(s, (tuple, list)):
            raise PositivityError("E_%d takes a scalar" % k)
        return to_scalar(s)
    s = tuple(to_scalar(x) for x in s)
    if len(s) != f.m:
        raise PositivityError("E_%d takes a vector of length %d" % (k, f.m))
    return s


def _left_apply(f: FormData, k: int, s, rows: list[list[Fraction]]) -> None:
    """rows <- E_k(s) @ rows, in place."""
    n, p, q = f.n, f.p, f.q
    if k <= p - 2:
        if s:
            rows[k - 1] = [a + s * b for a, b in zip(rows[k - 1], rows[k])]
            rows[n - k - 1] = [a + s * b for a, b in zip(rows[n - k - 1], rows[n - k])]
        return
    corner = param_q(f, s)
    Ji = f.Jinv.entries
    col = [sum((Ji[a][b] * s[b] for b in range(f.m) if Ji[a][b]), Fraction(0)) for a in range(f.m)]
    last = rows[q + 1]
    top = list(rows[p - 2])
    for j, sj in enumerate(s):
        if sj:
            top = [a + sj * b for a, b in zip(top, rows[p - 1 + j])]
    if corner:
        top = [a + corner * b for a, b in zip(top, last)]
    rows[p - 2] = top
    for a, ca in enumerate(col):
        if ca:
            rows[p - 1 + a] = [x + ca * y for x, y in zip(rows[p - 1 + a], last)]


def elementary(f: FormData, k: int, s) -> Matrix:
    s = _check_param(f, k, s)
    rows = [list(r) for r in Matrix.identity(f.n).entries]
    _left_apply(f, k, s, rows)
    return Matrix(rows)


# ---------------------------------------------------------------------------
# coordinates

def _vec_str(v) -> list:
    return [scalar_str(x) for x in v]


@dataclass(frozen=True)
class ThetaBlock:
    """One v in V_Theta: p-2 scalars followed by one V_J vector."""

    scalars: tuple
    vector: tuple

    @classmethod
    def make(cls, scalars: Iterable, vector: Iterable) -> "ThetaBlock":
        return cls(tuple(to_scalar(x) for x in scalars), tuple(to_scalar(x) for x in vector))

    def param(self, k: int):
        return self.scalars[k - 1] if k <= len(self.scalars) else self.vector

    def __add__(self, other: "ThetaBlock") -> "ThetaBlock":
        return ThetaBlock(tuple(a + b for a, b in zip(self.scalars, other.scalars)),
                          tuple(a + b for a, b in zip(self.vector, other.vector)))

    def is_interior(self, f: FormData) -> bool:
        return all(x > 0 for x in self.scalars) and cone_classify(f, self.vector) is ConeClass.INTERIOR

    def is_closure(self, f: FormData) -> bool:
        if any(x < 0 for x in self.scalars):
            return False
        return all(x == 0 for x in self.vector) or cone_classify(f, self.vector) is not ConeClass.OUTSIDE

    def to_json(self) -> list:
        return [scalar_str(x) for x in self.scalars] + [_vec_str(self.vector)]


@dataclass(frozen=True)
class ThetaCoordinates:
    blocks: tuple  # of ThetaBlock, length p-1

    @classmethod
    def make(cls, blocks: Iterable) -> "ThetaCoordinates":
        out = []
        for b in blocks:
            out.append(b if isinstance(b, ThetaBlock) else ThetaBlock.make(b[:-1], b[-1]))
        return cls(tuple(out))

    def is_interior(self, f: FormData) -> bool:
        return all(b.is_interior(f) for b in self.blocks)

    def is_closure(self, f: FormData) -> bool:
        return all(b.is_closure(f) for b in self.blocks)

    def to_json(self) -> list:
        return [b.to_json() for b in self.blocks]

    @classmethod
    def from_json(cls, data: list) -> "ThetaCoordinates":
        return cls(tuple(ThetaBlock.make(blk[:-1], blk[-1]) for blk in data))

    def check_shape(self, f: FormData) -> None:
        if len(self.blocks) != f.p - 1:
            raise PositivityError("expected %d blocks, got %d" % (f.p - 1, len(self.blocks)))
        for b in self.blocks:
            if len(b.scalars) != f.p - 2 or len(b.vector) != f.m:
                raise PositivityError("block shape does not match (p, q) = (%d, %d)" % (f.p, f.q))


# ---------------------------------------------------------------------------
# words and products

def a_letters(p: int) -> list[int]:
    return list(range(1, p, 2))


def b_letters(p: int) -> list[int]:
    return list(range(2, p, 2))


def word(p: int, kind: str = "ab") -> list[tuple[int, int]]:
    """Letters (block index, k) of ab(v_1)...ab(v_{p-1}) or ba(v_1)...ba(v_{p-1})."""
    if kind not in ("ab", "ba"):
        raise ValueError("word kind must be 'ab' or 'ba'")
    first, second = (a_letters(p), b_letters(p)) if kind == "ab" else (b_letters(p), a_letters(p))
    return [(i, k) for i in range(p - 1) for k in first + second]


def _product(f: FormData, letters: Sequence[tuple[int, object]]) -> Matrix:
    rows = [list(r) for r in Matrix.identity(f.n).entries]
    for k, s in reversed(letters):
        _left_apply(f, k, s, rows)
    return Matrix(rows)


def word_product(f: FormData, coords: ThetaCoordinates, kind: str = "ab") -> Matrix:
    coords.check_shape(f)
    return _product(f, [(k, coords.blocks[i].param(k)) for i, k in word(f.p, kind)])


def a_of(f: FormData, v: ThetaBlock) -> Matrix:
    return _product(f, [(k, v.param(k)) for k in a_letters(f.p)])


def b_of(f: FormData, v: ThetaBlock) -> Matrix:
    return _product(f, [(k, v.param(k)) for k in b_letters(f.p)])


def ab(f: FormData, v: ThetaBlock) -> Matrix:
    return a_of(f, v) @ b_of(f, v)


def ba(f: FormData, v: ThetaBlock) -> Matrix:
    return b_of(f, v) @ a_of(f, v)


@dataclass(frozen=True)
class PositiveElement:
    coords: ThetaCoordinates
    matrix: Matrix


def positive_element(f: FormData, coords: ThetaCoordinates, closure: bool = False) -> PositiveElement:
    coords.check_shape(f)
    ok = coords.is_closure(f) if closure else coords.is_interior(f)
    if not ok:
        raise PositivityError("coordinates are not in the %s of the cone" % ("closure" if closure else "interior"))
    return PositiveElement(coords, word_product(f, coords))


# ---------------------------------------------------------------------------
# random samples

def random_vj_interior(f: FormData, rng: random.Random, size: int = 5) -> tuple:
    """A random interior point of the standard cone, rational and usually not too tall."""
    m = f.m
    while True:
        mid = [Fraction(rng.randint(-size, size), rng.randint(1, 3)) for _ in range(m - 2)]
        need = sum(x * x for x in mid) / 2
        a = Fraction(rng.randint(1, 2 * size), rng.randint(1, 3))
        c = need / a + Fraction(rng.randint(1, 2 * size), rng.randint(1, 4))
        s = (a, *mid, c)
        if cone_classify(f, s) is ConeClass.INTERIOR:
            return s


def random_vj_boundary(f: FormData, rng: random.Random, size: int = 5) -> tuple:
    m = f.m
    mid = [Fraction(rng.randint(-size, size), rng.randint(1, 3)) for _ in range(m - 2)]
    a = Fraction(rng.randint(1, 2 * size), rng.randint(1, 3))
    return (a, *mid, sum(x * x for x in mid) / (2 * a))


def random_block(f: FormData, rng: random.Random, size: int = 5) -> ThetaBlock:
    scal = [Fraction(rng.randint(1, 2 * size), rng.randint(1, 3)) for _ in range(f.p - 2)]
    return ThetaBlock(tuple(scal), random_vj_interior(f, rng, size))


def random_coords(f: FormData, rng: random.Random, size: int = 5) -> ThetaCoordinates:
    return ThetaCoordinates(tuple(random_block(f, rng, size) for _ in range(f.p - 1)))


def random_closure_block(f: FormData, rng: random.Random, size: int = 5) -> ThetaBlock:
    scal = [Fraction(rng.randint(0, 2 * size), rng.randint(1, 3)) for _ in range(f.p - 2)]
    pick = rng.randrange(3)
    if pick == 0:
        vec = tuple(Fraction(0) for _ in range(f.m))
    elif pick == 1:
        vec = random_vj_boundary(f, rng, size)
    else:
        vec = random_vj_interior(f, rng, size)
    return ThetaBlock(tuple(scal), vec)


def _generic_coords(f: FormData, rng: random.Random) -> ThetaCoordinates:
    # zero patterns are polynomial identities, so signs do not matter here
    def r():
        return Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**4))
    return ThetaCoordinates(tuple(ThetaBlock(tuple(r() for _ in range(f.p - 2)), tuple(r() for _ in range(f.m)))
                                  for _ in range(f.p - 1)))


# ---------------------------------------------------------------------------
# peeling factorization

_PLANS: dict = {}
_MAX_MINOR = 3      # largest |S| searched when building a plan
_CANDIDATES = 6     # pivots kept per target, tried in order


def _minor(rows: list, R: Sequence[int], C: Sequence[int]) -> Fraction:
    a = [[rows[r][c] for c in C] for r in R]
    n = len(a)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                fct = a[i][k] / a[k][k]
                a[i] = [x - fct * y for x, y in zip(a[i], a[k])]
    return d


def _targets(f: FormData, k: int) -> tuple[list[tuple[int, int]], set]:
    """(numerator row, denominator row) pairs for the letter E_k, and the rows it modifies.

    For rows S untouched by E_k, det M[{r} u S, C] is affine in the letter's
    parameter with slope det M'[{d} u S, C] where M = E_k M'.
    """
    if k <= f.p - 2:
        return [(k - 1, k)], {k - 1, f.n - k - 1}
    return [(r, f.q + 1) for r in f.vj_range], {f.p - 2, *f.vj_range}


def _plan(f: FormData, kind: str):
    key = (f, kind)
    if key in _PLANS:
        return _PLANS[key]
    from itertools import combinations

    letters = word(f.p, kind)
    rng = random.Random(0x5EED + f.p * 31 + f.q)
    samples = [_generic_coords(f, rng) for _ in range(2)]
    suffixes = []
    for c in samples:
        params = [(k, c.blocks[i].param(k)) for i, k in letters]
        suffixes.append([[list(r) for r in _product(f, params[j + 1:]).entries] for j in range(len(letters))])
    plan = []
    for j, (_, k) in enumerate(letters):
        targets, modified = _targets(f, k)
        entry = []
        for num, den in targets:
            avail = [r for r in range(f.n) if r not in modified and r != den]
            cands = []
            for size in range(_MAX_MINOR + 1):
                for S in combinations(avail, size):
                    for C in combinations(range(f.n), size + 1):
                        if all(_minor(s[j], (num, *S), C) == 0 and _minor(s[j], (den, *S), C) != 0
                               for s in suffixes):
                            cands.append((S, C))
                            if len(cands) >= _CANDIDATES:
                                break
                    if len(cands) >= _CANDIDATES:
                        break
                if cands:
                    break
            if not cands:
                _PLANS[key] = None
                return None
            entry.append(cands)
        plan.append(entry)
    _PLANS[key] = plan
    # self-test on a fresh generic point
    probe = _generic_coords(f, rng)
    try:
        got = _peel(f, word_product(f, probe, kind), kind)
    except Undecided:
        got = None
    if got != probe:
        _PLANS[key] = None
    return _PLANS[key]


def _peel(f: FormData, u: Matrix, kind: str) -> ThetaCoordinates | None:
    """Coordinates with word_product == u, or None if no real coordinates exist."""
    plan = _PLANS[(f, kind)]
    letters = word(f.p, kind)
    rows = [list(r) for r in u.entries]
    found: list[list] = [[None] * (f.p - 1) for _ in range(f.p - 1)]
    G = f.J
    for (i, k), entry in zip(letters, plan):
        targets, _ = _targets(f, k)
        vals = []
        for (num, den), cands in zip(targets, entry):
            for S, C in cands:
                d = _minor(rows, (den, *S), C)
                if d:
                    vals.append(_minor(rows, (num, *S), C) / d)
                    break
            else:
                raise Undecided("all pivots vanish for letter E_%d of block %d" % (k, i + 1))
        if k <= f.p - 2:
            s = vals[0]
        else:
            # vals = J^{-1} s
            s = tuple(sum((G[a, b] * vals[b] for b in range(f.m) if G[a, b]), Fraction(0)) for a in range(f.m))
        found[i][k - 1] = s
        _left_apply(f, k, (-s if k <= f.p - 2 else tuple(-x for x in s)), rows)
    if Matrix(rows) != Matrix.identity(f.n):
        return None
    return ThetaCoordinates(tuple(ThetaBlock(tuple(b[:-1]), b[-1]) for b in found))


def _in_unipotent_radical(f: FormData, u: Matrix) -> bool:
    if u.shape != (f.n, f.n):
        return False
    n, p = f.n, f.p
    # block upper unitriangular for the blocks (1,...,1, m, 1,...,1)
    blocks = [[i] for i in range(p - 1)] + [list(f.vj_range)] + [[i] for i in range(f.q + 1, n)]
    where = {}
    for b, idx in enumerate(blocks):
        for i in idx:
            where[i] = b
    for i in range(n):
        for j in range(n):
            bi, bj = where[i], where[j]
            if bi > bj and u[i, j] != 0:
                return False
            if bi == bj and u[i, j] != (1 if i == j else 0):
                return False
    return is_isometry(f, u)


def _factor(f: FormData, u: Matrix, kind: str) -> ThetaCoordinates | None:
    if not _in_unipotent_radical(f, u):
        raise PositivityError("input is not a unipotent isometry stabilizing Z")
    if f.p > MAX_CERTIFIED_P:
        raise Undecided("factorization for p = %d is outside the certified range" % f.p)
    if _plan(f, kind) is None:
        raise Undecided("no peeling plan for (p, q) = (%d, %d)" % (f.p, f.q))
    coords = _peel(f, u, kind)
    if coords is None or not coords.is_interior(f):
        return None
    if word_product(f, coords, kind) != u:  # mandatory re-multiplication
        raise Undecided("re-multiplication check failed")
    return coords


def factor_ab(f: FormData, u: Matrix) -> ThetaCoordinates | None:
    """Interior v with P(v) = u, None if none exists; raises Undecided otherwise."""
    return _factor(f, u, "ab")


def factor_ba(f: FormData, u: Matrix) -> ThetaCoordinates | None:
    return _factor(f, u, "ba")


# ---------------------------------------------------------------------------
# normalization of flag pairs

@dataclass(frozen=True)
class Frame:
    """Columns of ``basis`` are the images of e_1..e_n; ``form`` is the Gram matrix there."""

    basis: Matrix
    inv: Matrix
    form: FormData


def _lu_unit(m: Matrix) -> tuple[list, list, list]:
    """m = L D U with L unit lower, U unit upper; requires nonzero leading minors."""
    n = m.rows
    a = [list(r) for r in m.entries]
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] == 0:
            raise PositivityError("flags are not transverse")
        for i in range(k + 1, n):
            fct = a[i][k] / a[k][k]
            L[i][k] = fct
            a[i] = [x - fct * y for x, y in zip(a[i], a[k])]
    D = [a[i][i] for i in range(n)]
    U = [[a[i][j] / D[i] for j in range(n)] for i in range(n)]
    return L, D, U


def normalize(f: FormData, x, z) -> Frame:
    """A frame sending x to X and z to Z, built by hyperbolic-pair completion."""
    n, p = f.n, f.p
    zb, xb = z.basis, x.basis
    M = zb.T @ f.Q @ xb
    L, D, U = _lu_unit(M)
    kappa = [f.Q[i, n - 1 - i] for i in range(p - 1)]
    A = inverse(Matrix(L))                        # lower triangular
    Bt = inverse(Matrix(U)) @ Matrix.diag([kappa[i] / D[i] for i in range(p - 1)])
    F = zb @ A.T                                  # columns f_i
    Gm = xb @ Bt                                  # columns g_i, Q(f_i, g_j) = kappa_i delta_ij
    fs, gs = F.columns(), Gm.columns()
    hyper = fs + gs

    def proj(v):
        out = list(v)
        for i in range(p - 1):
            a = f.pair(v, gs[i]) / kappa[i]
            b = f.pair(v, fs[i]) / kappa[i]
            out = [o - a * fi - b * gi for o, fi, gi in zip(out, fs[i], gs[i])]
        return tuple(out)

    eye = Matrix.identity(n).columns()
    order = list(f.vj_range) + [i for i in range(n) if i not in f.vj_range]
    mid = []
    for i in order:
        v = proj(eye[i])
        if rank(Matrix.from_columns(hyper + mid + [v])) == len(hyper) + len(mid) + 1:
            mid.append(v)
        if len(mid) == f.m:
            break
    cols = fs + mid + list(reversed(gs))
    basis = Matrix.from_columns(cols)
    midm = Matrix.from_columns(mid)
    G = midm.T @ f.Q @ midm
    fG = form_with_middle(f, G)
    if basis.T @ f.Q @ basis != fG.Q:
        raise PositivityError("frame construction failed")
    return Frame(basis, inverse(basis), fG)


def unipotent_to(f: FormData, yb: Matrix) -> Matrix:
    """The unique u in U_Z with u X = y, for y (an adapted basis) transverse to Z."""
    n, p, q = f.n, f.p, f.q
    cols: dict[int, tuple] = {}
    for l in range(1, p):
        Y = yb.submatrix(range(n), range(l))
        low = Y.submatrix(range(n - l, n), range(l))
        rhs = Matrix.column([1] + [0] * (l - 1))
        c = solve(low, rhs)
        if c is None or rank(low) < l:
            raise PositivityError("flag is not transverse to Z")
        cols[n - l] = (Y @ c).col(0)
    known = [cols[j] for j in range(q + 1, n)]
    qk = [(f.Q @ Matrix.column(kc)).col(0) for kc in known]  # Q-duals of the known columns
    for j in range(q, -1, -1):
        # column j = e_j + sum of e_r over rows r strictly above its diagonal block
        free = list(range(min(j, p - 1)))
        e = [Fraction(int(i == j)) for i in range(n)]
        if free:
            a = Matrix([[qv[r] for r in free] for qv in qk])
            rhs = [f.Q[j, q + 1 + idx] - qv[j] for idx, qv in enumerate(qk)]
            sol = solve(a, Matrix.column(rhs))
            if sol is None:
                raise PositivityError("no unipotent carries X to the given flag")
            for r, val in zip(free, sol.col(0)):
                e[r] = val
        cols[j] = tuple(e)
    u = Matrix.from_columns([cols[j] for j in range(n)])
    if not _in_unipotent_radical(f, u):
        raise PositivityError("recovered unipotent is not an isometry")
    return u


def levi_reps(f: FormData) -> list[Matrix]:
    """Sign-diagonal isometries fixing X and Z, one per component modulo +-1."""
    p, m = f.p, f.m
    reps = []
    for bits in range(2 ** (p - 1)):
        eps = [1] + [-1 if bits >> i & 1 else 1 for i in range(p - 2)]
        delta = -1 if bits >> (p - 2) & 1 else 1
        d = eps + [delta] * m + list(reversed(eps))
        reps.append(Matrix.diag(d))
    return reps


# ---------------------------------------------------------------------------
# triples and tuples

@dataclass(frozen=True)
class Verdict:
    result: object                   # True, False or UNDECIDED
    certificate: tuple = ()          # ThetaCoordinates per consecutive step
    reason: str = ""

    def to_json(self) -> dict:
        res = "undecided" if self.result is UNDECIDED else bool(self.result)
        out: dict = {"result": res}
        if self.result is True:
            out["certificate"] = [c.to_json() for c in self.certificate]
        if self.reason:
            out["reason"] = self.reason
        return out


def certify_tuple(flags: Sequence) -> Verdict:
    if len(flags) < 3:
        raise PositivityError("need at least three flags")
    from .flags import transverse_flags

    f = flags[0].form
    for i in range(len(flags)):
        for j in range(i + 1, len(flags)):
            if not transverse_flags(flags[i], flags[j]):
                raise PositivityError("flags %d and %d are not transverse" % (i, j))
    frame = normalize(f, flags[0], flags[-1])
    fG = frame.form
    us = [unipotent_to(fG, frame.inv @ y.basis) for y in flags[1:-1]]
    steps = [us[0]] + [inverse(us[i - 1]) @ us[i] for i in range(1, len(us))]
    undecided = None
    for D in levi_reps(fG):
        certs = []
        for st in steps:
            try:
                c = factor_ab(fG, D @ st @ D)
            except Undecided as exc:
                undecided = str(exc)
                c = None
                certs = None
                break
            if c is None:
                certs = None
                break
            certs.append(c)
        if certs is not None:
            return Verdict(True, tuple(certs))
    if undecided is not None:
        return Verdict(UNDECIDED, reason=undecided)
    return Verdict(False)


def is_positive_tuple(flags: Sequence):
    return certify_tuple(flags).result


def certify_triple(x, y, z) -> Verdict:
    return certify_tuple([x, y, z])


def is_positive_triple(x, y, z):
    return certify_tuple([x, y, z]).result


# ---------------------------------------------------------------------------
# transpose and inverse normal forms

def transpose_form(f: FormData, coords: ThetaCoordinates) -> ThetaCoordinates:
    """w with P(v) X = P(w)^t Z as flags."""
    from .flags import standard_flags

    if not coords.is_interior(f):
        raise PositivityError("transpose_form needs interior coordinates")
    X, Z = standard_flags(f)
    P = word_product(f, coords)
    K = involution_K(f)
    target = X.apply(K @ P)
    u = unipotent_to(f, target.basis)
    c = factor_ba(f, u)
    if c is None:
        raise Undecided("ba factorization of the conjugated element was refuted")
    w = ThetaCoordinates(tuple(reversed(c.blocks)))
    if not X.apply(P).same_as(Z.apply(word_product(f, w).T)):
        raise PositivityError("transpose identity failed to verify")
    return w


def inverse_positive_check(f: FormData, coords: ThetaCoordinates):
    from .flags import standard_flags

    if not coords.is_interior(f):
        raise PositivityError("inverse_positive_check needs interior coordinates")
    X, Z = standard_flags(f)
    P = word_product(f, coords)
    return is_positive_triple(X, X.apply(inverse(P)), Z)


__all__ = [
    "MAX_CERTIFIED_P",
    "UNDECIDED",
    "PositiveElement",
    "PositivityError",
    "ThetaBlock",
    "ThetaCoordinates",
    "Undecided",
    "Verdict",
    "a_of",
    "ab",
    "b_of",
    "ba",
    "certify_triple",
    "certify_tuple",
    "elementary",
    "factor_ab",
    "factor_ba",
    "inverse_positive_check",
    "is_positive_triple",
    "is_positive_tuple",
    "levi_reps",
    "normalize",
    "positive_element",
    "transpose_form",
    "unipotent_to",
    "word",
    "word_product",
]
