"""Fuchsian-locus representations, spectra, attracting flags and the collar/ratioed probes.

The principal representation of SL(2) acts on binary forms of degree n = 2p-2.
Its weight basis x^n, x^{n-1}y, ..., y^n is sent to e_1, ..., e_{p-1}, one
vector of V_J and e_{q+2}, ..., e_n, so a diagonal element diag(t, 1/t) acts
by decreasing powers of t and has attracting flag Z.  The complement of the
principal block inside V_J carries the compact twist.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .exactlinalg import (
    ApproxReal,
    EigenError,
    Matrix,
    det,
    eigen_moduli,
    inverse,
    json_rows,
    kernel,
    scalar_str,
    to_scalar,
)
from .flags import PartialFlag, standard_flags
from .pqspace import FormData, build_form, is_isometry


class RepError(ValueError):
    pass


SNAP_TOL = 1e-8


# ---------------------------------------------------------------------------
# symmetric powers

def _binomial_poly_power(lin: tuple, e: int) -> list[Fraction]:
    """Coefficients of (a x + b y)^e in the basis x^e, x^{e-1} y, ..., y^e."""
    a, b = lin
    return [comb(e, j) * a ** (e - j) * b ** j for j in range(e + 1)]


def _poly_mul(u: list, v: list) -> list:
    out = [Fraction(0)] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    return out


def sym_power_raw(m: Matrix, n: int) -> Matrix:
    """Sym^n(m) on binary forms of degree n; m acts on the linear forms x, y by its columns."""
    if m.shape != (2, 2):
        raise RepError("expected a 2x2 matrix")
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    imx, imy = (a, c), (b, d)  # images of x and y
    cols = []
    for i in range(n + 1):
        cols.append(_poly_mul(_binomial_poly_power(imx, n - i), _binomial_poly_power(imy, i)))
    return Matrix.from_columns(cols)


def sym_form(n: int) -> Matrix:
    """The invariant symmetric form on degree-n binary forms, signed so the middle weight is positive."""
    if n % 2:
        raise RepError("only even symmetric powers preserve a symmetric form")
    p = n // 2 + 1
    sign = (-1) ** (p - 1)
    return Matrix([[Fraction(sign * (-1) ** i, comb(n, i)) if i + j == n else 0 for j in range(n + 1)]
                   for i in range(n + 1)])


@dataclass(frozen=True)
class Embedding:
    """Change of basis C with C^t Q C = B + D, B the principal block and D the complement."""

    form: FormData
    C: Matrix
    Cinv: Matrix
    complement_gram: Matrix


_EMBEDDINGS: dict = {}


def embedding(p: int, q: int) -> Embedding:
    key = (p, q)
    if key in _EMBEDDINGS:
        return _EMBEDDINGS[key]
    f = build_form(p, q)
    n_sym = 2 * p - 2
    B = sym_form(n_sym)
    N, m = f.n, f.m
    a, b = p - 1, q
    cols: list = [None] * (n_sym + 1)
    eye = Matrix.identity(N).columns()
    for i in range(p - 1):
        kappa = f.Q[i, N - 1 - i]
        cols[i] = eye[i]
        cols[n_sym - i] = tuple(x * B[i, n_sym - i] / kappa for x in eye[N - 1 - i])
    beta = B[p - 1, p - 1]
    cols[p - 1] = tuple(x + beta / 2 * y for x, y in zip(eye[a], eye[b]))
    comp = [tuple(x - beta / 2 * y for x, y in zip(eye[a], eye[b]))] + [eye[a + j] for j in range(1, m - 1)]
    C = Matrix.from_columns(cols + comp)
    D = Matrix.diag([-beta] + [-1] * (m - 2)) if m > 1 else None
    block = C.T @ f.Q @ C
    expect = [[Fraction(0)] * N for _ in range(N)]
    for i in range(n_sym + 1):
        for j in range(n_sym + 1):
            expect[i][j] = B[i, j]
    for i in range(m - 1):
        expect[n_sym + 1 + i][n_sym + 1 + i] = D[i, i]
    if block != Matrix(expect):
        raise RepError("embedding does not match the standard form")
    emb = Embedding(f, C, inverse(C), D if D is not None else Matrix([[0]]))
    _EMBEDDINGS[key] = emb
    return emb


def sym_power(m: Matrix, n: int) -> Matrix:
    """Sym^n(m) in the weight basis; it preserves ``sym_form(n)`` exactly."""
    if n % 2:
        raise RepError("n must be even")
    if det(m) != 1:
        raise RepError("symmetric powers are taken of unimodular matrices only")
    s = sym_power_raw(m, n)
    B = sym_form(n)
    if s.T @ B @ s != B:
        raise RepError("invariant form check failed")
    return s


# ---------------------------------------------------------------------------
# group elements and representations

@dataclass(frozen=True, eq=False)
class GroupElement:
    form: FormData
    matrix: Matrix

    def __post_init__(self):
        if not is_isometry(self.form, self.matrix):
            raise RepError("matrix is not an isometry of Q")

    def __eq__(self, other) -> bool:
        # projective equality
        return isinstance(other, GroupElement) and self.form == other.form and \
            (self.matrix == other.matrix or self.matrix == -other.matrix)

    def __hash__(self) -> int:
        return hash(self.form)


def _sl2_inverse(m: Matrix) -> Matrix:
    return Matrix([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


@dataclass(eq=False)
class Representation:
    form: FormData
    generators: dict                 # name -> Matrix (image in O(p,q))
    base: dict | None = None         # name -> SL(2) matrix, for Fuchsian-locus representations
    twist: dict | None = None
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        for name, g in self.generators.items():
            if len(name) != 1 or not name.islower():
                raise RepError("generator names must be single lower-case letters")
            if not is_isometry(self.form, g):
                raise RepError("image of %s is not an isometry" % name)

    def _letters(self, word: str):
        for ch in word:
            if ch.lower() not in self.generators:
                raise RepError("unknown generator %r" % ch)
            yield ch

    def evaluate(self, word: str) -> Matrix:
        with self._lock:
            hit = self._cache.get(word)
        if hit is not None:
            return hit
        g = Matrix.identity(self.form.n)
        for ch in self._letters(word):
            m = self.generators[ch.lower()]
            g = g @ (m if ch.islower() else inverse(m))
        with self._lock:
            self._cache[word] = g
        return g

    def element(self, word: str) -> GroupElement:
        return GroupElement(self.form, self.evaluate(word))

    def base_eval(self, word: str) -> Matrix:
        if self.base is None:
            raise RepError("representation has no base SL(2) data")
        g = Matrix.identity(2)
        for ch in self._letters(word):
            m = self.base[ch.lower()]
            g = g @ (m if ch.islower() else _sl2_inverse(m))
        return g

    def to_json(self) -> dict:
        out = {"p": self.form.p, "q": self.form.q,
               "generators": {k: json_rows(v) for k, v in sorted(self.generators.items())}}
        if self.base is not None:
            out["base"] = {k: json_rows(v) for k, v in sorted(self.base.items())}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        f = build_form(int(data["p"]), int(data["q"]))
        gens = {k: Matrix(v) for k, v in data["generators"].items()}
        base = {k: Matrix(v) for k, v in data["base"].items()} if "base" in data else None
        return cls(f, gens, base)

    # boundary curve of a Fuchsian-locus representation --------------------

    def boundary_flag(self, lin: Sequence) -> PartialFlag:
        """Exact image of the point [lin] of the projective line (a linear form a x + b y)."""
        if self.base is None:
            raise RepError("boundary curve needs base SL(2) data")
        return curve_flag(self.form.p, self.form.q, lin)

    def attracting_point(self, word: str, snap_tol: float = SNAP_TOL) -> tuple:
        """Rational linear form within snap_tol of the attracting fixed point of the base element."""
        return snap_point(attracting_line(self.base_eval(word)), snap_tol)

    def attracting_flag(self, word: str, snap_tol: float = SNAP_TOL) -> PartialFlag:
        return self.boundary_flag(self.attracting_point(word, snap_tol))


def curve_flag(p: int, q: int, lin: Sequence) -> PartialFlag:
    """Osculating flag of the principal curve: level k = lin^{n-k+1} * (forms of degree k-1)."""
    emb = embedding(p, q)
    n = 2 * p - 2
    a, b = (to_scalar(x) for x in lin)
    if a == 0 and b == 0:
        raise RepError("zero linear form")
    other = (Fraction(0), Fraction(1)) if a != 0 else (Fraction(1), Fraction(0))
    cols = []
    for j in range(p - 1):
        coeffs = _poly_mul(_binomial_poly_power((a, b), n - j), _binomial_poly_power(other, j))
        full = list(coeffs) + [Fraction(0)] * (emb.form.m - 1)
        cols.append((emb.C @ Matrix.column(full)).col(0))
    return PartialFlag(emb.form, Matrix.from_columns(cols))


def attracting_line(m: Matrix) -> tuple[float, float]:
    """Float linear form fixed by the base element with the larger eigenvalue modulus."""
    arr = np.array([[float(m[i, j]) for j in range(2)] for i in range(2)])
    tr = arr[0, 0] + arr[1, 1]
    if tr * tr <= 4 + 1e-12:
        raise RepError("element is not hyperbolic")
    # the linear form x maps to column 0 of m, so forms transform by m itself
    w, v = np.linalg.eig(arr)
    i = int(np.argmax(np.abs(w)))
    return float(v[0, i].real), float(v[1, i].real)


def snap_point(lin: tuple[float, float], snap_tol: float = SNAP_TOL) -> tuple:
    a, b = lin
    den = int(round(1 / snap_tol))
    if abs(a) >= abs(b):
        return Fraction(1), Fraction(b / a).limit_denominator(den)
    return Fraction(a / b).limit_denominator(den), Fraction(1)


def point_angle(lin: Sequence) -> float:
    """Position of [lin] on the projective line as an angle in [0, pi)."""
    a, b = (float(x) for x in lin)
    return math.atan2(b, a) % math.pi


def fuchsian_locus_rep(sl2_gens: Mapping[str, Matrix], p: int, q: int,
                       twist: Mapping[str, Matrix] | None = None) -> Representation:
    """rho = tau(iota) + alpha, conjugated into the standard form of signature (p, q)."""
    emb = embedding(p, q)
    f = emb.form
    n = 2 * p - 2
    m = f.m
    gens = {}
    for name, g in sl2_gens.items():
        s = sym_power(g, n)
        a = twist[name] if twist and name in twist else None
        if m - 1 > 0:
            if a is None:
                a = Matrix.identity(m - 1)
            if a.shape != (m - 1, m - 1):
                raise RepError("twist of %s must be %dx%d" % (name, m - 1, m - 1))
            D = emb.complement_gram
            if a.T @ D @ a != D:
                raise RepError("twist of %s does not preserve the complement form" % name)
            if not _finite_order(a):
                raise RepError("twist of %s does not have finite order" % name)
        rows = [[Fraction(0)] * f.n for _ in range(f.n)]
        for i in range(n + 1):
            for j in range(n + 1):
                rows[i][j] = s[i, j]
        for i in range(m - 1):
            for j in range(m - 1):
                rows[n + 1 + i][n + 1 + j] = a[i, j]
        img = emb.C @ Matrix(rows) @ emb.Cinv
        if not is_isometry(f, img):
            raise RepError("image of %s failed the isometry check" % name)
        gens[name] = img
    return Representation(f, gens, dict(sl2_gens), dict(twist) if twist else None)


def _finite_order(a: Matrix, bound: int = 24) -> bool:
    g = a
    eye = Matrix.identity(a.rows)
    for _ in range(bound):
        if g == eye:
            return True
        g = g @ a
    return False


def hyperbolic(trace) -> Matrix:
    """A rational SL(2) element of the given trace (one of the default values)."""
    t = to_scalar(trace)
    table = {Fraction(5, 2): [[2, 0], [0, Fraction(1, 2)]],
             Fraction(17, 4): [[4, 0], [0, Fraction(1, 4)]],
             Fraction(3): [[2, 1], [1, 1]]}
    if t not in table:
        raise RepError("no stored element with trace %s" % scalar_str(t))
    return Matrix(table[t])


def default_base(trace_a=Fraction(5, 2), trace_b=Fraction(17, 4)) -> dict:
    """Two hyperbolic generators with interleaved fixed points (0, inf) and (-1, 1)."""
    r = Matrix([[1, -1], [1, 1]])
    a = hyperbolic(trace_a)
    bb = hyperbolic(trace_b)
    if bb[0, 1] != 0:
        raise RepError("second generator must be diagonal before conjugation")
    return {"a": a, "b": r @ bb @ inverse(r)}


# ---------------------------------------------------------------------------
# spectra

@dataclass(frozen=True)
class SpectralData:
    moduli: tuple          # ApproxReal, non-increasing
    gaps: tuple            # ApproxReal gap_k = |lambda_k| / |lambda_{k+1}|, k = 1..p-1

    def to_json(self) -> dict:
        return {"moduli": [[m.value, m.abs_tol] for m in self.moduli],
                "gaps": [[g.value, g.abs_tol] for g in self.gaps]}


def _ratio(a: ApproxReal, b: ApproxReal) -> ApproxReal:
    if a.exact is not None and b.exact is not None:
        r = a.exact / b.exact
        return ApproxReal(float(r), 0.0, r)
    if b.lo <= 0:
        raise EigenError("ratio with an interval containing zero")
    hi = a.hi / b.lo
    lo = max(a.lo, 0.0) / b.hi
    v = a.value / b.value
    return ApproxReal(v, max(hi - v, v - lo))


def spectral(g, max_tol: float = 1e-6) -> SpectralData:
    if isinstance(g, GroupElement):
        f, m = g.form, g.matrix
    else:
        raise RepError("spectral expects a GroupElement")
    mods = eigen_moduli(m, max_tol=max_tol)
    gaps = tuple(_ratio(mods[k], mods[k + 1]) for k in range(f.p - 1))
    return SpectralData(tuple(mods), gaps)


def _exact_eigvec(m: Matrix, lam: Fraction) -> tuple | None:
    ker = kernel(m - Matrix.identity(m.rows) * lam)
    if ker is None or ker.cols != 1:
        return None
    return ker.col(0)


def attracting_flag(g: GroupElement, snap_tol: float = SNAP_TOL, max_tol: float = 1e-6) -> PartialFlag:
    """Flag spanned by eigenvectors of the p-1 largest moduli, exact whenever those eigenvalues are rational."""
    f, m = g.form, g.matrix
    sd = spectral(g, max_tol)
    for k, gap in enumerate(sd.gaps, start=1):
        if gap.lo <= 1:
            raise RepError("no certified gap at k = %d" % k)
    top = sd.moduli[: f.p - 1]
    if all(x.exact is not None for x in top):
        vecs = []
        for x in top:
            v = _exact_eigvec(m, x.exact) or _exact_eigvec(m, -x.exact)
            if v is None:
                break
            vecs.append(v)
        else:
            return PartialFlag(f, Matrix.from_columns(vecs))
    return _snapped_flag(f, m, snap_tol)


def _snapped_flag(f: FormData, m: Matrix, snap_tol: float) -> PartialFlag:
    """Approximate eigenflag, snapped to an exact isotropic flag through the unipotent radical.

    The flag is u X (or K u X) with u = exp(A) for A nilpotent in the Lie algebra
    of U_Z; rounding A and projecting it back onto that Lie algebra keeps u an
    exact isometry.
    """
    from .pqspace import involution_K

    arr = m.to_float()
    w, v = np.linalg.eig(arr)
    order = np.argsort(-np.abs(w))
    top = order[: f.p - 1]
    if np.any(np.abs(w[top].imag) > 1e-9 * np.abs(w[top])):
        raise RepError("top eigenvalues are not real")
    Y = np.real(v[:, top])
    K = involution_K(f)
    for pre in (None, K):
        Yb = Y if pre is None else K.to_float() @ Y
        try:
            u = _float_unipotent(f, Yb)
        except np.linalg.LinAlgError:
            continue
        if u is None:
            continue
        uex = _exp_snap(f, u, snap_tol)
        X, _ = standard_flags(f)
        flag = X.apply(uex if pre is None else K @ uex)
        # the snapped flag must stay close to the float one
        B = flag.basis.to_float()
        for l in range(1, f.p):
            q1, _ = np.linalg.qr(B[:, :l])
            q2, _ = np.linalg.qr(Y[:, :l])
            s = np.linalg.svd(q1.T @ q2, compute_uv=False)
            if 1 - s.min() > 1e6 * snap_tol:
                break
        else:
            return flag
    raise RepError("could not snap the attracting flag")


def _float_unipotent(f: FormData, Y: np.ndarray) -> np.ndarray | None:
    n, p, q = f.n, f.p, f.q
    Q = f.Q.to_float()
    cols = {}
    for l in range(1, p):
        low = Y[n - l:, :l]
        if abs(np.linalg.det(low)) < 1e-10 * max(1.0, np.abs(low).max()) ** l:
            return None
        rhs = np.zeros(l)
        rhs[0] = 1.0
        c = np.linalg.solve(low, rhs)
        cols[n - l] = Y[:, :l] @ c
    known = np.array([cols[j] for j in range(q + 1, n)])
    qk = known @ Q
    for j in range(q, -1, -1):
        e = np.zeros(n)
        e[j] = 1.0
        free = list(range(min(j, p - 1)))
        if free:
            a = qk[:, free]
            rhs = Q[j, q + 1:] - qk[:, j]
            sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
            e[free] = sol
        cols[j] = e
    return np.array([cols[j] for j in range(n)]).T


def _exp_snap(f: FormData, u: np.ndarray, snap_tol: float) -> Matrix:
    n = f.n
    nil = u - np.eye(n)
    A = np.zeros((n, n))
    term = np.eye(n)
    for j in range(1, n + 1):
        term = term @ nil
        A += ((-1) ** (j + 1)) * term / j
    den = int(round(1 / snap_tol))
    Ar = Matrix([[Fraction(float(x)).limit_denominator(den) if abs(x) > snap_tol / 10 else 0 for x in row]
                 for row in A])
    Q = f.Q
    Ar = (Ar - inverse(Q) @ Ar.T @ Q) * Fraction(1, 2)
    ex = Matrix.identity(n)
    term = Matrix.identity(n)
    for j in range(1, n + 1):
        term = term @ Ar * Fraction(1, j)
        if term.is_zero():
            break
        ex = ex + term
    if not is_isometry(f, ex):
        raise RepError("snapped unipotent is not an isometry")
    return ex


# ---------------------------------------------------------------------------
# linked pairs

def _fixed_form(m: Matrix) -> tuple:
    # fixed points [x : y] of m satisfy c x^2 + (d - a) x y - b y^2 = 0
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    return c, d - a, -b


def _is_hyperbolic(m: Matrix) -> bool:
    tr = m[0, 0] + m[1, 1]
    return tr * tr > 4 * det(m)


def linked(g: Matrix, h: Matrix) -> bool:
    """Interleaving of the fixed points, decided by the sign of the resultant of the fixed-point forms."""
    if not (_is_hyperbolic(g) and _is_hyperbolic(h)):
        raise RepError("linked pairs need hyperbolic elements")
    A, B, C = _fixed_form(g)
    D, E, F = _fixed_form(h)
    res = (A * F - C * D) ** 2 - (A * E - B * D) * (B * F - C * E)
    return res < 0


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class Check:
    statement: str
    lhs: object
    rhs: object
    margin: float
    verdict: str            # PASS, FAIL or UNDECIDED

    def to_json(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return scalar_str(x)
            return x
        return {"statement": self.statement, "lhs": enc(self.lhs), "rhs": enc(self.rhs),
                "margin": self.margin, "verdict": self.verdict}


def _interval_verdict(lhs_lo, lhs_hi, rhs_lo, rhs_hi, strict: bool = True) -> tuple[str, float]:
    margin = float(rhs_lo - lhs_hi)
    if lhs_hi < rhs_lo or (not strict and lhs_hi <= rhs_lo):
        return "PASS", margin
    if lhs_lo > rhs_hi or (strict and lhs_lo >= rhs_hi):
        return "FAIL", margin
    return "UNDECIDED", margin


def collar_bound(mods: Sequence[ApproxReal], k: int) -> tuple:
    """Interval for (1 - |lambda_{k+1}/lambda_k|)^{-1}."""
    a, b = mods[k - 1], mods[k]
    if a.exact is not None and b.exact is not None:
        v = 1 / (1 - b.exact / a.exact)
        return v, v
    r_lo = max(b.lo, 0.0) / a.hi
    r_hi = b.hi / a.lo
    if r_hi >= 1:
        return 1 / (1 - r_lo), math.inf
    return 1 / (1 - r_lo), 1 / (1 - r_hi)


def weight(mods: Sequence[ApproxReal], k: int) -> tuple:
    """Interval for lambda_1^2 ... lambda_k^2."""
    top = mods[:k]
    if all(x.exact is not None for x in top):
        v = Fraction(1)
        for x in top:
            v *= x.exact ** 2
        return v, v
    lo = hi = 1.0
    for x in top:
        lo *= max(x.lo, 0.0) ** 2
        hi *= x.hi ** 2
    return lo, hi


def _sqrt_frac(x: Fraction) -> Fraction | None:
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    return Fraction(a, b) if a * a == x.numerator and b * b == x.denominator else None


def base_moduli(rep: Representation, word: str, rel_width: Fraction = Fraction(1, 10 ** 20)) -> list[ApproxReal]:
    """Moduli of rho(word) from the base trace: lambda^(n-2i) on Sym^n, 1 on the complement.

    lambda is the larger root of x^2 - |tr| x + 1, bracketed by exact bisection.
    """
    if rep.base is None:
        raise RepError("base moduli need base SL(2) data")
    m = rep.base_eval(word)
    t = abs(m[0, 0] + m[1, 1])
    if t <= 2:
        raise EigenError("base element %s is not hyperbolic" % word)
    n = 2 * rep.form.p - 2
    exps = sorted([n - 2 * i for i in range(n + 1)] + [0] * (rep.form.m - 1), reverse=True)
    root = _sqrt_frac(t * t - 4)
    if root is not None:
        lam = (t + root) / 2
        return [ApproxReal(float(lam ** e), 0.0, lam ** e) for e in exps]
    lo, hi = t - 1, t          # x^2 - t x + 1 changes sign on [t-1, t] when t > 2
    while hi - lo > rel_width * lo:
        mid = (lo + hi) / 2
        if mid * mid - t * mid + 1 < 0:
            lo = mid
        else:
            hi = mid
    out = []
    for e in exps:
        if e == 0:
            out.append(ApproxReal(1.0, 0.0, Fraction(1)))
            continue
        a, b = (lo ** e, hi ** e) if e > 0 else (hi ** e, lo ** e)
        mid = (a + b) / 2
        # pad for the float conversion of the endpoints
        out.append(ApproxReal(float(mid), float(b - mid) + 4 * abs(float(mid)) * 2.0 ** -52))
    return out


def rep_moduli(rep: Representation, word: str, max_tol: float = 1e-6) -> list[ApproxReal]:
    """Certified moduli: from the base trace for Fuchsian-locus data, else from the matrix."""
    if rep.base is not None:
        return base_moduli(rep, word)
    return eigen_moduli(rep.evaluate(word), max_tol=max_tol)


def collar_check(rep: Representation, g: str, h: str, k: int, max_tol: float = 1e-6) -> Check:
    """(1 - |lambda_{k+1}/lambda_k (h)|)^{-1} < lambda_1^2 ... lambda_k^2 (g) for a linked pair."""
    f = rep.form
    if not 1 <= k <= f.p - 1:
        raise RepError("k must lie in 1..%d" % (f.p - 1))
    if rep.base is not None and not linked(rep.base_eval(g), rep.base_eval(h)):
        raise RepError("%s and %s are not linked" % (g, h))
    try:
        mh, mg = (rep_moduli(rep, w, max_tol) for w in (h, g))
    except EigenError as exc:
        return Check("collar k=%d g=%s h=%s (%s)" % (k, g, h, exc), None, None, float("nan"), "UNDECIDED")
    llo, lhi = collar_bound(mh, k)
    rlo, rhi = weight(mg, k)
    verdict, margin = _interval_verdict(llo, lhi, rlo, rhi)
    lhs = llo if llo == lhi else float(lhi)
    rhs = rlo if rlo == rhi else float(rlo)
    return Check("collar k=%d g=%s h=%s" % (k, g, h), lhs, rhs, margin, verdict)


CR_SNAP_BUDGET = 1e-6


def ratioed_check(rep: Representation, words: Sequence[str], k: int, snap_tol: float = SNAP_TOL) -> Check:
    """cr_k of the attracting flags of four words whose fixed points are cyclically ordered."""
    from .crossratio import cr

    if len(words) != 4:
        raise RepError("need four words")
    f = rep.form
    if not 1 <= k <= f.p - 1:
        raise RepError("k must lie in 1..%d" % (f.p - 1))
    pts = [rep.attracting_point(w, snap_tol) for w in words]
    if not cyclically_ordered([point_angle(x) for x in pts]):
        raise RepError("attracting points are not cyclically ordered")
    fl = [rep.boundary_flag(x) for x in pts]
    val = cr(fl[0].level(k), fl[1].level(k), fl[2].level(k), fl[3].level(k))
    # flags lie exactly on the boundary curve; the budget covers the snap of the points
    verdict, margin = _interval_verdict(1.0, 1.0 + CR_SNAP_BUDGET, float(val), float(val))
    return Check("ratioed k=%d %s" % (k, ",".join(words)), Fraction(1), val, margin, verdict)


def cyclically_ordered(angles: Sequence[float]) -> bool:
    """True if the points occur in this (or the reversed) cyclic order on the circle."""
    n = len(angles)
    if len(set(angles)) != n:
        return False
    start = min(range(n), key=lambda i: angles[i])
    fwd = [angles[(start + i) % n] for i in range(n)]
    back = [angles[(start - i) % n] for i in range(n)]
    return any(all(r[i] < r[i + 1] for i in range(n - 1)) for r in (fwd, back))


__all__ = [
    "base_moduli",
    "rep_moduli",
    "Check",
    "Embedding",
    "GroupElement",
    "RepError",
    "Representation",
    "SpectralData",
    "attracting_flag",
    "collar_check",
    "curve_flag",
    "cyclically_ordered",
    "default_base",
    "embedding",
    "fuchsian_locus_rep",
    "linked",
    "point_angle",
    "snap_point",
    "ratioed_check",
    "spectral",
    "sym_form",
    "sym_power",
]
