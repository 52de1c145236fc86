"""The quadratic space R^{p,q} in the basis adapted to the Theta-positive structure.

Coordinates are 0-based in code.  With n = p + q the form pairs e_i with
e_{n-1-i} through the antidiagonal block K for i < p - 1, and the middle block
V_J = span(e_{p-1}, ..., e_q) carries J = antidiag(1; -Id_{q-p}; 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactlinalg import (
    LinalgError,
    Matrix,
    congruence_diagonalize,
    inverse,
    scalar_str,
    symmetric_signature,
    vector,
)


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise FormError("signature entries must be integers")
        if self.p < 2 or self.q <= self.p:
            raise FormError("need 2 <= p < q, got (%d, %d)" % (self.p, self.q))

    @property
    def n(self) -> int:
        return self.p + self.q


class ConeClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def standard_J(m: int) -> Matrix:
    return Matrix([[1 if (i, j) in ((0, m - 1), (m - 1, 0)) else (-1 if i == j and 0 < i < m - 1 else 0)
                    for j in range(m)] for i in range(m)])


def standard_K(p: int) -> Matrix:
    # K[i, p-i] = (-1)^(p-i) in 1-based indices
    return Matrix([[(-1) ** (p - i) if j == p - i else 0 for j in range(1, p)] for i in range(1, p)])


@dataclass(frozen=True, eq=False)
class FormData:
    """Blocks of the form Q.  ``J`` is the standard block unless a frame was requested."""

    sig: Signature
    Q: Matrix
    J: Matrix
    K: Matrix
    standard: bool = True
    cone_ref: tuple = field(default=())

    @property
    def p(self) -> int:
        return self.sig.p

    @property
    def q(self) -> int:
        return self.sig.q

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def m(self) -> int:
        """Dimension of V_J."""
        return self.q - self.p + 2

    @property
    def vj_range(self) -> range:
        return range(self.p - 1, self.q + 1)

    @cached_property
    def Jinv(self) -> Matrix:
        return self.J if self.standard else inverse(self.J)

    def pair(self, u: Sequence, v: Sequence) -> Fraction:
        """Q(u, v) for coordinate vectors."""
        qe = self.Q.entries
        acc = Fraction(0)
        for i, a in enumerate(u):
            if a:
                row = qe[i]
                for j, b in enumerate(v):
                    if b and row[j]:
                        acc += a * row[j] * b
        return acc

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "Q": self.Q.to_json(), "J": self.J.to_json(), "K": self.K.to_json()}

    def __eq__(self, other) -> bool:
        return isinstance(other, FormData) and self.Q == other.Q

    def __hash__(self) -> int:
        return hash(self.Q)


def _assemble(p: int, q: int, J: Matrix, K: Matrix) -> Matrix:
    n = p + q
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(p - 1):
        for j in range(p - 1):
            rows[i][q + 1 + j] = K[i, j]
            rows[q + 1 + j][i] = K[i, j]
    for i in range(J.rows):
        for j in range(J.cols):
            rows[p - 1 + i][p - 1 + j] = J[i, j]
    return Matrix(rows)


def build_form(p: int | Signature, q: int | None = None) -> FormData:
    sig = p if isinstance(p, Signature) else Signature(p, q)
    J = standard_J(sig.q - sig.p + 2)
    K = standard_K(sig.p)
    Q = _assemble(sig.p, sig.q, J, K)
    pos, neg, zero = symmetric_signature(Q)
    if (pos, neg, zero) != (sig.p, sig.q, 0):
        raise FormError("assembled form has signature %s" % ((pos, neg, zero),))
    return _checked(FormData(sig, Q, J, K))


def form_with_middle(f: FormData, G: Matrix) -> FormData:
    """Same outer blocks as ``f`` but a custom middle Gram matrix of signature (1, m-1).

    Used as the normalising frame of positivity tests, where the orthogonal of a
    pair of transverse flags is only congruent to J over the reals.
    """
    if G.shape != (f.m, f.m) or G.T != G:
        raise FormError("middle block must be a symmetric %dx%d matrix" % (f.m, f.m))
    if G == f.J:
        return f
    if symmetric_signature(G) != (1, f.m - 1, 0):
        raise FormError("middle block has wrong signature")
    Q = _assemble(f.p, f.q, G, f.K)
    C, d = congruence_diagonalize(inverse(G))
    idx = next(i for i, x in enumerate(d) if x > 0)
    ref = C.col(idx)
    return FormData(f.sig, Q, G, f.K, standard=False, cone_ref=ref)


def _checked(f: FormData) -> FormData:
    # the elementary matrices must be exact isometries; flip K globally otherwise
    from .positivity import elementary  # local import: positivity depends on this module

    def ok(form):
        for k in range(1, form.p):
            for s in _probe_params(form, k):
                if not is_isometry(form, elementary(form, k, s)):
                    return False
        return True

    if ok(f):
        return f
    K = -f.K
    g = FormData(f.sig, _assemble(f.p, f.q, f.J, K), f.J, K)
    if ok(g):
        return g
    raise FormError("no sign convention for K makes the elementary matrices isometries")


def _probe_params(f: FormData, k: int) -> list:
    if k <= f.p - 2:
        return [Fraction(1)]
    m = f.m
    basis = [tuple(Fraction(int(i == j)) for i in range(m)) for j in range(m)]
    timelike = tuple(Fraction(1) if i in (0, m - 1) else Fraction(0) for i in range(m))
    return basis + [timelike]


def _vj(f: FormData, s) -> tuple:
    s = vector(s)
    if len(s) != f.m:
        raise FormError("V_J vectors have dimension %d, got %d" % (f.m, len(s)))
    return s


def bJ(f: FormData, s, t) -> Fraction:
    s, t = _vj(f, s), _vj(f, t)
    Je = f.J.entries
    return sum((s[i] * Je[i][j] * t[j] for i in range(f.m) for j in range(f.m) if Je[i][j]),
               Fraction(0)) / 2


def qJ(f: FormData, s) -> Fraction:
    return bJ(f, s, s)


def param_b(f: FormData, s, t) -> Fraction:
    """Bilinear form on the parameter of E_{p-1}; equals bJ in the standard frame."""
    if f.standard:
        return bJ(f, s, t)
    Ji = f.Jinv.entries
    return sum((s[i] * Ji[i][j] * t[j] for i in range(f.m) for j in range(f.m) if Ji[i][j]),
               Fraction(0)) / 2


def param_q(f: FormData, s) -> Fraction:
    return param_b(f, s, s)


def cone_classify(f: FormData, s) -> ConeClass:
    """Membership of a V_J vector (or an E_{p-1} parameter in a non-standard frame)."""
    s = _vj(f, s)
    if f.standard:
        lead = s[0]
        val = qJ(f, s)
    else:
        lead = param_b(f, s, f.cone_ref)
        val = param_q(f, s)
    if lead > 0 and val > 0:
        return ConeClass.INTERIOR
    if lead > 0 and val == 0:
        return ConeClass.BOUNDARY
    return ConeClass.OUTSIDE


def is_isometry(f: FormData, g: Matrix) -> bool:
    if g.shape != (f.n, f.n):
        raise FormError("expected a %dx%d matrix" % (f.n, f.n))
    return g.T @ f.Q @ g == f.Q


def _sign_solve(n: int, constraints: list[tuple[int, int, int]]) -> list[int] | None:
    """Solve x_i + x_j = c over GF(2); return signs (-1)^x_i with x_0 = 0 where free."""
    parent = list(range(n))
    parity = [0] * n

    def find(i):
        if parent[i] == i:
            return i, 0
        root, par = find(parent[i])
        parent[i] = root
        parity[i] ^= par
        return root, parity[i]

    for i, j, c in constraints:
        ri, pi = find(i)
        rj, pj = find(j)
        if ri == rj:
            if pi ^ pj != c:
                return None
        else:
            parent[rj] = ri
            parity[rj] = pi ^ pj ^ c
    signs = []
    for i in range(n):
        _, par = find(i)
        signs.append(-1 if par else 1)
    return signs


def involution_H(f: FormData) -> Matrix:
    """Diagonal sign isometry with H E_k(s) H = E_k(-s) for every k."""
    from .positivity import elementary

    constraints = []
    qe = f.Q.entries
    for i in range(f.n):
        for j in range(i, f.n):
            if qe[i][j]:
                constraints.append((i, j, 0))
    for k in range(1, f.p):
        for s in _probe_params(f, k):
            e = elementary(f, k, s)
            for i in range(f.n):
                for j in range(f.n):
                    if i != j and e[i, j]:
                        quadratic = k == f.p - 1 and (i, j) == (f.p - 2, f.q + 1)
                        constraints.append((i, j, 0 if quadratic else 1))
    signs = _sign_solve(f.n, constraints)
    if signs is None:
        raise FormError("no diagonal sign pattern conjugates E_k(s) to E_k(-s)")
    H = Matrix.diag(signs)
    if not is_isometry(f, H):
        raise FormError("sign pattern is not an isometry")
    return H


def involution_K(f: FormData) -> Matrix:
    """Involution swapping Z and X with K E_k(s) K = E_k(s)^t, found by sign search."""
    from .positivity import elementary

    n, p = f.n, f.p
    mid = list(f.vj_range)
    for bits in range(2 ** p):
        sigma = [-1 if bits >> i & 1 else 1 for i in range(p - 1)]
        tau = -1 if bits >> (p - 1) & 1 else 1
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(p - 1):
            rows[n - 1 - i][i] = Fraction(sigma[i])
            rows[i][n - 1 - i] = Fraction(sigma[i])
        for a, i in enumerate(mid):
            for b, j in enumerate(mid):
                rows[i][j] = tau * f.J[a, b]
        K = Matrix(rows)
        if K @ K != Matrix.identity(n) or not is_isometry(f, K):
            continue
        good = True
        for k in range(1, p):
            for s in _probe_params(f, k):
                e = elementary(f, k, s)
                if K @ e @ K != e.T:
                    good = False
                    break
            if not good:
                break
        if good:
            return K
    raise FormError("no sign adjustment of K satisfies the conjugation identities")


def vj_to_json(s) -> list:
    return [scalar_str(x) for x in s]


__all__ = [
    "ConeClass",
    "FormData",
    "FormError",
    "LinalgError",
    "Signature",
    "bJ",
    "build_form",
    "cone_classify",
    "form_with_middle",
    "involution_H",
    "involution_K",
    "is_isometry",
    "param_b",
    "param_q",
    "qJ",
    "vj_to_json",
]
