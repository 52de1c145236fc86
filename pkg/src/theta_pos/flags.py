"""Isotropic subspaces and partial flags in F_{p-1}(R^{p,q}).

A flag is stored as one adapted basis: level l is spanned by its first l
columns.  Orthogonal levels x^{q+l} = (x^{p-l})^perp are computed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlinalg import (
    Matrix,
    det,
    intersect,
    json_rows,
    kernel,
    rank,
    solve,
    symmetric_signature,
)
from .pqspace import FormData, build_form


class FlagError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IsotropicSubspace:
    form: FormData
    basis: Matrix

    def __post_init__(self):
        b = self.basis
        if b.rows != self.form.n:
            raise FlagError("basis vectors must have %d coordinates" % self.form.n)
        if rank(b) != b.cols:
            raise FlagError("basis columns are dependent")
        if not (b.T @ self.form.Q @ b).is_zero():
            raise FlagError("subspace is not isotropic")
        if b.cols > self.form.p:
            raise FlagError("isotropic subspaces have dimension at most p")

    @property
    def k(self) -> int:
        return self.basis.cols

    def perp(self) -> Matrix:
        return kernel(self.basis.T @ self.form.Q)

    def apply(self, g: Matrix) -> "IsotropicSubspace":
        return IsotropicSubspace(self.form, g @ self.basis)

    def same_as(self, other: "IsotropicSubspace") -> bool:
        return self.k == other.k and rank(self.basis.hstack(other.basis)) == self.k

    def __eq__(self, other) -> bool:
        return isinstance(other, IsotropicSubspace) and self.same_as(other)

    __hash__ = None


def span(form: FormData, *vectors: Sequence) -> IsotropicSubspace:
    return IsotropicSubspace(form, Matrix.from_columns(vectors))


def transverse(v: IsotropicSubspace, w: IsotropicSubspace) -> bool:
    """V + W^perp is direct, i.e. the Gram pairing of the two bases is nonsingular."""
    if v.form != w.form or v.k != w.k:
        raise FlagError("transversality needs subspaces of one form and one dimension")
    return det(v.basis.T @ v.form.Q @ w.basis) != 0


@dataclass(frozen=True, eq=False)
class PartialFlag:
    form: FormData
    basis: Matrix  # n x (p-1), adapted

    def __post_init__(self):
        f, b = self.form, self.basis
        if b.shape != (f.n, f.p - 1):
            raise FlagError("flag basis must be %dx%d" % (f.n, f.p - 1))
        if rank(b) != f.p - 1:
            raise FlagError("flag basis has dependent columns")
        if not (b.T @ f.Q @ b).is_zero():
            raise FlagError("top level of the flag is not isotropic")

    @classmethod
    def from_levels(cls, form: FormData, levels: Sequence[Matrix]) -> "PartialFlag":
        if len(levels) != form.p - 1:
            raise FlagError("expected %d levels" % (form.p - 1))
        cols: list = []
        for l, lev in enumerate(levels, start=1):
            if lev.cols != l:
                raise FlagError("level %d has %d basis vectors" % (l, lev.cols))
            if cols:
                prev = Matrix.from_columns(cols)
                if rank(prev.hstack(lev)) != l:
                    raise FlagError("levels are not nested at %d" % l)
                extra = next(c for c in lev.columns() if rank(prev.hstack(Matrix.column(c))) == l)
            else:
                extra = lev.col(0)
            cols.append(extra)
        return cls(form, Matrix.from_columns(cols))

    @property
    def p(self) -> int:
        return self.form.p

    def level(self, l: int) -> IsotropicSubspace:
        if not 1 <= l <= self.p - 1:
            raise FlagError("isotropic levels run from 1 to %d" % (self.p - 1))
        return IsotropicSubspace(self.form, self.basis.submatrix(range(self.form.n), range(l)))

    def level_basis(self, l: int) -> Matrix | None:
        """Basis of x^l for any l in 0..n; levels above p-1 are orthogonals."""
        f = self.form
        if l == 0:
            return None
        if l <= f.p - 1:
            return self.basis.submatrix(range(f.n), range(l))
        if l >= f.n:
            return Matrix.identity(f.n)
        if f.q + 1 <= l:
            return self.level(f.n - l).perp()
        raise FlagError("x^%d is not part of the flag" % l)

    def apply(self, g: Matrix) -> "PartialFlag":
        return PartialFlag(self.form, g @ self.basis)

    def same_as(self, other: "PartialFlag") -> bool:
        return all(self.level(l).same_as(other.level(l)) for l in range(1, self.p))

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialFlag) and self.form == other.form and self.same_as(other)

    __hash__ = None

    def to_json(self) -> dict:
        return {"p": self.form.p, "q": self.form.q,
                "levels": [json_rows(self.level_basis(l)) for l in range(1, self.p)]}

    @classmethod
    def from_json(cls, data: dict, form: FormData | None = None) -> "PartialFlag":
        form = form or build_form(int(data["p"]), int(data["q"]))
        return cls.from_levels(form, [Matrix(lev) for lev in data["levels"]])


def transverse_flags(x: PartialFlag, y: PartialFlag) -> bool:
    if x.form != y.form:
        raise FlagError("flags live in different forms")
    return all(transverse(x.level(l), y.level(l)) for l in range(1, x.p))


def standard_flags(f: FormData) -> tuple[PartialFlag, PartialFlag]:
    """(X, Z) with Z^l = <e_1..e_l> and X^l = <e_n, ..., e_{n-l+1}>."""
    n, p = f.n, f.p
    eye = Matrix.identity(n)
    Z = PartialFlag(f, eye.submatrix(range(n), range(p - 1)))
    X = PartialFlag(f, eye.submatrix(range(n), [n - 1 - i for i in range(p - 1)]))
    return X, Z


def _line_in(a: Matrix, b: Matrix) -> tuple:
    inter = intersect(a, b)
    if inter is None or inter.cols != 1:
        raise FlagError("intersection has dimension %s, expected 1" % (0 if inter is None else inter.cols))
    return inter.col(0)


def hybrid(x: PartialFlag, y: PartialFlag, k: int) -> PartialFlag:
    """The (x, k)-hybrid flag: level k of x replaced by a mix of x and y."""
    f = x.form
    if not 1 <= k <= f.p - 1:
        raise FlagError("k must lie in 1..%d" % (f.p - 1))
    if not transverse_flags(x, y):
        raise FlagError("hybrid flags need transverse input")
    if k <= f.p - 2:
        v = _line_in(x.level_basis(k + 1), y.level_basis(f.n - k))
    else:
        v = _line_in(x.level_basis(f.q + 2), y.level_basis(f.p - 1))
    old = list(x.basis.columns())
    cols = old[:]
    cols[k - 1] = v
    if rank(Matrix.from_columns(cols[:k])) != k:
        raise FlagError("hybrid level degenerates")
    if k <= f.p - 2 and rank(Matrix.from_columns(cols[:k + 1])) != k + 1:
        # v fell into <x^{k-1}, old column k>; the old column k-1 completes x^{k+1}
        cols[k] = old[k - 1]
    return PartialFlag(f, Matrix.from_columns(cols))


def check_Hk(x: PartialFlag, y: PartialFlag, z: PartialFlag, k: int) -> bool:
    """Directness of x^k + (y^k ∩ z^{n-k+1}) + z^{n-k-1}."""
    f = x.form
    if not 1 <= k <= f.p - 2:
        raise FlagError("property H_k needs 1 <= k <= p-2")
    for a, b in ((x, y), (y, z), (x, z)):
        if not transverse_flags(a, b):
            raise FlagError("property H_k needs pairwise transverse flags")
    mid = intersect(y.level_basis(k), z.level_basis(f.n - k + 1))
    parts = [x.level_basis(k), z.level_basis(f.n - k - 1)]
    if mid is not None:
        parts.insert(1, mid)
    total = parts[0].hstack(*parts[1:])
    return rank(total) == sum(m.cols for m in parts)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """x^{q+2} / x^{p-2} with the induced form of signature (2, q-p+2)."""

    base: PartialFlag
    lift: Matrix       # columns: basis of x^{q+2}; first p-2 columns span x^{p-2}
    gram: Matrix       # induced form on the complement columns of ``lift``

    @property
    def dim(self) -> int:
        return self.gram.rows

    def coordinates(self, v: Sequence) -> tuple:
        """Quotient coordinates of a vector lying in x^{q+2}."""
        sol = solve(self.lift, Matrix.column(v))
        if sol is None:
            raise FlagError("vector is not in x^{q+2}")
        drop = self.lift.cols - self.dim
        return tuple(sol[i, 0] for i in range(drop, self.lift.cols))


def quotient(x: PartialFlag) -> QuotientSpace:
    f = x.form
    if f.p == 2:
        eye = Matrix.identity(f.n)
        return QuotientSpace(x, eye, f.Q)
    low = x.level_basis(f.p - 2)
    top = x.level_basis(f.q + 2)
    # complete the basis of x^{p-2} to one of x^{q+2}
    cols = list(low.columns())
    for c in top.columns():
        trial = Matrix.from_columns(cols + [c])
        if rank(trial) == len(cols) + 1:
            cols.append(c)
    lift = Matrix.from_columns(cols)
    comp = lift.submatrix(range(f.n), range(f.p - 2, lift.cols))
    gram = comp.T @ f.Q @ comp
    if symmetric_signature(gram) != (2, f.q - f.p + 2, 0):
        raise FlagError("induced form has signature %s" % (symmetric_signature(gram),))
    return QuotientSpace(x, lift, gram)


def project_line(qs: QuotientSpace, y: PartialFlag) -> tuple:
    """Quotient coordinates of [y^{p-1} ∩ x^{q+2}] (or [x^{p-1}] when y = x)."""
    x = qs.base
    f = x.form
    if f.p == 2:
        return y.basis.col(0)
    if y.same_as(x):
        v = x.basis.col(f.p - 2)
    else:
        v = _line_in(y.level_basis(f.p - 1), x.level_basis(f.q + 2))
    c = qs.coordinates(v)
    if all(a == 0 for a in c):
        raise FlagError("projected line vanishes in the quotient")
    return c


def quotient_pair(qs: QuotientSpace, u: Sequence, v: Sequence) -> Fraction:
    g = qs.gram
    return sum((u[i] * g[i, j] * v[j] for i in range(g.rows) for j in range(g.cols) if g[i, j]), Fraction(0))
