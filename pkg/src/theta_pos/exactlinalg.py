"""Exact rational matrices and the few approximate quantities we need.

Every certified computation in the package runs over :class:`fractions.Fraction`.
Eigenvalue moduli are the only floating point outputs; each one carries an
explicit absolute tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

Scalar = Fraction


class LinalgError(ValueError):
    pass


class EigenError(ArithmeticError):
    """Raised when the spectral solver cannot produce a usable bound."""


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("refusing to coerce float to an exact scalar: %r" % x)
    return Fraction(x)


def scalar_str(x: Fraction) -> str:
    x = to_scalar(x)
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def _init(m, e: tuple) -> None:
    object.__setattr__(m, "_e", e)
    object.__setattr__(m, "rows", len(e))
    object.__setattr__(m, "cols", len(e[0]))
    object.__setattr__(m, "_hash", None)


class Matrix:
    """Immutable dense matrix over the rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries: Iterable[Iterable]):
        e = tuple(tuple(to_scalar(x) for x in row) for row in entries)
        if not e or not e[0]:
            raise LinalgError("matrices must have at least one row and column")
        width = len(e[0])
        if any(len(r) != width for r in e):
            raise LinalgError("ragged rows")
        _init(self, e)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, e: tuple) -> "Matrix":
        # trusted constructor: e is already a tuple of tuples of Fraction
        m = object.__new__(cls)
        _init(m, e)
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * c for _ in range(r)))

    @classmethod
    def column(cls, vec: Iterable) -> "Matrix":
        return cls([[x] for x in vec])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(len(columns[0]))])

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple:
        return self._e

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._e)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError("shape mismatch %s @ %s" % (self.shape, other.shape))
        # row-sparse accumulation: most matrices here are elementary or block sparse
        sparse = [[(j, b) for j, b in enumerate(row) if b] for row in other._e]
        zero = Fraction(0)
        width = other.cols
        out = []
        for r in self._e:
            acc = [zero] * width
            for k, a in enumerate(r):
                if a:
                    if a == 1:
                        for j, b in sparse[k]:
                            acc[j] += b
                    else:
                        for j, b in sparse[k]:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out))

    def __mul__(self, s) -> "Matrix":
        s = to_scalar(s)
        return Matrix._raw(tuple(tuple(s * x for x in r) for r in self._e))

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise LinalgError("shape mismatch")
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise LinalgError("shape mismatch")
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self._e))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._e == other._e

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._e))
        return self._hash

    def __repr__(self) -> str:
        return "Matrix(%s)" % json_rows(self)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._e[i][j] for j in cols) for i in rows))

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        if len({m.rows for m in mats}) != 1:
            raise LinalgError("hstack needs equal row counts")
        return Matrix._raw(tuple(sum((m._e[i] for m in mats), ()) for i in range(self.rows)))

    def vstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        if len({m.cols for m in mats}) != 1:
            raise LinalgError("vstack needs equal column counts")
        return Matrix._raw(sum((m._e for m in mats), ()))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._e)

    def to_float(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self._e], dtype=float)

    def to_json(self) -> list:
        return json_rows(self)

    @classmethod
    def from_json(cls, rows: list) -> "Matrix":
        return cls(rows)


def json_rows(m: Matrix) -> list:
    return [[scalar_str(x) for x in r] for r in m.entries]


def vector(values: Iterable) -> tuple:
    return tuple(to_scalar(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# fraction-free elimination

def _integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns rows and the product of scales."""
    rows = []
    scale = 1
    for r in m.entries:
        d = reduce(math.lcm, (x.denominator for x in r), 1)
        rows.append([x.numerator * (d // x.denominator) for x in r])
        scale *= d
    return rows, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """In-place Bareiss elimination on an integer matrix.

    Returns (rank, sign*last_pivot) where the second value is the determinant
    when the matrix is square and of full rank.
    """
    nr, nc = len(a), len(a[0])
    prev = 1
    sign = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nr):
            ri = a[i]
            f = ri[c]
            for j in range(c + 1, nc):
                ri[j] = (pv * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        prev = pv
        r += 1
    return r, sign * prev


def det(m: Matrix) -> Fraction:
    if not m.is_square():
        raise LinalgError("det of non-square %dx%d matrix" % m.shape)
    a, scale = _integer_rows(m)
    rank, d = _bareiss(a)
    if rank < m.rows:
        return Fraction(0)
    return Fraction(d, scale)


def rank(m: Matrix) -> int:
    a, _ = _integer_rows(m)
    return _bareiss(a)[0]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a), pivots


def kernel(m: Matrix) -> Matrix | None:
    """Column basis of the right null space, or None if it is trivial."""
    red, pivots = rref(m)
    free = [j for j in range(m.cols) if j not in pivots]
    if not free:
        return None
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, f]
        basis.append(v)
    return Matrix.from_columns(basis)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """One exact solution x of a @ x = b, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise LinalgError("solve: %d rows vs %d rows" % (a.rows, b.rows))
    red, pivots = rref(a.hstack(b))
    n = a.cols
    if any(p >= n for p in pivots):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(n)]
    for r, pc in enumerate(pivots):
        for j in range(b.cols):
            x[pc][j] = red[r, n + j]
    return Matrix(x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise LinalgError("inverse of non-square matrix")
    x = solve(m, Matrix.identity(m.rows))
    if x is None or rank(m) < m.rows:
        raise LinalgError("singular matrix")
    return x


def column_space_basis(m: Matrix) -> Matrix | None:
    """Independent subset of the columns of m spanning its column space."""
    _, pivots = rref(m)
    if not pivots:
        return None
    return m.submatrix(range(m.rows), pivots)


def intersect(a: Matrix, b: Matrix) -> Matrix | None:
    """Column basis of colspan(a) ∩ colspan(b); inputs must have independent columns."""
    ker = kernel(a.hstack(-b))
    if ker is None:
        return None
    coeffs = ker.submatrix(range(a.cols), range(ker.cols))
    return column_space_basis(a @ coeffs)


def symmetric_signature(g: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix, by exact congruence."""
    if g.T != g:
        raise LinalgError("signature of a non-symmetric matrix")
    diag = ldl_diagonal(g)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, len(diag) - pos - neg


def ldl_diagonal(g: Matrix) -> list[Fraction]:
    """Diagonal of an exact congruence diagonalization of a symmetric matrix."""
    _, d = congruence_diagonalize(g)
    return d


def congruence_diagonalize(g: Matrix) -> tuple[Matrix, list[Fraction]]:
    """Return (C, d) with C invertible and C^t g C = diag(d)."""
    n = g.rows
    a = [list(r) for r in g.entries]
    c = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def col_op(i, j, f):  # column_i += f * column_j, and the matching row op
        for r in range(n):
            a[r][i] += f * a[r][j]
        for r in range(n):
            a[i][r] += f * a[j][r]
        for r in range(n):
            c[r][i] += f * c[r][j]

    def swap(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    for k in range(n):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if piv is not None:
                swap(k, piv)
            else:
                other = next((i for i in range(k + 1, n) if a[k][i] != 0), None)
                if other is None:
                    continue
                col_op(k, other, Fraction(1))
                if a[k][k] == 0:
                    col_op(k, other, Fraction(-2))
        pv = a[k][k]
        if pv == 0:
            continue
        for i in range(k + 1, n):
            if a[k][i]:
                col_op(i, k, -a[k][i] / pv)
    return Matrix(c), [a[i][i] for i in range(n)]


# ---------------------------------------------------------------------------
# approximate spectra

@dataclass(frozen=True)
class ApproxReal:
    value: float
    abs_tol: float
    exact: Fraction | None = None

    def __post_init__(self):
        if not self.abs_tol >= 0:
            raise ValueError("abs_tol must be >= 0")

    @property
    def lo(self) -> float:
        return self.value - self.abs_tol

    @property
    def hi(self) -> float:
        return self.value + self.abs_tol

    def indistinguishable(self, other: "ApproxReal") -> bool:
        return abs(self.value - other.value) <= self.abs_tol + other.abs_tol


def charpoly(m: Matrix) -> list[Fraction]:
    """Coefficients of det(xI - m), highest degree first (Faddeev-LeVerrier)."""
    n = m.rows
    coeffs = [Fraction(1)]
    mk = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + eye * coeffs[-1])
        c = -sum((mk[i, i] for i in range(n)), Fraction(0)) / k
        coeffs.append(c)
    return coeffs


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[Fraction], r: Fraction) -> list[Fraction]:
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * r)
    return out


def _rational_root_near(poly: Sequence[Fraction], x: float, max_den: int) -> Fraction | None:
    den = 1
    while den <= max_den:
        cand = Fraction(x).limit_denominator(den)
        if _poly_eval(poly, cand) == 0:
            return cand
        den *= 10
    return None


def _triangular(m: Matrix) -> bool:
    n = m.rows
    upper = all(m[i, j] == 0 for i in range(n) for j in range(i))
    lower = all(m[i, j] == 0 for i in range(n) for j in range(i + 1, n))
    return upper or lower


def eigen_moduli(m: Matrix, max_den: int = 10**6, max_tol: float = 1e-6) -> list[ApproxReal]:
    """Sorted (non-increasing) moduli of the eigenvalues of m.

    Rational eigenvalues are recovered exactly from the characteristic
    polynomial and reported with zero tolerance.  The rest come from a float
    eigendecomposition; their tolerance is the Bauer-Fike bound
    cond(V) * ||A V - V diag(w)||, which also absorbs float round-off.
    """
    if not m.is_square():
        raise LinalgError("eigen_moduli of non-square matrix")
    n = m.rows
    if _triangular(m):
        vals = sorted((abs(m[i, i]) for i in range(n)), reverse=True)
        return [ApproxReal(float(v), 0.0, v) for v in vals]

    a = m.to_float()
    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numpy rarely raises here
        raise EigenError(str(exc)) from exc

    poly = charpoly(m)
    exact: list[Fraction] = []
    rest = []
    for lam in sorted(w, key=lambda z: -abs(z)):
        if abs(lam.imag) < 1e-4 * max(1.0, abs(lam)) and len(poly) > 1:
            root = _rational_root_near(poly, float(lam.real), max_den)
            if root is not None:
                exact.append(root)
                poly = _deflate(poly, root)
                continue
        rest.append(lam)

    out = [ApproxReal(float(abs(r)), 0.0, abs(r)) for r in exact]
    if rest:
        norm_a = np.linalg.norm(a, 2)
        resid = np.linalg.norm(a @ v - v * w, 2)
        try:
            cond = np.linalg.cond(v)
        except np.linalg.LinAlgError:
            cond = math.inf
        tol = cond * resid + 64 * np.finfo(float).eps * max(norm_a, 1.0) * n
        if not math.isfinite(tol) or tol > max_tol:
            raise EigenError("eigenvalue residual bound %.3g exceeds %.3g" % (tol, max_tol))
        out.extend(ApproxReal(float(abs(z)), float(tol)) for z in rest)
    out.sort(key=lambda r: -r.value)
    return out
