"""Cross ratios of isotropic k-planes and finite-difference derivatives along cone paths."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlinalg import Matrix, det, intersect, rank, solve, to_scalar
from .flags import FlagError, IsotropicSubspace, PartialFlag, standard_flags
from .positivity import elementary


class CrossRatioError(ValueError):
    pass


@dataclass(frozen=True)
class CrossRatioInput:
    V1: IsotropicSubspace
    W1: IsotropicSubspace
    W2: IsotropicSubspace
    V2: IsotropicSubspace

    def __post_init__(self):
        subs = (self.V1, self.W1, self.W2, self.V2)
        if len({s.k for s in subs}) != 1 or any(s.form != self.V1.form for s in subs):
            raise CrossRatioError("all four subspaces need one form and one dimension")

    @property
    def k(self) -> int:
        return self.V1.k


def _wedge(v: Matrix, wperp: Matrix) -> Fraction:
    return det(v.hstack(wperp))


def cr_k(inp: CrossRatioInput) -> Fraction:
    """(V1^W2perp)(V2^W1perp) / (V1^W1perp)(V2^W2perp), wedges as determinants."""
    p1, p2 = inp.W1.perp(), inp.W2.perp()
    den = _wedge(inp.V1.basis, p1) * _wedge(inp.V2.basis, p2)
    if den == 0:
        raise CrossRatioError("quadruple is not in A_k: some V_i is not transverse to some W_j")
    num = _wedge(inp.V1.basis, p2) * _wedge(inp.V2.basis, p1)
    if num == 0:
        raise CrossRatioError("quadruple is not in A_k: some V_i is not transverse to some W_j")
    return num / den


def cr(V1, W1, W2, V2) -> Fraction:
    return cr_k(CrossRatioInput(V1, W1, W2, V2))


def _lift(v: Sequence) -> tuple:
    # projective representative normalised at its first nonzero coordinate
    v = tuple(to_scalar(x) for x in v)
    piv = next((x for x in v if x != 0), None)
    if piv is None:
        raise CrossRatioError("zero vector does not define a line")
    return tuple(x / piv for x in v)


def cr_1_form(f, a: Sequence, b: Sequence, c: Sequence, d: Sequence) -> Fraction:
    """cr_1 of lines given by vectors, via Q-pairings."""
    a, b, c, d = (_lift(x) for x in (a, b, c, d))
    den = f.pair(a, b) * f.pair(d, c)
    if den == 0 or f.pair(a, c) == 0 or f.pair(d, b) == 0:
        raise CrossRatioError("lines are not pairwise transverse where required")
    return f.pair(a, c) * f.pair(d, b) / den


def _outside(sub: Matrix, inner: Matrix) -> tuple:
    """A column of ``sub`` not in the span of ``inner``."""
    r = rank(inner) if inner is not None else 0
    for c in sub.columns():
        test = Matrix.column(c) if inner is None else inner.hstack(Matrix.column(c))
        if rank(test) == r + 1:
            return c
    raise CrossRatioError("subspace is contained in the intersection")


def cr_project(inp: CrossRatioInput, method: str | None = None) -> Fraction:
    """cr_k reduced to a cr_1 in V^perp/V or to a projective cross ratio in (V1+V2)/V."""
    f = inp.V1.form
    k = inp.k
    V = intersect(inp.V1.basis, inp.V2.basis) if k > 1 else None
    dim = 0 if V is None else V.cols
    if dim != k - 1:
        raise CrossRatioError("cr_project needs dim(V1 ∩ V2) = k-1, got %d" % dim)
    if method is None:
        method = "perp" if k == f.p - 1 else "plus"
    v1 = _outside(inp.V1.basis, V)
    v2 = _outside(inp.V2.basis, V)
    if method == "perp":
        vperp = IsotropicSubspace(f, V).perp() if V is not None else Matrix.identity(f.n)
        w = []
        for W in (inp.W1, inp.W2):
            line = intersect(W.basis, vperp)
            if line is None or line.cols != 1:
                raise CrossRatioError("W ∩ V^perp is not a line")
            w.append(line.col(0))
        return cr_1_form(f, v1, w[0], w[1], v2)
    if method == "plus":
        base = Matrix.from_columns(([] if V is None else V.columns()) + [v1, v2])
        coords = []
        for W in (inp.W1, inp.W2):
            line = intersect(W.perp(), base)
            if line is None or line.cols != 1:
                raise CrossRatioError("W^perp ∩ (V1+V2) is not a line")
            sol = solve(base, Matrix.column(line.col(0))).col(0)
            coords.append(sol[-2:])
        a, d = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
        b, c = coords

        def br(x, y):
            return x[0] * y[1] - x[1] * y[0]

        den = br(a, b) * br(d, c)
        if den == 0:
            raise CrossRatioError("degenerate projective configuration")
        return br(a, c) * br(d, b) / den
    raise ValueError("method must be 'perp' or 'plus'")


# ---------------------------------------------------------------------------
# derivatives along cone paths

def _standard_position(x: PartialFlag, z: PartialFlag) -> None:
    X, Z = standard_flags(x.form)
    if not (x.same_as(X) and z.same_as(Z)):
        raise CrossRatioError("derivative probes need x = X and z = Z")


def cone_tangent_path(x: PartialFlag, y: PartialFlag, z: PartialFlag, k: int, t, direction) -> IsotropicSubspace:
    """x_t^k = E_k(t * dir) x^k; for k < p-1 this is <x^{k-1}, e_{n-k+1} + t e_{n-k}>."""
    _standard_position(x, z)
    f = x.form
    if not 1 <= k <= f.p - 1:
        raise CrossRatioError("k must lie in 1..%d" % (f.p - 1))
    t = to_scalar(t)
    if k <= f.p - 2:
        s = t * to_scalar(direction)
    else:
        s = tuple(t * to_scalar(c) for c in direction)
    return x.level(k).apply(elementary(f, k, s))


def cr_derivative_fd(x: PartialFlag, y: PartialFlag, z: PartialFlag, k: int, direction,
                     h=Fraction(1, 1000), retries: int = 16, rtol=Fraction(1, 10)) -> Fraction:
    """Symmetric difference of t -> cr_k(z^k, x^k, x_t^k, y^k) at t = 0.

    Step control: h is halved until the quotients at h and h/2 agree to ``rtol``,
    which keeps a pole of the rational function t -> cr out of [-h, h].
    """
    h = to_scalar(h)
    rtol = to_scalar(rtol)
    if h <= 0:
        raise CrossRatioError("step must be positive")
    zk, xk, yk = z.level(k), x.level(k), y.level(k)

    def quotient(step):
        plus = cr(zk, xk, cone_tangent_path(x, y, z, k, step, direction), yk)
        minus = cr(zk, xk, cone_tangent_path(x, y, z, k, -step, direction), yk)
        return (plus - minus) / (2 * step)

    for _ in range(retries + 1):
        try:
            coarse, fine = quotient(h), quotient(h / 2)
        except (CrossRatioError, FlagError):
            h /= 2
            continue
        if abs(coarse - fine) <= rtol * abs(fine):
            return coarse
        h /= 2
    raise CrossRatioError("no step size gave a stable difference quotient")


__all__ = [
    "CrossRatioError",
    "CrossRatioInput",
    "cone_tangent_path",
    "cr",
    "cr_1_form",
    "cr_derivative_fd",
    "cr_k",
    "cr_project",
]
