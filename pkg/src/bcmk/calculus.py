"""Numerical bicomplex calculus.

The four first-order operators, built from the real partials of F with
respect to (x, y, v, t) of one variable:

    d/dZ      = 1/4 (dx - i dy - j dv + k dt)
    d/dtilde  = 1/4 (dx + i dy + j dv + k dt)
    d/dhat    = 1/4 (dx - i dy + j dv - k dt)
    d/dbar    = 1/4 (dx + i dy - j dv - k dt)

Each is dual to its coordinate function: d/dZ applied to Z is 1 and applied to
any conjugate is 0, and similarly for the others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bicomplex import Bicomplex, I, J, K, norm_euclid
from .errors import ArityError
from .linalg import BCMatrix, rank_pair
from .poly import KINDS, MixedPolynomial, eval_poly, sym_partial

H_REL = 1e-5
HOLO_TOL = 1e-6

# signs of (i dy, j dv, k dt) per operator
_SIGNS = {
    "Z": (-1, -1, 1),
    "tilde": (1, 1, 1),
    "hat": (-1, 1, -1),
    "bar": (1, -1, -1),
}
_UNITS = (I, J, K)


@dataclass(frozen=True)
class EvaluableMap:
    """n bicomplex inputs to m bicomplex outputs."""

    n: int
    m: int
    fn: Callable[[Sequence[Bicomplex]], list]

    def __call__(self, Zs) -> list[Bicomplex]:
        if len(Zs) != self.n:
            raise ArityError(f"map takes {self.n} variables, got {len(Zs)}")
        out = self.fn(list(Zs))
        if isinstance(out, (Bicomplex, int, float, complex)):
            out = [out]
        return [Bicomplex.coerce(w) for w in out]


def as_map(F, n: int | None = None) -> EvaluableMap:
    """Wrap a polynomial, a list of polynomials or a callable."""
    if isinstance(F, EvaluableMap):
        return F
    if isinstance(F, MixedPolynomial):
        return EvaluableMap(F.n, 1, lambda Zs: [eval_poly(F, Zs)])
    if isinstance(F, (list, tuple)) and all(isinstance(f, MixedPolynomial) for f in F):
        nn = max(f.n for f in F)
        polys = [f.with_arity(nn) for f in F]
        return EvaluableMap(nn, len(polys), lambda Zs: [eval_poly(f, Zs) for f in polys])
    if callable(F):
        if n is None:
            raise ValueError("variable count required for a plain callable")
        probe = F([Bicomplex(0.5, 0.25, 0.125, 0.0625)] * n)
        m = 1 if isinstance(probe, (Bicomplex, int, float, complex)) else len(probe)
        return EvaluableMap(n, m, F)
    raise TypeError(f"cannot treat {F!r} as a bicomplex map")


def _point(Z0) -> list[Bicomplex]:
    if isinstance(Z0, (Bicomplex, int, float, complex, str)):
        Z0 = [Z0]
    return [Bicomplex.coerce(z).to_float() for z in Z0]


def default_step(Zs) -> float:
    return H_REL * (1.0 + math.sqrt(sum(norm_euclid(z) ** 2 for z in Zs)))


def _real_partials(Fm: EvaluableMap, Zs, i: int, h: float):
    """[dF/dx, dF/dy, dF/dv, dF/dt] of variable i, each a list of m outputs."""
    out = []
    for axis in range(4):
        step = [0.0] * 4
        step[axis] = h
        dz = Bicomplex(*step)
        plus = list(Zs)
        minus = list(Zs)
        plus[i] = Zs[i] + dz
        minus[i] = Zs[i] - dz
        fp, fm = Fm(plus), Fm(minus)
        out.append([(a - b).scale(1.0 / (2.0 * h)) for a, b in zip(fp, fm)])
    return out


def _combine(kind: str, parts) -> list[Bicomplex]:
    si, sj, sk = _SIGNS[kind]
    dx, dy, dv, dt = parts
    res = []
    for ox, oy, ov, ot in zip(dx, dy, dv, dt):
        acc = ox + (I * oy).scale(si) + (J * ov).scale(sj) + (K * ot).scale(sk)
        res.append(acc.scale(0.25))
    return res


def _check_kind(kind):
    if kind not in _SIGNS:
        raise ValueError(f"unknown derivative kind {kind!r}; expected one of {KINDS}")


def partial(kind: str, F, i: int, Z0, h: float | None = None, n: int | None = None):
    """Central-difference operator ``kind`` w.r.t. variable ``i`` (0-based) at Z0.

    Returns a Bicomplex for single-output maps, a list otherwise.
    """
    _check_kind(kind)
    Zs = _point(Z0)
    Fm = as_map(F, n if n is not None else len(Zs))
    if not 0 <= i < Fm.n:
        raise ArityError(f"variable index {i} out of range for n = {Fm.n}")
    if h is None:
        h = default_step(Zs)
    if h <= 0:
        raise ValueError("step must be positive")
    res = _combine(kind, _real_partials(Fm, Zs, i, h))
    return res[0] if Fm.m == 1 else res


def real_jacobian(F, Z0, h: float | None = None, n: int | None = None) -> np.ndarray:
    """4m x 4n real Jacobian by central differences; row/column blocks ordered (x, y, v, t)."""
    Zs = _point(Z0)
    Fm = as_map(F, n if n is not None else len(Zs))
    if h is None:
        h = default_step(Zs)
    J_ = np.zeros((4 * Fm.m, 4 * Fm.n))
    for i in range(Fm.n):
        parts = _real_partials(Fm, Zs, i, h)
        for axis in range(4):
            for r, w in enumerate(parts[axis]):
                J_[4 * r : 4 * r + 4, 4 * i + axis] = [float(c) for c in w.components]
    return J_


def bc_jacobian(F, Z0, h: float | None = None, n: int | None = None) -> BCMatrix:
    """m x n matrix of d F^r / d Z_i (holomorphic operator)."""
    Zs = _point(Z0)
    Fm = as_map(F, n if n is not None else len(Zs))
    if h is None:
        h = default_step(Zs)
    cols = [_combine("Z", _real_partials(Fm, Zs, i, h)) for i in range(Fm.n)]
    return BCMatrix(tuple(tuple(cols[i][r] for i in range(Fm.n)) for r in range(Fm.m)))


@dataclass(frozen=True)
class HolomorphyResult:
    holomorphic: bool
    worst: float
    worst_kind: str | None

    def __bool__(self):
        return self.holomorphic


def holomorphy_test(F, samples, tol: float = HOLO_TOL, h: float | None = None, n: int | None = None):
    """All tilde/hat/bar partials at most ``tol`` in magnitude at every sample."""
    samples = list(samples)
    if not samples:
        raise ValueError("holomorphy_test needs at least one sample point")
    worst, worst_kind = 0.0, None
    for Z0 in samples:
        Zs = _point(Z0)
        Fm = as_map(F, n if n is not None else len(Zs))
        step = default_step(Zs) if h is None else h
        for i in range(Fm.n):
            parts = _real_partials(Fm, Zs, i, step)
            for kind in ("tilde", "hat", "bar"):
                for w in _combine(kind, parts):
                    mag = norm_euclid(w)
                    if mag > worst:
                        worst, worst_kind = mag, kind
    return HolomorphyResult(worst <= tol, worst, worst_kind)


def singular_test(F, Z0, tol: float = 1e-8, h: float | None = None, n: int | None = None) -> bool:
    """True iff the rank pair of the bicomplex Jacobian falls short of (m, m)."""
    Jb = bc_jacobian(F, Z0, h, n)
    m = Jb.shape[0]
    return tuple(rank_pair(Jb, tol, atol=tol)) != (m, m)


# -- symbolic counterparts ---------------------------------------------------

def sym_operator(kind: str, F: MixedPolynomial, i: int, Zs) -> Bicomplex:
    """Exact/float value of the formal partial at Zs."""
    return eval_poly(sym_partial(kind, F, i), Zs)


# conjugate images of the unit directions 1, i, j, k under (Z, tilde, hat, bar)
_DIRS = (
    Bicomplex(1, 0, 0, 0),
    Bicomplex(0, 1, 0, 0),
    Bicomplex(0, 0, 1, 0),
    Bicomplex(0, 0, 0, 1),
)


def sym_real_jacobian(F: MixedPolynomial, Zs) -> np.ndarray:
    """Real 4 x 4n Jacobian from formal partials: dF(H) = sum P_Z H + P_t H~ + P_h H^ + P_b H-."""
    Zs = [Bicomplex.coerce(z) for z in Zs]
    J_ = np.zeros((4, 4 * F.n))
    for i in range(F.n):
        P = [sym_operator(k, F, i, Zs) for k in KINDS]
        for axis, H in enumerate(_DIRS):
            images = (H, H.tilde(), H.hat(), H.bar())
            col = sum((p * h for p, h in zip(P, images)), Bicomplex(0, 0, 0, 0))
            J_[:, 4 * i + axis] = [float(c) for c in col.components]
    return J_
