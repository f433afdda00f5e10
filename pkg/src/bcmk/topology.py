"""Fibration maps, trivializations, regularity checks and closed-form invariants."""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .bicomplex import (
    Bicomplex,
    arg_complex,
    is_invertible,
    norm_complex,
    norm_complex_sq,
    norm_euclid,
    proj_i,
)
from .calculus import sym_real_jacobian
from .errors import ArityError, BicomplexDomainError, PreconditionError
from .kernels import eval_points
from .poly import MixedPolynomial, eval_poly
from .weights import PolarActionElement, WeightSystem, apply_action, solve_weights

MARGIN_TOL = 1e-6


@dataclass
class FibrationContext:
    F: MixedPolynomial
    W: WeightSystem | None = None
    epsilon: float = 1.0
    delta: float = 0.5
    tol: float = 1e-8
    seed: int = 42

    def __post_init__(self):
        for name in ("epsilon", "delta", "tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @property
    def weights(self) -> WeightSystem:
        if self.W is None:
            self.W = solve_weights(self.F)
        return self.W

    def value(self, Zs) -> Bicomplex:
        return eval_poly(self.F, _vec(self.F, Zs))


@dataclass(frozen=True)
class SamplingReport:
    name: str
    samples: int
    worst_margin: float
    passed: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self):
        out = {"name": self.name, "samples": self.samples, "worst_margin": self.worst_margin, "pass": self.passed}
        out.update(self.details)
        return out


def _vec(F: MixedPolynomial, Zs) -> list[Bicomplex]:
    if isinstance(Zs, (Bicomplex, int, float, complex, str)):
        Zs = [Zs]
    Zs = [Bicomplex.coerce(z) for z in Zs]
    if len(Zs) != F.n:
        raise ArityError(f"polynomial has {F.n} variables, got {len(Zs)} values")
    return Zs


def vector_norm(Zs) -> float:
    return math.sqrt(sum(norm_euclid(z) ** 2 for z in Zs))


def _near_zd(w: Bicomplex, tol: float) -> bool:
    return min(abs(w.z1), abs(w.z2)) <= tol * max(norm_euclid(w), 1.0)


# -- membership ---------------------------------------------------------------------

def in_VF(ctx: FibrationContext, Zs) -> bool:
    """F(Z) is 0 or a zero divisor (within ctx.tol)."""
    return _near_zd(ctx.value(Zs), ctx.tol)


def link_membership(ctx: FibrationContext, Zs) -> bool:
    Zs = _vec(ctx.F, Zs)
    return in_VF(ctx, Zs) and abs(vector_norm(Zs) - ctx.epsilon) <= ctx.tol


def tube_membership(ctx: FibrationContext, Zs, variant: str = "ball-target") -> bool:
    Zs = _vec(ctx.F, Zs)
    if vector_norm(Zs) > ctx.epsilon:
        return False
    w = ctx.value(Zs)
    if variant == "ball-target":
        return is_invertible(w) and not _near_zd(w, ctx.tol) and norm_euclid(w) <= ctx.delta
    if variant == "quadric-target":
        return abs(complex(norm_complex_sq(w)) - 1.0) <= ctx.tol
    raise ValueError(f"unknown tube variant {variant!r}; expected 'ball-target' or 'quadric-target'")


# -- fibration maps ---------------------------------------------------------------------

def _require_value(ctx, Zs, what) -> Bicomplex:
    w = ctx.value(Zs)
    if not is_invertible(w) or _near_zd(w, ctx.tol):
        raise BicomplexDomainError(f"{what}: F(Z) = {w} is zero or a zero divisor")
    return w


def phi_i(ctx: FibrationContext, Zs) -> Bicomplex:
    """F / ||F||_i, a point of the complex unit circle."""
    return proj_i(_require_value(ctx, Zs, "phi_i"))


def phi_s3(ctx: FibrationContext, Zs) -> Bicomplex:
    """F / ||F||, a Euclidean unit vector off the zero divisors."""
    w = _require_value(ctx, Zs, "phi_s3")
    return w.to_float().scale(1.0 / norm_euclid(w))


# -- trivializations -----------------------------------------------------------------------

@dataclass(frozen=True)
class PolarParameters:
    """U = s e^{i theta} e^{j Theta} with s = |rho|, theta = arg rho, rho = ||U||_i."""

    s: float
    theta: float
    Theta: complex
    chart: str


def _shift(phi: float, centred: bool) -> float:
    """Representative in (-pi, pi] when centred, else [0, 2 pi)."""
    phi = math.fmod(phi, 2 * math.pi)
    if centred:
        if phi > math.pi:
            phi -= 2 * math.pi
        elif phi <= -math.pi:
            phi += 2 * math.pi
    elif phi < 0:
        phi += 2 * math.pi
    return phi


def polar_parameters(U) -> PolarParameters:
    """Polar parameters of an invertible U with the chart chosen from Re arg_i U.

    Chart "U0" (Re arg away from pi) takes Re Theta in (-pi, pi]; chart "Upi"
    takes [0, 2 pi). Either way the representative is continuous on the chart.
    """
    U = Bicomplex.coerce(U)
    if not is_invertible(U):
        raise BicomplexDomainError(f"{U} is not invertible")
    rho = norm_complex(U)
    Th = arg_complex(U).theta
    chart = "U0" if math.cos(Th.real) >= 0 else "Upi"
    Th = complex(_shift(Th.real, chart == "U0"), Th.imag)
    return PolarParameters(abs(rho), cmath.phase(rho), Th, chart)


def solve_theta(Theta: complex, d: int, dprime: int, tol: float = 1e-12) -> complex:
    """Theta0 with d Theta0 + d' conj(Theta0) = Theta."""
    re = Theta.real / (d + dprime)
    if d == dprime:
        if abs(Theta.imag) > tol:
            raise PreconditionError(
                "unsupported chart direction",
                [f"d = d' = {d} cannot produce an imaginary angle shift {Theta.imag:g}"],
            )
        return complex(re, 0.0)
    return complex(re, Theta.imag / (d - dprime))


def action_for_value(W: WeightSystem, U) -> PolarActionElement:
    """Lambda0 with F(Lambda0 . Z0) = U whenever F(Z0) = 1."""
    par = polar_parameters(U)
    return PolarActionElement(
        par.s ** (1.0 / W.a), par.theta / W.c, solve_theta(par.Theta, W.d, W.dprime)
    )


def global_trivialize(ctx: FibrationContext, U, Z0) -> list[Bicomplex]:
    """tau(Z0, U): move the fiber point Z0 over U by the solved action."""
    Z0 = _vec(ctx.F, Z0)
    f0 = ctx.value(Z0)
    if norm_euclid(f0 - 1) > max(ctx.tol, 1e-6) * 10:
        raise PreconditionError("Z0 must lie on F^-1(1)", [f"F(Z0) = {f0}"])
    return apply_action(action_for_value(ctx.weights, U), ctx.weights, Z0).Z


def global_trivialize_inverse(ctx: FibrationContext, Zs) -> tuple[list[Bicomplex], Bicomplex]:
    """tau^-1(W) = (fiber point over 1, F(W))."""
    Zs = _vec(ctx.F, Zs)
    U = _require_value(ctx, Zs, "global_trivialize_inverse")
    L = action_for_value(ctx.weights, U).inverse()
    return apply_action(L, ctx.weights, Zs).Z, U


def radial_rescale(W: WeightSystem, Zs, radius: float) -> list[Bicomplex]:
    """Move Zs along its weighted R+ orbit onto the sphere of the given radius."""
    sq = [norm_euclid(z) ** 2 for z in Zs]
    if not any(sq):
        raise PreconditionError("origin has no radial orbit", ["Zs = 0"])

    def g(logs):
        return sum(q * math.exp(2 * t * logs) for q, t in zip(sq, W.t)) - radius**2

    lo, hi = -1.0, 1.0
    while g(lo) > 0:
        lo *= 2
    while g(hi) < 0:
        hi *= 2
    logs = brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    s = math.exp(logs)
    return apply_action(PolarActionElement(s, 0.0, 0j), W, Zs).Z


def sphere_trivialize(ctx: FibrationContext, z: complex, Z0) -> list[Bicomplex]:
    """Point on the epsilon-sphere with phi_i = e^{j z} phi_i(Z0)."""
    Z0 = _vec(ctx.F, Z0)
    W = ctx.weights
    L = PolarActionElement(1.0, 0.0, solve_theta(complex(z), W.d, W.dprime))
    moved = apply_action(L, W, Z0).Z
    return radial_rescale(W, moved, ctx.epsilon)


# -- sampling ---------------------------------------------------------------------------------

def sample_sphere(ctx: FibrationContext, count: int, rng: np.random.Generator | None = None,
                  reject_zd: bool = True) -> np.ndarray:
    """``count`` points (count, n, 4) uniform on the epsilon-sphere, F(Z) away from ZD."""
    rng = rng if rng is not None else np.random.default_rng(ctx.seed)
    n = ctx.F.n
    out = np.empty((0, n, 4))
    while len(out) < count:
        X = rng.normal(size=(max(count, 16), n, 4))
        norms = np.sqrt((X**2).sum(axis=(1, 2)))
        X = X / norms[:, None, None] * ctx.epsilon
        if reject_zd:
            vals = eval_points(ctx.F, X)
            w1 = np.hypot(vals[:, 0] + vals[:, 3], vals[:, 1] - vals[:, 2])
            w2 = np.hypot(vals[:, 0] - vals[:, 3], vals[:, 1] + vals[:, 2])
            scale = np.maximum(np.sqrt((vals**2).sum(axis=1)), 1.0)
            keep = np.minimum(w1, w2) > np.sqrt(ctx.tol) * scale
            X = X[keep]
        out = np.concatenate([out, X])
    return out[:count]


def points_to_bicomplex(X) -> list[list[Bicomplex]]:
    return [[Bicomplex(*map(float, v)) for v in row] for row in np.asarray(X)]


def export_csv(X, values=None) -> str:
    """CSV point cloud: one row per sample, columns x1,y1,v1,t1,... (+ F components)."""
    X = np.asarray(X)
    n = X.shape[1]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = [f"{c}{i + 1}" for i in range(n) for c in "xyvt"]
    if values is not None:
        head += ["Fx", "Fy", "Fv", "Ft"]
    w.writerow(head)
    for k, row in enumerate(X):
        rec = [repr(float(v)) for v in row.reshape(-1)]
        if values is not None:
            rec += [repr(float(v)) for v in values[k]]
        w.writerow(rec)
    return buf.getvalue()


# -- regularity ---------------------------------------------------------------------------------

def _orbit_tangents(W: WeightSystem, Zs):
    I, J, K = Bicomplex(0, 1), Bicomplex(0, 0, 1), Bicomplex(0, 0, 0, 1)
    Vr = [z * t for z, t in zip(Zs, W.t)]
    Vt = [I * z * p for z, p in zip(Zs, W.p)]
    VT = [J * z * u for z, u in zip(Zs, W.u)]
    VTi = [K * z * u for z, u in zip(Zs, W.u)]
    return Vr, Vt, VT, VTi


def _flat(vs):
    return np.array([float(c) for v in vs for c in v.components])


def rank_margin(F: MixedPolynomial, Zs) -> float:
    """sigma_4 / sigma_1 of the real 4 x 4n Jacobian (0 when it vanishes)."""
    s = np.linalg.svd(sym_real_jacobian(F, Zs), compute_uv=False)
    return 0.0 if s[0] == 0 else float(s[3] / s[0]) if len(s) >= 4 else 0.0


def regular_value_sample(ctx: FibrationContext, count: int = 100) -> SamplingReport:
    """Rank-4 check of the real Jacobian at sphere samples with F(Z) invertible.

    Also confirms that the orbit tangents already span the image: the margin
    reported is the smaller of the Jacobian margin and the margin of
    dF applied to (V_r, V_theta, V_Theta, k V_Theta).
    """
    W = ctx.weights
    X = sample_sphere(ctx, count)
    worst = math.inf
    worst_orbit = math.inf
    for Zs in points_to_bicomplex(X):
        Jm = sym_real_jacobian(ctx.F, Zs)
        s = np.linalg.svd(Jm, compute_uv=False)
        worst = min(worst, s[3] / s[0] if s[0] else 0.0)
        images = np.column_stack([Jm @ _flat(v) for v in _orbit_tangents(W, Zs)])
        so = np.linalg.svd(images, compute_uv=False)
        worst_orbit = min(worst_orbit, so[3] / so[0] if so[0] else 0.0)
    margin = min(worst, worst_orbit)
    return SamplingReport(
        "regular_value_sample", count, float(margin), bool(margin > MARGIN_TOL),
        {"jacobian_margin": float(worst), "orbit_margin": float(worst_orbit)},
    )


def discriminant_ray_check(ctx: FibrationContext, P, s_samples: Sequence[float] | int = 10) -> bool:
    """Rank deficiency at a critical P persists along its weighted radial orbit."""
    P = _vec(ctx.F, P)
    W = ctx.weights
    if rank_margin(ctx.F, P) > MARGIN_TOL:
        raise PreconditionError("P is a regular point", ["real Jacobian has rank 4 at P"])
    if isinstance(s_samples, int):
        s_samples = list(np.geomspace(0.1, 10.0, s_samples))
    for s in s_samples:
        Ps = apply_action(PolarActionElement(float(s), 0.0, 0j), W, P).Z
        if rank_margin(ctx.F, Ps) > MARGIN_TOL:
            return False
    return True


def radial_transversality(ctx: FibrationContext, Zs) -> bool:
    """<d/ds (s . Z)|_{s=1}, Z> = sum t_l ||Z_l||^2 > 0."""
    Zs = _vec(ctx.F, Zs)
    if not any(Zs):
        raise PreconditionError("radial transversality needs Zs != 0", ["Zs = 0"])
    return sum(t * norm_euclid(z) ** 2 for z, t in zip(Zs, ctx.weights.t)) > 0


def transversality_sample(ctx: FibrationContext, count: int = 1000) -> SamplingReport:
    W = ctx.weights
    X = sample_sphere(ctx, count, reject_zd=False)
    sq = (X**2).sum(axis=2)
    vals = sq @ np.array(W.t, dtype=float)
    worst = float(vals.min()) / ctx.epsilon**2
    return SamplingReport("radial_transversality", count, worst, bool((vals > 0).all()))


# -- Pham-Brieskorn forms ----------------------------------------------------------------------

def pham_brieskorn_quads(F: MixedPolynomial) -> list[tuple[int, int, int, int]]:
    """Exponent quadruples of F = sum_l Z_l(a_l, b_l, c_l, d_l), unit coefficients."""
    quads = [None] * F.n
    problems = []
    for coeff, qs in F.monomials():
        used = [i for i, q in enumerate(qs) if any(q)]
        if len(used) != 1:
            problems.append("every monomial must involve exactly one variable")
            continue
        i = used[0]
        if quads[i] is not None:
            problems.append(f"Z{i + 1} appears in more than one monomial")
        if coeff != 1:
            problems.append(f"coefficient of the Z{i + 1} monomial must be 1")
        quads[i] = qs[i]
    for i, q in enumerate(quads):
        if q is None:
            problems.append(f"Z{i + 1} has no monomial")
    if problems:
        raise PreconditionError("not a mixed Pham-Brieskorn polynomial", problems)
    return quads


def cnd_violations(q, label: str = "") -> list[str]:
    """Admissibility of one quadruple: a-b > d-c, a > c, d-b >= 0, and a-c = d-b if d > b."""
    a, b, c, d = q
    out = []
    if not a - b > d - c:
        out.append(f"{label}a-b > d-c fails ({a - b} <= {d - c})")
    if not a > c:
        out.append(f"{label}a > c fails ({a} <= {c})")
    if not d - b >= 0:
        out.append(f"{label}d-b >= 0 fails ({d - b} < 0)")
    elif d - b > 0 and a - c != d - b:
        out.append(f"{label}a-c = d-b required when d > b ({a - c} != {d - b})")
    return out


def _pb_checked(F: MixedPolynomial) -> list[tuple]:
    quads = pham_brieskorn_quads(F)
    problems = []
    for i, q in enumerate(quads):
        label = f"Z{i + 1}: "
        problems += cnd_violations(q, label)
        a, b, c, d = q
        if not a - b > 0:
            problems.append(f"{label}a-b > 0 fails")
        if not c - d >= 0:
            problems.append(f"{label}c-d >= 0 fails ({c - d} < 0)")
    if problems:
        raise PreconditionError("Pham-Brieskorn conditions violated", problems)
    return quads


@dataclass(frozen=True)
class BouquetInvariants:
    sigmas: tuple
    m: int

    def to_json(self):
        return {"sigmas": list(self.sigmas), "m": self.m}


def bouquet_count(F: MixedPolynomial) -> BouquetInvariants:
    """sigma_l = (a-b+c-d)(a-b-c+d) - 1 and m = prod sigma_l."""
    sig = []
    for a, b, c, d in _pb_checked(F):
        sig.append((a - b + c - d) * (a - b - c + d) - 1)
    return BouquetInvariants(tuple(sig), reduce(lambda x, y: x * y, sig, 1))


def monomial_fiber_points(q, tol: float = 1e-9) -> list[tuple[complex, complex]]:
    """Brute-force solutions (z1, z2) of one monomial equal to 1 on the unit torus.

    Candidates are the lattice points 2 pi k / D, D = |A^2 - C^2| (A = a-b,
    C = c-d), which contains every solution of the angle equations; each
    candidate is checked in the original pair of complex equations.
    """
    a, b, c, d = q
    A, C = a - b, c - d
    D = abs(A * A - C * C)
    if D == 0:
        raise PreconditionError("fiber is not finite", ["(a-b)^2 = (c-d)^2"])
    sols = []
    for k1 in range(D):
        for k2 in range(D):
            z1 = cmath.exp(2j * math.pi * k1 / D)
            z2 = cmath.exp(2j * math.pi * k2 / D)
            e1 = z1**a * z1.conjugate() ** b * z2**c * z2.conjugate() ** d
            e2 = z2**a * z2.conjugate() ** b * z1**c * z1.conjugate() ** d
            if abs(e1 - 1) < tol and abs(e2 - 1) < tol:
                sols.append((z1, z2))
    return sols


# -- cyclic fiber invariants ---------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicInvariants:
    m1: int
    m2: int
    points: int
    point_variable: int

    @property
    def m(self) -> int:
        return self.m1 * self.m2

    def to_json(self):
        return {"m1": self.m1, "m2": self.m2, "m": self.m, "points": self.points,
                "point_variable": f"Z{self.point_variable + 1}"}


def cyclic_invariants(F: MixedPolynomial) -> CyclicInvariants:
    """F = Z_p(a, b, c, d) + (monomial in the remaining one or two variables)."""
    mons = list(F.monomials())
    problems = []
    if len(mons) != 2:
        problems.append(f"expected two monomials, found {len(mons)}")
    else:
        used = [[i for i, q in enumerate(qs) if any(q)] for _, qs in mons]
        singles = [k for k, u in enumerate(used) if len(u) == 1]
        if not singles:
            problems.append("one monomial must involve a single variable")
        else:
            k = singles[0]
            other = 1 - k
            if set(used[k]) & set(used[other]):
                problems.append("the two monomials must use disjoint variables")
            if not 1 <= len(used[other]) <= 2:
                problems.append("second monomial must involve one or two variables")
            if any(c != 1 for c, _ in mons):
                problems.append("coefficients must be 1")
    if problems:
        raise PreconditionError("not a cyclic-shape polynomial", problems)
    pv = used[k][0]
    a1, b1, c1, d1 = mons[k][1][pv]
    rest = [mons[other][1][i] for i in used[other]]
    m1 = reduce(math.gcd, (abs(a - b - c + d) for a, b, c, d in rest), 0)
    m2 = reduce(math.gcd, (abs(a - b + c - d) for a, b, c, d in rest), 0)
    return CyclicInvariants(m1, m2, (a1 - b1 + c1 - d1) * (a1 - b1 - c1 + d1), pv)


# -- unfolding ------------------------------------------------------------------------------------

def printed_unfolding_exponents(q) -> tuple[float, float]:
    """(k1, k2) with k1 (A + C) = 2b and k2 (A + C) = 2d, A = a-b, C = c-d."""
    a, b, c, d = q
    s = (a - b) + (c - d)
    if s == 0:
        raise PreconditionError("unfolding exponents undefined", ["(a-b) + (c-d) = 0"])
    return 2 * b / s, 2 * d / s


def unfolding_exponents(q) -> tuple[float, float]:
    """(alpha, gamma) solving A alpha + C gamma = 2b, C alpha + A gamma = 2d."""
    a, b, c, d = q
    A, C = a - b, c - d
    det = A * A - C * C
    return 2 * (A * b - C * d) / det, 2 * (A * d - C * b) / det


@dataclass(frozen=True)
class Unfolding:
    """phi with F(phi(Z)) = G(Z) on (BC*)^n, G = sum Z_l(a-b, 0, c-d, 0).

    ``forward`` is the coordinate change
    w1 = z1 |z1|^alpha |z2|^gamma, w2 = z2 |z1|^gamma |z2|^alpha (per variable),
    which satisfies G(forward(Z)) = F(Z); ``phi`` is its inverse.
    """

    F: MixedPolynomial
    G: MixedPolynomial
    exponents: tuple

    def forward(self, Zs) -> list[Bicomplex]:
        out = []
        for z, (al, ga) in zip(_vec(self.F, Zs), self.exponents):
            z1, z2 = complex(z.z1), complex(z.z2)
            r1, r2 = abs(z1), abs(z2)
            if r1 == 0 or r2 == 0:
                raise BicomplexDomainError("unfolding is defined on invertible coordinates only")
            out.append(Bicomplex.from_idempotent(z1 * r1**al * r2**ga, z2 * r1**ga * r2**al))
        return out

    def phi(self, Ws) -> list[Bicomplex]:
        out = []
        for w, (al, ga) in zip(_vec(self.F, Ws), self.exponents):
            w1, w2 = complex(w.z1), complex(w.z2)
            p1, p2 = abs(w1), abs(w2)
            if p1 == 0 or p2 == 0:
                raise BicomplexDomainError("unfolding is defined on invertible coordinates only")
            # log p1 = (1+al) log r1 + ga log r2, log p2 = ga log r1 + (1+al) log r2
            M = np.array([[1 + al, ga], [ga, 1 + al]])
            l1, l2 = np.linalg.solve(M, [math.log(p1), math.log(p2)])
            r1, r2 = math.exp(l1), math.exp(l2)
            out.append(Bicomplex.from_idempotent(w1 / p1 * r1, w2 / p2 * r2))
        return out

    def to_json(self):
        return {"G": str(self.G), "exponents": [list(e) for e in self.exponents]}


def unfold(F: MixedPolynomial) -> Unfolding:
    quads = _pb_checked(F)
    problems = [
        f"Z{i + 1}: a+b = c+d makes the unfolding degenerate"
        for i, (a, b, c, d) in enumerate(quads)
        if a + b == c + d
    ]
    if problems:
        raise PreconditionError("unfolding not invertible", problems)
    n = F.n
    G = MixedPolynomial(n, [])
    for i, (a, b, c, d) in enumerate(quads):
        qs = [(0, 0, 0, 0)] * n
        qs[i] = (a - b, 0, c - d, 0)
        G = G + MixedPolynomial.monomial(qs)
    return Unfolding(F, G, tuple(unfolding_exponents(q) for q in quads))


def check_unfolding(u: Unfolding, samples: int = 100, seed: int = 42) -> dict:
    """Worst F(phi(Z)) - G(Z) and phi round-trip residuals on invertible samples."""
    rng = np.random.default_rng(seed)
    worst_fg = worst_rt = 0.0
    for _ in range(samples):
        Zs = [Bicomplex(*rng.normal(size=4)) for _ in range(u.F.n)]
        g = eval_poly(u.G, Zs)
        f = eval_poly(u.F, u.phi(Zs))
        worst_fg = max(worst_fg, norm_euclid(f - g) / max(norm_euclid(g), 1.0))
        back = u.forward(u.phi(Zs))
        worst_rt = max(worst_rt, vector_norm([x - y for x, y in zip(back, Zs)]) / max(vector_norm(Zs), 1.0))
    return {"F_phi_minus_G": worst_fg, "round_trip": worst_rt, "samples": samples}
