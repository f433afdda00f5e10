"""Polar weighted homogeneity.

The weighted action of Lambda = s e^{i theta} e^{j Theta} on BC^n is

    Z_l -> s^{t_l} e^{i p_l theta} e^{j u_l Theta} Z_l

and F is polar weighted homogeneous of type (t; a), (p; c), (u; d, d')
when F(Lambda . Z) = s^a e^{i c theta} e^{j d Theta} e^{j d' conj(Theta)} F(Z).
Per monomial with exponents (a, b, c, d) in one variable, the four exponent
combinations a+b+c+d, a-b+c-d, a-c and d-b pick up the weights; summing over
variables gives one linear equation per monomial and subsystem.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .bicomplex import Bicomplex, exp_j, norm_euclid
from .errors import ArityError, PreconditionError
from .poly import KINDS, MixedPolynomial, eval_components, eval_poly, sym_partial

HOMOGENEITY_TOL = 1e-8


# -- degree systems -----------------------------------------------------------

@dataclass(frozen=True)
class DegreeSystem:
    radial: tuple
    polar: tuple
    theta: tuple
    thetabar: tuple

    def as_arrays(self):
        return tuple(np.array(m, dtype=np.int64) for m in (self.radial, self.polar, self.theta, self.thetabar))

    def to_json(self):
        return {
            "radial": [list(r) for r in self.radial],
            "polar": [list(r) for r in self.polar],
            "theta": [list(r) for r in self.theta],
            "thetabar": [list(r) for r in self.thetabar],
        }


def degree_system(F: MixedPolynomial) -> DegreeSystem:
    if not F.terms:
        raise PreconditionError("degree system of the zero polynomial", ["empty polynomial"])
    rows = ([], [], [], [])
    for _, quads in F.monomials():
        rows[0].append(tuple(a + b + c + d for a, b, c, d in quads))
        rows[1].append(tuple(a - b + c - d for a, b, c, d in quads))
        rows[2].append(tuple(a - c for a, b, c, d in quads))
        rows[3].append(tuple(d - b for a, b, c, d in quads))
    return DegreeSystem(*(tuple(r) for r in rows))


# -- weight systems -------------------------------------------------------------

@dataclass(frozen=True)
class WeightSystem:
    """Radial (t; a), polar (p; c) and complex-polar (u; d, dprime) weights.

    Construction does not validate, so that arbitrary (even non-positive)
    weights can be fed to the checks; ``violations()`` lists what fails.
    """

    t: tuple
    a: int
    p: tuple
    c: int
    u: tuple
    d: int
    dprime: int
    unconstrained: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "p", tuple(self.p))
        object.__setattr__(self, "u", tuple(self.u))
        if not len(self.t) == len(self.p) == len(self.u):
            raise ArityError("weight vectors differ in length")

    @property
    def n(self) -> int:
        return len(self.t)

    def violations(self) -> list[str]:
        out = []
        if self.a <= 0:
            out.append("radial: degree a must be positive")
        if self.c <= 0:
            out.append("polar: degree c must be positive")
        if self.d < 0 or self.dprime < 0:
            out.append("complex_polar: degrees d, d' must be nonnegative")
        if self.d == 0 and self.dprime == 0:
            out.append("complex_polar: d > 0 or d' > 0 required")
        for name, w in (("radial", self.t), ("polar", self.p), ("complex_polar", self.u)):
            if any(x <= 0 for x in w):
                out.append(f"{name}: weights must be positive")
            elif w and reduce(math.gcd, w) != 1:
                out.append(f"{name}: weights must have gcd 1")
        return out

    def satisfies(self, F: MixedPolynomial) -> list[str]:
        """Degree equations that fail for F (exact integer check)."""
        if F.n != self.n:
            raise ArityError(f"weights for {self.n} variables, polynomial has {F.n}")
        D = degree_system(F)
        bad = []
        for name, M, w, deg in (
            ("radial", D.radial, self.t, self.a),
            ("polar", D.polar, self.p, self.c),
            ("theta", D.theta, self.u, self.d),
            ("thetabar", D.thetabar, self.u, self.dprime),
        ):
            for k, row in enumerate(M):
                if sum(r * x for r, x in zip(row, w)) != deg:
                    bad.append(f"{name}: monomial {k} has degree {sum(r * x for r, x in zip(row, w))} != {deg}")
        return bad

    def to_json(self):
        return {
            "radial": {"t": list(self.t), "a": self.a},
            "polar": {"p": list(self.p), "c": self.c},
            "complex_polar": {"u": list(self.u), "d": self.d, "dprime": self.dprime},
        }


class InfeasibleWeights(PreconditionError):
    """No admissible weight system; ``.report`` is the JSON weight report."""

    def __init__(self, message, violations, report):
        super().__init__(message, violations)
        self.report = report


# -- exact rational nullspace -----------------------------------------------------

def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q by reduced row echelon form."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(A)) if A[k][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for k in range(len(A)):
            if k != r and A[k][col] != 0:
                f = A[k][col]
                A[k] = [x - f * y for x, y in zip(A[k], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in enumerate(pivots):
            v[pcol] = -A[row][fcol]
        basis.append(v)
    return basis


def _primitive(v: Sequence[Fraction]) -> list[int]:
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (f.denominator for f in v), 1)
    ints = [int(f * den) for f in v]
    g = reduce(math.gcd, (abs(x) for x in ints), 0)
    return [x // g for x in ints] if g else ints


def _milp_min(Aeq, nvars, lower, objective_order, extra=None):
    """Lexicographic integer minimisation of the listed linear objectives.

    ``objective_order`` is a list of coefficient vectors. Returns an integer
    vector or None when infeasible.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    cons = [LinearConstraint(np.array(Aeq, dtype=float), 0, 0)] if len(Aeq) else []
    if extra is not None:
        cons.append(extra)
    bounds = Bounds(np.array(lower, dtype=float), np.full(nvars, np.inf))
    integrality = np.ones(nvars)
    x = None
    for obj in objective_order:
        res = milp(np.array(obj, dtype=float), constraints=cons, bounds=bounds, integrality=integrality)
        if res.status != 0 or res.x is None:
            return None
        x = np.rint(res.x).astype(int)
        best = float(np.dot(obj, x))
        cons.append(LinearConstraint(np.array([obj], dtype=float), best, best))
    return [int(v) for v in x]


@dataclass
class _SubResult:
    weights: list | None
    degrees: list | None
    unconstrained: list
    diagnostics: list


def _solve_subsystem(name: str, mats, n: int, degree_names) -> _SubResult:
    """Solve M_k w = deg_k * 1 for each matrix M_k with shared weights w.

    Radial and polar use one matrix; complex-polar uses (theta, thetabar).
    """
    T = len(mats[0])
    used = [i for i in range(n) if any(M[r][i] for M in mats for r in range(T))]
    free = [i for i in range(n) if i not in used]
    diags = []
    if free:
        diags.append(f"{name}: weight fixed to 1 for unconstrained variable(s) {', '.join(f'Z{i + 1}' for i in free)}")
    nd = len(mats)
    nv = len(used) + nd
    rows = []
    for k, M in enumerate(mats):
        for r in range(T):
            row = [M[r][i] for i in used] + [0] * nd
            row[len(used) + k] = -1
            rows.append(row)
    complex_part = nd == 2

    def finish(sol):
        w = [1] * n
        for idx, i in enumerate(used):
            w[i] = sol[idx]
        return _SubResult(w, sol[len(used):], free, diags)

    basis = nullspace(rows, nv)
    if len(basis) == 1:
        v = _primitive(basis[0])
        lead = next((x for x in v[: len(used)] if x != 0), None)
        if lead is None:
            lead = next((x for x in v[len(used):] if x != 0), 1)
        if lead < 0:
            v = [-x for x in v]
        ok = all(x > 0 for x in v[: len(used)])
        degs = v[len(used):]
        ok = ok and (all(x >= 0 for x in degs) and any(degs) if complex_part else all(x > 0 for x in degs))
        if ok:
            return finish(v)
    elif len(basis) > 1:
        lower = [1] * len(used) + ([0] * nd if complex_part else [1] * nd)
        extra = None
        if complex_part:
            from scipy.optimize import LinearConstraint

            extra = LinearConstraint(np.array([[0] * len(used) + [1, 1]], dtype=float), 1, np.inf)
        deg_obj = [0] * len(used) + [1] * nd
        order = [deg_obj] + [[int(k == i) for k in range(nv)] for i in range(len(used))]
        if complex_part:
            order.append([0] * len(used) + [1, 0])
        sol = _milp_min(rows, nv, lower, order, extra)
        if sol is not None and all(sum(r * x for r, x in zip(row, sol)) == 0 for row in rows):
            return finish(sol)
    if complex_part:
        msg = f"{name}: no solution with positive weights, d, d' >= 0 and d + d' > 0"
    else:
        msg = f"{name}: no solution with positive weights and {degree_names[0]} > 0"
    diags.append(msg)
    return _SubResult(None, None, free, diags)


@dataclass(frozen=True)
class WeightReport:
    feasible: bool
    weights: WeightSystem | None
    violated: tuple
    diagnostics: tuple
    parts: dict

    def to_json(self):
        return {
            "radial": self.parts.get("radial"),
            "polar": self.parts.get("polar"),
            "complex_polar": self.parts.get("complex_polar"),
            "feasible": self.feasible,
            "violated": list(self.violated),
            "diagnostics": list(self.diagnostics),
        }


def weight_report(F: MixedPolynomial) -> WeightReport:
    """Solve all three subsystems and collect a structured report."""
    D = degree_system(F)
    n = F.n
    rad = _solve_subsystem("radial", [D.radial], n, ["a"])
    pol = _solve_subsystem("polar", [D.polar], n, ["c"])
    cpx = _solve_subsystem("complex_polar", [D.theta, D.thetabar], n, ["d", "d'"])
    parts = {
        "radial": None if rad.weights is None else {"t": rad.weights, "a": rad.degrees[0]},
        "polar": None if pol.weights is None else {"p": pol.weights, "c": pol.degrees[0]},
        "complex_polar": None
        if cpx.weights is None
        else {"u": cpx.weights, "d": cpx.degrees[0], "dprime": cpx.degrees[1]},
    }
    violated = tuple(k for k, v in parts.items() if v is None)
    diagnostics = tuple(rad.diagnostics + pol.diagnostics + cpx.diagnostics)
    W = None
    if not violated:
        W = WeightSystem(
            rad.weights, rad.degrees[0], pol.weights, pol.degrees[0],
            cpx.weights, cpx.degrees[0], cpx.degrees[1],
            unconstrained={"radial": rad.unconstrained, "polar": pol.unconstrained,
                           "complex_polar": cpx.unconstrained},
        )
    return WeightReport(not violated, W, violated, diagnostics, parts)


def solve_weights(F: MixedPolynomial) -> WeightSystem:
    rep = weight_report(F)
    if not rep.feasible:
        raise InfeasibleWeights(
            f"not polar weighted homogeneous: {', '.join(rep.violated)} subsystem infeasible",
            list(rep.diagnostics),
            rep.to_json(),
        )
    return rep.weights


# -- the action ------------------------------------------------------------------

@dataclass(frozen=True)
class PolarActionElement:
    """Lambda = s e^{i theta} e^{j Theta}."""

    s: float
    theta: float
    Theta: complex

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError("radial parameter s must be positive")
        object.__setattr__(self, "Theta", complex(self.Theta))

    def compose(self, other: "PolarActionElement") -> "PolarActionElement":
        return PolarActionElement(self.s * other.s, self.theta + other.theta, self.Theta + other.Theta)

    def inverse(self) -> "PolarActionElement":
        return PolarActionElement(1.0 / self.s, -self.theta, -self.Theta)

    def as_bicomplex(self) -> Bicomplex:
        return _exp_i(self.theta) * exp_j(self.Theta) * self.s

    @classmethod
    def identity(cls) -> "PolarActionElement":
        return cls(1.0, 0.0, 0j)


def _exp_i(phi: float) -> Bicomplex:
    return Bicomplex(math.cos(phi), math.sin(phi), 0.0, 0.0)


@dataclass(frozen=True)
class ActedPoint:
    Z: list
    tilde: list
    hat: list
    bar: list


def apply_action(L: PolarActionElement, W: WeightSystem, Zs) -> ActedPoint:
    """Weighted action with the conjugate images written out factor by factor."""
    Zs = [Bicomplex.coerce(z) for z in Zs]
    if len(Zs) != W.n:
        raise ArityError(f"weights for {W.n} variables, got {len(Zs)} values")
    Th, Thc = L.Theta, L.Theta.conjugate()
    outs = ([], [], [], [])
    for z, t, p, u in zip(Zs, W.t, W.p, W.u):
        r = L.s ** t
        ei, emi = _exp_i(p * L.theta), _exp_i(-p * L.theta)
        outs[0].append(ei * exp_j(u * Th) * z * r)
        outs[1].append(emi * exp_j(-u * Thc) * z.tilde() * r)
        outs[2].append(ei * exp_j(-u * Th) * z.hat() * r)
        outs[3].append(emi * exp_j(u * Thc) * z.bar() * r)
    return ActedPoint(*outs)


def action_factor(L: PolarActionElement, W: WeightSystem) -> Bicomplex:
    """s^a e^{i c theta} e^{j d Theta} e^{j d' conj(Theta)}; zero degrees contribute 1."""
    out = _exp_i(W.c * L.theta) * (L.s ** W.a)
    if W.d:
        out = out * exp_j(W.d * L.Theta)
    if W.dprime:
        out = out * exp_j(W.dprime * L.Theta.conjugate())
    return out


def random_point(rng: random.Random, n: int, scale: float = 1.0) -> list[Bicomplex]:
    return [Bicomplex(*(rng.gauss(0.0, scale) for _ in range(4))) for _ in range(n)]


def random_action(rng: random.Random, W: WeightSystem | None = None) -> PolarActionElement:
    """Random group element; with W, s^a and |e^{j d Theta}| are kept within e^{+-1}."""
    log_span, imag = 0.4, 0.5
    if W is not None:
        log_span = min(log_span, 1.0 / max(1, abs(W.a), *map(abs, W.t)))
        imag = min(imag, 1.0 / max(1, abs(W.d), abs(W.dprime), *map(abs, W.u)))
    return PolarActionElement(
        math.exp(rng.uniform(-log_span, log_span)),
        rng.uniform(0.0, 2 * math.pi),
        complex(rng.uniform(0.0, 2 * math.pi), rng.uniform(-imag, imag)),
    )


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    worst: float
    samples: int

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"pass": self.passed, "worst_residual": self.worst, "samples": self.samples}


def _rel(diff: Bicomplex, ref: Bicomplex) -> float:
    return norm_euclid(diff) / max(norm_euclid(ref), 1.0)


def verify_homogeneity(F: MixedPolynomial, W: WeightSystem, samples: int = 100,
                       tol: float = HOMOGENEITY_TOL, seed: int = 42) -> CheckResult:
    """Sampled check of F(Lambda . Z) = s^a e^{ic theta} e^{jd Theta} e^{jd' conj Theta} F(Z)."""
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        Zs = random_point(rng, F.n)
        L = random_action(rng, W)
        acted = apply_action(L, W, Zs)
        lhs = eval_components(F, acted.Z, acted.tilde, acted.hat, acted.bar)
        rhs = action_factor(L, W) * eval_poly(F, Zs)
        worst = max(worst, _rel(lhs - rhs, rhs))
    return CheckResult(worst <= tol, worst, samples)


# -- Euler identities ----------------------------------------------------------------

EULER_NAMES = ("radial", "polar", "theta", "thetabar")


def euler_residuals(F: MixedPolynomial, W: WeightSystem) -> dict[str, MixedPolynomial]:
    """The four Euler identities as residual polynomials (zero iff they hold).

        sum t_l (Z dZ + Z~ dZ~ + Z^ dZ^ + Z- dZ-) F - a F
        sum p_l (Z dZ - Z~ dZ~ + Z^ dZ^ - Z- dZ-) F - c F
        sum u_l (Z dZ - Z^ dZ^) F - d F
        sum u_l (Z- dZ- - Z~ dZ~) F - d' F
    """
    if F.n != W.n:
        raise ArityError(f"weights for {W.n} variables, polynomial has {F.n}")
    signs = {
        "radial": (1, 1, 1, 1),
        "polar": (1, -1, 1, -1),
        "theta": (1, 0, -1, 0),
        "thetabar": (0, -1, 0, 1),
    }
    weights = {"radial": W.t, "polar": W.p, "theta": W.u, "thetabar": W.u}
    degrees = {"radial": W.a, "polar": W.c, "theta": W.d, "thetabar": W.dprime}
    euler = {}
    partials = {
        (kind, i): sym_partial(kind, F, i) * MixedPolynomial.variable(i, F.n, kind)
        for kind in KINDS
        for i in range(F.n)
    }
    for name in EULER_NAMES:
        acc = F * (-degrees[name])
        for i in range(F.n):
            for sgn, kind in zip(signs[name], KINDS):
                if sgn:
                    acc = acc + partials[(kind, i)] * (sgn * weights[name][i])
        euler[name] = acc
    return euler


@dataclass(frozen=True)
class EulerResult:
    residuals: dict
    exact_zero: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {
            "pass": self.passed,
            "residuals": dict(self.residuals),
            "symbolically_zero": dict(self.exact_zero),
        }


def euler_check(F: MixedPolynomial, W: WeightSystem, samples: int = 100,
                tol: float = HOMOGENEITY_TOL, seed: int = 42) -> EulerResult:
    """Max relative residual of each Euler identity over random points."""
    res = euler_residuals(F, W)
    rng = random.Random(seed)
    points = [random_point(rng, F.n) for _ in range(samples)]
    scale = max(1, abs(W.a), abs(W.c), abs(W.d), abs(W.dprime))
    worst = {}
    for name, R in res.items():
        if not R:
            worst[name] = 0.0
            continue
        w = 0.0
        for Zs in points:
            ref = eval_poly(F, Zs)
            w = max(w, norm_euclid(eval_poly(R, Zs)) / max(scale * norm_euclid(ref), 1.0))
        worst[name] = w
    return EulerResult(worst, {k: not v for k, v in res.items()}, tol)


# -- idempotent components -------------------------------------------------------------

def idempotent_homogeneity_check(F: MixedPolynomial, W: WeightSystem, samples: int = 100,
                                 tol: float = HOMOGENEITY_TOL, seed: int = 42) -> CheckResult:
    """(f1, f2) under z1 -> s^t e^{i(p theta - u Theta)} z1, z2 -> s^t e^{i(p theta + u Theta)} z2.

    Both components pick up s^a e^{i c theta}, times e^{-i(d Theta + d' conj Theta)}
    for f1 and e^{+i(d Theta + d' conj Theta)} for f2.
    """
    from .poly import idempotent_rep

    pair = idempotent_rep(F)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        Zs = random_point(rng, F.n)
        L = random_action(rng, W)
        z1 = [complex(z.z1) for z in Zs]
        z2 = [complex(z.z2) for z in Zs]
        m1 = [L.s**t * cmath.exp(1j * (p * L.theta - u * L.Theta)) for t, p, u in zip(W.t, W.p, W.u)]
        m2 = [L.s**t * cmath.exp(1j * (p * L.theta + u * L.Theta)) for t, p, u in zip(W.t, W.p, W.u)]
        a1 = [x * m for x, m in zip(z1, m1)]
        a2 = [x * m for x, m in zip(z2, m2)]
        # conj(z) transforms by the conjugate multiplier, which the evaluator computes itself
        base = L.s**W.a * cmath.exp(1j * W.c * L.theta)
        phase = W.d * L.Theta + W.dprime * L.Theta.conjugate()
        lhs1, lhs2 = complex(pair.f1(a1, a2)), complex(pair.f2(a1, a2))
        rhs1 = base * cmath.exp(-1j * phase) * complex(pair.f1(z1, z2))
        rhs2 = base * cmath.exp(1j * phase) * complex(pair.f2(z1, z2))
        for l, r in ((lhs1, rhs1), (lhs2, rhs2)):
            worst = max(worst, abs(l - r) / max(abs(r), 1.0))
    return CheckResult(worst <= tol, worst, samples)


# -- join ------------------------------------------------------------------------------------

def join_weights(WF: WeightSystem, WG: WeightSystem) -> WeightSystem:
    """Weights of F(Z) + G(W) on disjoint variable blocks.

    Radial: t scaled by a'/r and t' by a/r with r = gcd(a, a'); the joint
    degree is a * a'/r = lcm(a, a'). Polar likewise. The complex-polar part
    needs (d, d') and (e, e') proportional; u and u' are scaled so both
    degree pairs agree.
    """
    def radial_like(w, deg, w2, deg2):
        r = math.gcd(deg, deg2)
        k1, k2 = deg // r, deg2 // r
        return [x * k2 for x in w] + [x * k1 for x in w2], deg * k2

    t, a = radial_like(WF.t, WF.a, WG.t, WG.a)
    p, c = radial_like(WF.p, WF.c, WG.p, WG.c)
    d, dp, e, ep = WF.d, WF.dprime, WG.d, WG.dprime
    if d * ep != dp * e or (d, dp) == (0, 0) or (e, ep) == (0, 0):
        raise InfeasibleWeights(
            "complex-polar degrees are not proportional",
            [f"complex_polar: (d, d') = ({d}, {dp}) and (e, e') = ({e}, {ep}) admit no common scaling"],
            {"feasible": False, "violated": ["complex_polar"]},
        )
    g1, g2 = math.gcd(d, dp), math.gcd(e, ep)
    g = math.gcd(g1, g2)
    alpha, beta = g2 // g, g1 // g
    u = [x * alpha for x in WF.u] + [x * beta for x in WG.u]
    return WeightSystem(t, a, p, c, u, d * alpha, dp * alpha)


def join_polynomials(F: MixedPolynomial, G: MixedPolynomial) -> MixedPolynomial:
    n = F.n + G.n
    return F.with_arity(n, 0) + G.with_arity(n, F.n)


# -- reference normalisation ------------------------------------------------------------------

def reciprocal_type(values: Sequence[int]) -> tuple[list[int], int]:
    """Integer normalisation of (1/v_1, ..., 1/v_n; 1): weights L/v_i, degree L, L = lcm(v)."""
    if any(v <= 0 for v in values):
        raise ValueError("reciprocal types need positive entries")
    L = reduce(lambda x, y: x * y // math.gcd(x, y), values, 1)
    return [L // v for v in values], L
