"""Command-line front end. Every command prints one JSON report.

Exit codes: 0 pass, 2 mathematical infeasibility or failed check, 1 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bicomplex import Bicomplex, exp_j, format_literal, norm_euclid, parse_literal
from .calculus import holomorphy_test
from .errors import ArityError, BicomplexDomainError, PreconditionError
from .parser import ParseError, parse
from .poly import classify, idempotent_rep
from .topology import (
    FibrationContext,
    bouquet_count,
    check_unfolding,
    cyclic_invariants,
    export_csv,
    global_trivialize,
    global_trivialize_inverse,
    phi_i,
    points_to_bicomplex,
    regular_value_sample,
    sample_sphere,
    sphere_trivialize,
    transversality_sample,
    tube_membership,
    unfold,
    vector_norm,
)
from .kernels import eval_points
from .weights import (
    InfeasibleWeights,
    euler_check,
    join_polynomials,
    join_weights,
    random_point,
    verify_homogeneity,
    weight_report,
)

SCHEMA = "bcmk/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


class Failure(Exception):
    """A check failed or the input is mathematically infeasible (exit 2)."""

    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


# -- helpers --------------------------------------------------------------------------

def _poly(args, text=None):
    return parse(text if text is not None else args.expr, args.n)


def _points(F, values):
    if len(values) != F.n:
        raise UsageError(f"expected {F.n} value(s) via --at, got {len(values)}")
    return [parse_literal(v) for v in values]


def _ctx(args, F, W=None):
    return FibrationContext(F, W, epsilon=args.eps, delta=args.delta, tol=args.tol, seed=args.seed)


def _weights_or_fail(F, base):
    rep = weight_report(F)
    if not rep.feasible:
        base["weights"] = rep.to_json()
        raise Failure(base)
    return rep.weights


def _value_json(Z: Bicomplex):
    return {"literal": format_literal(Z), "components": Z.to_json()}


# -- commands ---------------------------------------------------------------------------

def cmd_eval(args, out):
    F = _poly(args)
    Zs = _points(F, args.at)
    w = F(Zs)
    out.update(canonical=str(F), at=[format_literal(z) for z in Zs], value=_value_json(w),
               idempotent={"z1": format_literal(Bicomplex.from_lambdas(w.z1)),
                           "z2": format_literal(Bicomplex.from_lambdas(w.z2))})


def cmd_idempotent(args, out):
    F = _poly(args)
    pair = idempotent_rep(F)
    out.update(canonical=str(F), f1=str(pair.f1), f2=str(pair.f2))


def cmd_classify(args, out):
    F = _poly(args)
    label = classify(F)
    out.update(canonical=str(F), classification=label)
    if args.numeric:
        rng = random.Random(args.seed)
        pts = [random_point(rng, F.n) for _ in range(min(args.samples, 20))]
        res = holomorphy_test(F, pts) if F.n else None
        out["holomorphy_test"] = None if res is None else {"holomorphic": res.holomorphic, "worst": res.worst}


def cmd_weights(args, out):
    F = _poly(args)
    rep = weight_report(F)
    out.update(canonical=str(F), weights=rep.to_json())
    if not rep.feasible:
        raise Failure(out)


def cmd_verify(args, out):
    F = _poly(args)
    out["canonical"] = str(F)
    W = _weights_or_fail(F, out)
    res = verify_homogeneity(F, W, args.samples, args.tol, args.seed)
    out.update(weights=W.to_json(), homogeneity=res.to_json())
    if not res:
        raise Failure(out)


def cmd_euler(args, out):
    F = _poly(args)
    out["canonical"] = str(F)
    W = _weights_or_fail(F, out)
    res = euler_check(F, W, args.samples, args.tol, args.seed)
    out.update(weights=W.to_json(), euler=res.to_json())
    if not res:
        raise Failure(out)


def cmd_regular_scan(args, out):
    F = _poly(args)
    out["canonical"] = str(F)
    W = _weights_or_fail(F, out)
    ctx = _ctx(args, F, W)
    reg = regular_value_sample(ctx, args.samples)
    tr = transversality_sample(ctx, max(args.samples, 1000))
    out.update(weights=W.to_json(), checks=[reg.to_json(), tr.to_json()])
    if args.csv:
        X = sample_sphere(ctx, args.samples)
        Path(args.csv).write_text(export_csv(X, eval_points(F, X)))
        out["csv"] = args.csv
    if not (reg and tr):
        raise Failure(out)


def cmd_trivialize(args, out):
    F = _poly(args)
    out["canonical"] = str(F)
    W = _weights_or_fail(F, out)
    ctx = _ctx(args, F, W)
    rng = np.random.default_rng(args.seed)
    X = sample_sphere(ctx, args.samples, rng)
    fixed_U = parse_literal(args.U) if args.U else None
    fixed_z = None
    if args.z is not None:
        zl = parse_literal(args.z)
        if zl.v or zl.t:
            raise UsageError("--z is a complex angle: use only real and i parts")
        fixed_z = complex(zl.lambda1)
    worst_value = worst_rt = worst_sphere = 0.0
    skipped = 0
    for Zs in points_to_bicomplex(X):
        Z0, _ = global_trivialize_inverse(ctx, Zs)
        U = fixed_U if fixed_U is not None else Bicomplex(*rng.normal(size=4))
        try:
            T = global_trivialize(ctx, U, Z0)
        except PreconditionError:
            skipped += 1
            continue
        worst_value = max(worst_value, norm_euclid(ctx.value(T) - U) / max(norm_euclid(U), 1.0))
        Zb, Ub = global_trivialize_inverse(ctx, T)
        worst_rt = max(worst_rt, vector_norm([a - b for a, b in zip(Zb, Z0)]), norm_euclid(Ub - U))
        z = fixed_z if fixed_z is not None else complex(rng.uniform(-1, 1), 0.0)
        try:
            S = sphere_trivialize(ctx, z, Zs)
        except PreconditionError:
            skipped += 1
            continue
        target = exp_j(z) * phi_i(ctx, Zs)
        worst_sphere = max(worst_sphere, norm_euclid(phi_i(ctx, S) - target),
                           abs(vector_norm(S) - ctx.epsilon))
    passed = max(worst_value, worst_rt, worst_sphere) <= args.tol
    out.update(weights=W.to_json(), samples=args.samples, skipped_unsupported=skipped,
               residuals={"F_tau_minus_U": worst_value, "round_trip": worst_rt,
                          "sphere_target": worst_sphere},
               **{"pass": passed})
    if not passed:
        raise Failure(out)


def cmd_bouquet(args, out):
    F = _poly(args)
    out.update(canonical=str(F), **bouquet_count(F).to_json())


def cmd_cyclic(args, out):
    F = _poly(args)
    out.update(canonical=str(F), **cyclic_invariants(F).to_json())


def cmd_join(args, out):
    F, G = parse(args.expr), parse(args.expr2)
    out["canonical"] = [str(F), str(G)]
    WF = _weights_or_fail(F, out)
    WG = _weights_or_fail(G, out)
    H = join_polynomials(F, G)
    WH = join_weights(WF, WG)
    res = verify_homogeneity(H, WH, args.samples, args.tol, args.seed)
    out.update(join=str(H), weights={"F": WF.to_json(), "G": WG.to_json(), "join": WH.to_json()},
               homogeneity=res.to_json())
    if not res:
        raise Failure(out)


def cmd_unfold(args, out):
    F = _poly(args)
    u = unfold(F)
    chk = check_unfolding(u, args.samples, args.seed)
    passed = max(chk["F_phi_minus_G"], chk["round_trip"]) <= args.tol
    out.update(canonical=str(F), **u.to_json(), residuals=chk, **{"pass": passed})
    if not passed:
        raise Failure(out)


def cmd_tube(args, out):
    F = _poly(args)
    Zs = _points(F, args.at)
    ctx = _ctx(args, F)
    out.update(canonical=str(F), variant=args.variant,
               member=tube_membership(ctx, Zs, args.variant))


def cmd_report(args, out):
    F = _poly(args)
    out.update(canonical=str(F), classification=classify(F))
    rep = weight_report(F)
    out["weights"] = rep.to_json()
    if not rep.feasible:
        raise Failure(out)
    W = rep.weights
    out["homogeneity"] = verify_homogeneity(F, W, args.samples, args.tol, args.seed).to_json()
    out["euler"] = euler_check(F, W, args.samples, args.tol, args.seed).to_json()
    ctx = _ctx(args, F, W)
    out["checks"] = [regular_value_sample(ctx, args.samples).to_json(),
                     transversality_sample(ctx, max(args.samples, 1000)).to_json()]
    inv = {}
    for name, fn in (("bouquet", bouquet_count), ("cyclic", cyclic_invariants)):
        try:
            inv[name] = fn(F).to_json()
        except PreconditionError as e:
            inv[name] = {"applicable": False, "reasons": e.violations}
    out["invariants"] = inv
    ok = out["homogeneity"]["pass"] and out["euler"]["pass"] and all(c["pass"] for c in out["checks"])
    out["pass"] = bool(ok)
    if not ok:
        raise Failure(out)


COMMANDS = {
    "eval": (cmd_eval, "evaluate F at bicomplex values"),
    "idempotent": (cmd_idempotent, "idempotent components (f1, f2)"),
    "classify": (cmd_classify, "holomorphic / tilde / hat / bar / general"),
    "weights": (cmd_weights, "solve for polar weights"),
    "verify": (cmd_verify, "sampled polar homogeneity check"),
    "euler": (cmd_euler, "the four Euler identities"),
    "regular-scan": (cmd_regular_scan, "rank-4 and radial transversality sampling"),
    "trivialize": (cmd_trivialize, "global and spherical trivialization residuals"),
    "bouquet": (cmd_bouquet, "Pham-Brieskorn bouquet count"),
    "cyclic": (cmd_cyclic, "cyclic fiber invariants"),
    "join": (cmd_join, "weights of F(Z) + G(W)"),
    "unfold": (cmd_unfold, "unfolding to sum Z(a-b, 0, c-d, 0)"),
    "tube": (cmd_tube, "tube membership of a point"),
    "report": (cmd_report, "full analysis"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--eps", type=float, default=1.0)
    common.add_argument("--delta", type=float, default=0.5)
    common.add_argument("--n", type=int, default=None, help="declared number of variables")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    p = _Parser(prog="bcmk", description="Bicomplex mixed polynomial toolkit.")
    p.add_argument("--version", action="version", version=f"bcmk {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("expr")
        if name == "join":
            sp.add_argument("expr2")
        if name in ("eval", "tube"):
            sp.add_argument("--at", action="append", default=[], help="bicomplex literal, once per variable")
        if name == "tube":
            sp.add_argument("--variant", choices=("ball-target", "quadric-target"), default="ball-target")
        if name == "classify":
            sp.add_argument("--numeric", action="store_true", help="also run the sampled holomorphy test")
        if name == "regular-scan":
            sp.add_argument("--csv", default=None, help="export sampled points and F values")
        if name == "trivialize":
            sp.add_argument("--U", default=None, help="target value (default: random per sample)")
            sp.add_argument("--z", default=None, help="complex angle shift a+bi for the spherical map")
    return p


def _emit(report, path):
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _json_default(o):
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, float) and not math.isfinite(o):
        return repr(o)
    raise TypeError(f"not JSON serialisable: {o!r}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # --help, --version and usage errors
        return e.code if isinstance(e.code, int) else 1
    fn = COMMANDS[args.command][0]
    out = {"schema": SCHEMA, "command": args.command, "input": args.expr,
           "seed": args.seed, "tolerances": {"tol": args.tol, "eps": args.eps, "delta": args.delta},
           "samples_requested": args.samples}
    if args.command == "join":
        out["input"] = [args.expr, args.expr2]
    try:
        fn(args, out)
    except (ParseError, ArityError, UsageError) as e:
        out["error"] = e.to_json() if isinstance(e, ParseError) else {"error": "usage", "message": str(e)}
        print(f"bcmk: {e}", file=sys.stderr)
        _emit(out, args.out)
        return 1
    except Failure as f:
        _emit(f.report, args.out)
        return 2
    except InfeasibleWeights as e:
        out["error"] = {"error": "infeasible", "message": str(e), "violations": e.violations,
                        "report": e.report}
        _emit(out, args.out)
        return 2
    except (PreconditionError, BicomplexDomainError) as e:
        out["error"] = {"error": "precondition", "message": str(e),
                        "violations": getattr(e, "violations", [])}
        _emit(out, args.out)
        return 2
    except ValueError as e:
        out["error"] = {"error": "usage", "message": str(e)}
        print(f"bcmk: {e}", file=sys.stderr)
        _emit(out, args.out)
        return 1
    if "pass" not in out:
        out["pass"] = True
    _emit(out, args.out)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
