"""Command-line interface: ``ihr-nef <command> ...``.

Exit status is 0 on success, 1 on a domain or convergence error (and when
``verify`` finds a failing check), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import families as fam
from . import mixture as mx
from . import verify as vf
from .errors import DomainError, IhrError
from .numerics import DEFAULT_TOL, ToleranceConfig

EXAMPLE_FAMILIES = ("normal:1", "gamma:2", "ig:1", "hc:1", "hc:2", "ressel:1", "kummer:1:-2")


def _family_arg(text):
    try:
        return fam.make_family(text)
    except IhrError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("value must be finite")
    return v


def _positive_float(text):
    v = _finite_float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return v


def _grid_size(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return n


def _jsonable(obj):
    # JSON has no infinities or NaN; emit them as strings
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dump(obj, stream):
    json.dump(_jsonable(obj), stream, indent=2, allow_nan=False)
    stream.write("\n")


def _describe(fd):
    return {
        "family": str(fd.kind),
        "support_left": fd.support_left,
        "lambda_domain": list(fd.lambda_domain),
        "variance_function": fd.vf_text,
        "log_concavity": fd.log_concavity_note,
        "t_tail": {
            "exp_rate": fd.t_tail.exp_rate,
            "poly_degree": fd.t_tail.poly_degree,
            "certified": fd.t_tail.certified,
        },
    }


def _cmd_families(args, cfg, out):
    fds = [args.family] if args.family else [fam.make_family(s) for s in EXAMPLE_FAMILIES]
    _dump([_describe(fd) for fd in fds], out)
    return 0


def _cmd_feasible(args, cfg, out):
    fd = args.family
    reports = {}
    if args.method in ("analytic", "both"):
        reports["analytic"] = mx.feasibility_analytic(fd, args.c, args.d).to_dict()
    if args.method in ("numeric", "both"):
        reports["numeric"] = mx.feasibility_numeric(fd, args.c, args.d, cfg).to_dict()
    doc = {"family": str(fd.kind), "c": args.c, "d": args.d}
    if len(reports) == 1:
        doc.update(next(iter(reports.values())))
    else:
        # numeric oracle decides unless it could not
        a, n = reports["analytic"], reports["numeric"]
        doc["verdict"] = n["verdict"] if n["verdict"] != "unknown" else a["verdict"]
        doc["notes"] = a["notes"] + [t for t in n["notes"] if t not in a["notes"]]
        doc.update(reports)
    _dump(doc, out)
    return 0


def _cmd_plan(args, cfg, out):
    plan = mx.build_plan(args.family, args.lambda_mid, args.c, args.d)
    doc = plan.to_dict()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            _dump(doc, fh)
    _dump(doc, out)
    return 0


def _plan_from_file(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
        fd = fam.make_family(doc["family"])
        return mx.build_plan(fd, float(doc["lambda_mid"]), float(doc["c"]), float(doc["d"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, IhrError):
            raise
        raise argparse.ArgumentTypeError(f"malformed plan file: {exc}") from None


def _cmd_hazard(args, cfg, out):
    if args.plan:
        plan = _plan_from_file(args.plan)
    else:
        missing = [n for n in ("family", "lambda_mid", "c", "d") if getattr(args, n) is None]
        if missing:
            raise argparse.ArgumentTypeError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))
        plan = mx.build_plan(args.family, args.lambda_mid, args.c, args.d)
    if not args.x_lo < args.x_hi:
        raise argparse.ArgumentTypeError("need --x-lo < --x-hi")
    xs = vf.linspace(args.x_lo, args.x_hi, args.n)
    log_surv = mx.survival_grid(plan, xs, cfg)
    rows = []
    for x, ls in zip(xs, log_surv):
        if ls < mx.LOG_TINY:
            raise DomainError(f"survival underflow beyond x={x!r}")
        lf = mx.log_mixture_density(plan, x)
        rows.append((x, math.exp(lf), math.exp(ls), math.exp(lf - ls)))
    if args.format == "csv":
        out.write("x,density,survival,hazard\n")
        for row in rows:
            out.write(",".join(format(v, ".17g") for v in row) + "\n")
        return 0
    doc = {"plan": plan.to_dict(), "columns": ["x", "density", "survival", "hazard"], "rows": rows}
    if args.n >= 100:
        rep = vf.check_hazard_monotone(plan, args.x_lo, args.x_hi, args.n, cfg)
        doc["monotone"] = rep.monotone
        doc["max_drop"] = rep.max_drop
        doc["drop_location"] = rep.drop_location
        doc["min_functional"] = rep.min_functional
    _dump(doc, out)
    return 0


def _cmd_laplace(args, cfg, out):
    out.write(repr(fam.laplace(args.family, args.lam)) + "\n")
    return 0


def _cmd_verify(args, cfg, out):
    checks = vf.run_suite(args.suite, cfg)
    ok = all(c["passed"] for c in checks)
    _dump({"suite": args.suite, "passed": ok, "checks": checks}, out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    # tolerance flags are accepted before or after the subcommand
    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--rel-tol", type=_positive_float, default=argparse.SUPPRESS)
    tol.add_argument("--abs-tol", type=_positive_float, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="ihr-nef",
        description="Build two-component NEF mixtures whose hazard is nondecreasing.",
        parents=[tol],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", parents=[tol], help="describe family generators")
    p.add_argument("--family", type=_family_arg)
    p.set_defaults(func=_cmd_families)

    p = sub.add_parser("feasible", parents=[tol], help="decide c T(x) <= cosh(cx+d)")
    p.add_argument("--family", type=_family_arg, required=True)
    p.add_argument("--c", type=_finite_float, required=True)
    p.add_argument("--d", type=_finite_float, required=True)
    p.add_argument("--method", choices=("analytic", "numeric", "both"), default="both")
    p.set_defaults(func=_cmd_feasible)

    p = sub.add_parser("plan", parents=[tol], help="build a two-point mixture plan")
    p.add_argument("--family", type=_family_arg, required=True)
    p.add_argument("--lambda-mid", type=_finite_float, required=True)
    p.add_argument("--c", type=_finite_float, required=True)
    p.add_argument("--d", type=_finite_float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("hazard", parents=[tol], help="tabulate density, survival and hazard")
    p.add_argument("--plan", help="plan JSON written by 'plan --out'")
    p.add_argument("--family", type=_family_arg)
    p.add_argument("--lambda-mid", type=_finite_float)
    p.add_argument("--c", type=_finite_float)
    p.add_argument("--d", type=_finite_float)
    p.add_argument("--x-lo", type=_finite_float, required=True)
    p.add_argument("--x-hi", type=_finite_float, required=True)
    p.add_argument("--n", type=_grid_size, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_hazard)

    p = sub.add_parser("laplace", parents=[tol], help="evaluate the Laplace transform")
    p.add_argument("--family", type=_family_arg, required=True)
    p.add_argument("--lambda", dest="lam", type=_finite_float, required=True)
    p.set_defaults(func=_cmd_laplace)

    p = sub.add_parser("verify", parents=[tol], help="run the verification suite")
    p.add_argument("--suite", choices=("all", "family", "lemmas", "errata"), default="all")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = ToleranceConfig(
            rel_tol=getattr(args, "rel_tol", DEFAULT_TOL.rel_tol),
            abs_tol=getattr(args, "abs_tol", DEFAULT_TOL.abs_tol),
        )
        return args.func(args, cfg, sys.stdout)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except (IhrError, OSError) as exc:
        print(f"ihr-nef: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
