"""Command-line front end: radius catalog, functionals, golden radius table, verification, sweeps.

Exit codes: 0 success, 1 verification failure, 2 bad parameters or input,
3 when the radius solver finds no sign change.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from bohrlab import extremal, functionals, radii, verify
from bohrlab.errors import BohrError, NoSignChangeError
from bohrlab.series import tail_error
from bohrlab.weights import parse_weights

EXIT_OK, EXIT_FAIL, EXIT_PARAM, EXIT_NO_ROOT = 0, 1, 2, 3

CSV_DECIMALS = 6
SWEEP_PARAMS = ("a0", "lambda", "m", "q")
# flag name -> catalog parameter name
PARAM_FLAGS = {"p": "p", "q": "q", "m": "m", "k": "k", "a0": "a0", "lam": "lambda"}

FUNCTIONALS = {
    "Mf": ("M_f", "M_f0"),
    "Mf0": ("M_f0",),
    "Af": ("A_f", "A_f0"),
    "Af0": ("A_f0",),
    "norm_sq": ("norm_sq", "norm0_sq"),
    "area_ratio": ("area_ratio",),
    "max_modulus": (),
}


class UsageError(Exception):
    """Bad command-line input; reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own errors, which matches our convention
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


# output helpers ------------------------------------------------------------------

def fmt6(x) -> str:
    if isinstance(x, str):
        return x
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    return f"{x:.{CSV_DECIMALS}f}"


def write_csv(out, header: dict, columns: list[str], rows: list[dict], footer: dict | None = None):
    """'#'-prefixed header lines, a CSV table, then '#'-prefixed footer lines."""
    for key, val in header.items():
        out.write(f"# {key}: {_echo(val)}\n")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt6(row.get(c)) for c in columns])
    out.write(buf.getvalue())
    for key, val in (footer or {}).items():
        out.write(f"# {key}: {fmt6(val) if isinstance(val, float) else _echo(val)}\n")


def _echo(val) -> str:
    if isinstance(val, (dict, list, tuple)):
        return json.dumps(val, default=str, sort_keys=True)
    return str(val)


def write_json(out, payload):
    out.write(json.dumps(payload, indent=2, default=_json_default, allow_nan=True))
    out.write("\n")


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit(args, render):
    out, close = _open_out(getattr(args, "out", None))
    try:
        render(out)
    finally:
        if close:
            out.close()


# parameter handling ------------------------------------------------------------------

def _add_param_flags(p: argparse.ArgumentParser, with_weights: bool = True):
    g = p.add_argument_group("equation parameters")
    g.add_argument("--p", type=float)
    g.add_argument("--q", type=float)
    g.add_argument("--m", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--a0", type=float)
    g.add_argument("--lambda", dest="lam", type=float)
    if with_weights:
        g.add_argument("--weights", help="geometric, harmonic, even_only, odd_only, lacunary:K, "
                                         "monomial:plain, monomial:harmonic, monomial:file=PATH")


def _given_params(args) -> dict:
    out = {}
    for flag, name in PARAM_FLAGS.items():
        val = getattr(args, flag, None)
        if val is not None:
            out[name] = int(val) if name == "p" and float(val).is_integer() else val
    if getattr(args, "weights", None):
        out["weights"] = args.weights
    return out


def _catalog_params(entry: radii.RadiusDef, given: dict) -> dict:
    """Check given flags against the entry's parameter list and resolve weights."""
    extra = sorted(set(given) - set(entry.params))
    if extra:
        raise UsageError(f"{entry.id} does not take parameter(s) {', '.join(extra)}; "
                         f"accepted: {', '.join(entry.params) or 'none'}")
    P = dict(given)
    if "weights" in entry.params:
        P["weights"] = parse_weights(P.get("weights", "geometric"))
    return P


def _echo_params(P: dict) -> dict:
    return {k: (v if isinstance(v, (int, float, str)) or v is None else getattr(v, "label", str(v)))
            for k, v in P.items()}


def _weights_label(text: str | None) -> str:
    return text or "geometric"


# commands -------------------------------------------------------------------------------

def cmd_radius(args) -> int:
    if args.id not in radii.CATALOG:
        raise UsageError(f"unknown radius id {args.id!r}; known: {', '.join(sorted(radii.CATALOG))}")
    entry = radii.CATALOG[args.id]
    given = _given_params(args)
    P = _catalog_params(entry, given)
    res = radii.radius(radii.RadiusQuery(args.id, P), tol=args.tol)
    echo = _echo_params(given)
    if "weights" in entry.params:
        echo["weights"] = _weights_label(given.get("weights"))
    payload = {"id": args.id, "params": echo, "value": res.value, "residual": res.residual,
               "bracket": list(res.bracket), "iterations": res.iterations}

    def render(out):
        if args.format == "csv":
            write_csv(out, {"command": "radius", "id": args.id, "params": echo, "tol": args.tol},
                      ["id", "value", "residual", "bracket_lo", "bracket_hi", "iterations"],
                      [{"id": args.id, "value": res.value, "residual": res.residual,
                        "bracket_lo": res.bracket[0], "bracket_hi": res.bracket[1],
                        "iterations": res.iterations}])
        else:
            write_json(out, payload)
    _emit(args, render)
    return EXIT_OK


def evaluate_functional(name: str, f, r: float, theta_samples: int) -> dict:
    """Value (and companion fields) of a named functional at radius r."""
    if name not in FUNCTIONALS:
        raise UsageError(f"unknown functional {name!r}; known: {', '.join(FUNCTIONALS)}")
    if name == "max_modulus":
        vals = np.abs(functionals.circle_values(f, np.array([r]), theta_samples))[0]
        j = int(np.argmax(vals))
        budget = float(tail_error(f, r))
        return {"value": float(vals[j]), "tail_budget": budget, "theta": 2 * math.pi * j / theta_samples}
    st = functionals.series_stats(f, r)
    fields = FUNCTIONALS[name]
    budget = {"area_ratio": st.area_tail, "norm_sq": st.square_tail}.get(name, st.majorant_tail)
    out = {"value": float(getattr(st, fields[0])), "tail_budget": float(budget)}
    for extra in fields[1:]:
        out[extra] = float(getattr(st, extra))
    if name == "Af":
        out["A_f"] = out["value"]
    return out


def cmd_eval(args) -> int:
    if not 0.0 <= args.r < 1.0:
        raise UsageError("--r must lie in [0, 1)")
    if args.theta_samples < 1:
        raise UsageError("--theta-samples must be positive")
    spec = extremal.parse_function_spec(args.function)
    f = extremal.realize(spec, args.r)
    result = evaluate_functional(args.functional, f, args.r, args.theta_samples)
    payload = {"functional": args.functional, "function": args.function, "r": args.r, **result,
               "order": f.order, "theta_samples": args.theta_samples}

    def render(out):
        if args.format == "csv":
            cols = ["functional", "function", "r"] + [k for k in result]
            write_csv(out, {"command": "eval", "functional": args.functional, "function": args.function,
                            "r": args.r, "theta_samples": args.theta_samples, "order": f.order},
                      cols, [{"functional": args.functional, "function": args.function, "r": args.r, **result}])
        else:
            write_json(out, payload)
    _emit(args, render)
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = radii.table1()
    max_diff = max(r["abs_diff"] for r in rows)

    def render(out):
        if args.format == "json":
            write_json(out, {"rows": rows, "max_abs_diff": max_diff, "reference": radii.TABLE1_SOURCE})
        else:
            write_csv(out, {"command": "table1", "weights": "geometric", "reference": radii.TABLE1_SOURCE},
                      ["p", "q", "m", "radius", "printed", "abs_diff"],
                      [dict(r, p=_num(r["p"]), q=_num(r["q"])) for r in rows],
                      footer={"max_abs_diff": max_diff})
    _emit(args, render)
    return EXIT_OK


def _num(x):
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def _boundary_note(theorem_id: str, params: dict) -> dict | None:
    """For theorem5_I: the extremal monomial reaches the bound exactly at the radius."""
    if theorem_id != "theorem5_I":
        return None
    cl = verify.claim(theorem_id)
    P = dict(cl.param_sets[0])
    P.update(params or {})
    P = verify._normalize_params(cl, P)
    R = cl.radius(P, 0.0)
    spec = extremal.monomial(P["p"] + P["m"])
    f = extremal.realize(spec, R)
    ev = cl.evaluate(f, P, np.array([R]), functionals.DEFAULT_THETA_SAMPLES)
    return {"function": spec.label, "r": R, "lhs": float(ev.lhs[0]), "rhs": float(ev.rhs[0]),
            "equality_residual": abs(float(ev.lhs[0]) - float(ev.rhs[0]))}


def cmd_verify(args) -> int:
    ids = sorted(verify.claims()) if args.theorem == "all" else [args.theorem]
    for tid in ids:
        verify.claim(tid)
    params = _given_params(args) or None
    if params and len(ids) > 1:
        raise UsageError("parameter flags need a single --theorem")
    records = []
    ok = True
    for tid in ids:
        rep = verify.check_theorem(tid, r_points=args.r_points, theta_samples=args.theta_samples,
                                   params=params, samples=args.samples, seed=args.seed)
        sharp = verify.sharpness_probe(tid, delta=args.delta, theta_samples=args.theta_samples, params=params)
        clause = verify.has_sharpness_clause(tid)
        sharp_ok = sharp.found or not clause
        passed = rep.passed and sharp_ok
        ok &= passed
        rec = {"theorem": tid, "passed": passed, "inequality_passed": rep.passed,
               "sharpness_clause": clause, "sharpness_found": sharp.found,
               "report": rep.to_dict(), "sharpness": sharp.to_dict()}
        note = _boundary_note(tid, params)
        if note is not None:
            rec["boundary_equality"] = note
        records.append(rec)
        if not passed:
            _print_failure(rec)
    header = {"command": "verify", "theorems": ids, "samples": args.samples, "seed": args.seed,
              "delta": args.delta, "r_points": args.r_points, "theta_samples": args.theta_samples,
              "params": params or "defaults"}

    def render(out):
        if args.format == "csv":
            cols = ["theorem", "passed", "max_violation", "max_excess", "max_budget", "functions_checked",
                    "sharpness_clause", "sharpness_found", "witness_function", "witness_r", "elapsed"]
            rows = [{"theorem": r["theorem"], "passed": str(r["passed"]),
                     "max_violation": r["report"]["max_violation"], "max_excess": r["report"]["max_excess"],
                     "max_budget": r["report"]["max_budget"],
                     "functions_checked": r["report"]["functions_checked"],
                     "sharpness_clause": str(r["sharpness_clause"]), "sharpness_found": str(r["sharpness_found"]),
                     "witness_function": r["report"].get("witness_function") or "",
                     "witness_r": r["report"].get("witness_r"), "elapsed": r["report"]["elapsed"]}
                    for r in records]
            write_csv(out, header, cols, rows, footer={"all_passed": str(ok)})
        else:
            write_json(out, {"resolved": header, "results": records, "all_passed": ok})
    _emit(args, render)
    return EXIT_OK if ok else EXIT_FAIL


def _print_failure(rec: dict):
    rep = rec["report"]
    lines = [f"FAILED {rec['theorem']}"]
    if not rec["inequality_passed"]:
        lines.append(f"  max_violation={rep['max_violation']!r} witness={rep.get('witness_function')} "
                     f"params={rep.get('witness_params')} r={rep.get('witness_r')!r} "
                     f"theta={rep.get('witness_theta')!r} lhs={rep.get('witness_lhs')!r} "
                     f"rhs={rep.get('witness_rhs')!r}")
    if rec["sharpness_clause"] and not rec["sharpness_found"]:
        lines.append(f"  no sharpness witness; closest: {rec['sharpness']['missing']}")
    print("\n".join(lines), file=sys.stderr)


def sweep_values(start: float, stop: float, step: float, integer: bool) -> list:
    if step <= 0:
        raise UsageError("--step must be positive")
    if stop < start:
        raise UsageError("--to must be >= --from")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    vals = [start + i * step for i in range(n)]
    if integer:
        if any(abs(v - round(v)) > 1e-12 for v in vals):
            raise UsageError("integer parameter needs integer --from and --step")
        return [int(round(v)) for v in vals]
    return [round(v, 12) for v in vals]


def monotonicity(values: list[float], tol: float = 1e-12) -> tuple[list[str], str]:
    trend = [""]
    for a, b in zip(values, values[1:]):
        trend.append("up" if b > a + tol else "down" if b < a - tol else "flat")
    steps = set(trend[1:])
    if not steps or steps == {"flat"}:
        summary = "constant"
    elif steps <= {"up", "flat"}:
        summary = "nondecreasing" if "flat" in steps else "increasing"
    elif steps <= {"down", "flat"}:
        summary = "nonincreasing" if "flat" in steps else "decreasing"
    else:
        summary = "not monotone"
    return trend, summary


def cmd_sweep(args) -> int:
    if args.id not in radii.CATALOG:
        raise UsageError(f"unknown radius id {args.id!r}")
    entry = radii.CATALOG[args.id]
    if args.param not in entry.params:
        raise UsageError(f"{args.id} does not depend on {args.param!r}; parameters: "
                         f"{', '.join(entry.params) or 'none'}")
    given = _given_params(args)
    if args.param in given:
        raise UsageError(f"--{args.param} is the swept parameter; drop the fixed value")
    base = _catalog_params(entry, given)
    xs = sweep_values(args.start, args.stop, args.step, integer=args.param == "m")
    values = [radii.radius(radii.RadiusQuery(args.id, {**base, args.param: x}), tol=args.tol).value for x in xs]
    trend, summary = monotonicity(values)
    echo = _echo_params(given)
    if "weights" in entry.params:
        echo["weights"] = _weights_label(given.get("weights"))
    header = {"command": "sweep", "id": args.id, "param": args.param, "from": args.start, "to": args.stop,
              "step": args.step, "fixed": echo}
    rows = [{args.param: x, "radius": v, "trend": t} for x, v, t in zip(xs, values, trend)]

    def render(out):
        if args.format == "json":
            write_json(out, {"resolved": header, "rows": rows, "monotonicity": summary})
        else:
            write_csv(out, header, [args.param, "radius", "trend"], rows,
                      footer={"monotonicity": summary, "min": min(values), "max": max(values)})
    _emit(args, render)
    return EXIT_OK


# parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bohrlab", description="Bohr-type radius and inequality toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, default):
        p.add_argument("--format", choices=("json", "csv"), default=default)
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("radius", help="solve a catalog radius equation")
    p.add_argument("--id", required=True)
    p.add_argument("--tol", type=float, default=radii.DEFAULT_TOL)
    _add_param_flags(p)
    fmt(p, "json")
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("eval", help="evaluate a functional of a test function")
    p.add_argument("--functional", required=True, choices=tuple(FUNCTIONALS))
    p.add_argument("--function", required=True, help="e.g. phi:a=0.5, psi:a=0.5, mono:k=3, blaschke:seed=1,deg=3")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--theta-samples", type=int, default=functionals.DEFAULT_THETA_SAMPLES)
    fmt(p, "json")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table1", help="recompute the theorem2_Rpmq radius table against golden values")
    fmt(p, "csv")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="check a claim on the standard corpus and probe sharpness")
    p.add_argument("--theorem", required=True, help="claim id, or 'all'")
    p.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--r-points", type=int, default=verify.DEFAULT_R_POINTS)
    p.add_argument("--theta-samples", type=int, default=functionals.DEFAULT_THETA_SAMPLES)
    _add_param_flags(p)
    fmt(p, "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate a radius over one parameter")
    p.add_argument("--id", required=True)
    p.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--tol", type=float, default=radii.DEFAULT_TOL)
    _add_param_flags(p)
    fmt(p, "csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoSignChangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except (UsageError, BohrError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
