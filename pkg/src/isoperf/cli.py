"""Command-line front end: ``isoperf <command> [group options] [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .cayley import ElementCapExceeded, InsufficientRadius, growth_table, table_to_csv
from .groups import GroupSpec, GroupSpecError, build_group, Group
from .isoperimetry import (
    DEFAULT_LAMBDAS,
    ResourceCapExceeded,
    bound_report,
    cheeger_report,
    connected_profile,
    folner_value,
    profile,
    subset_family,
    table_for,
    verify_main_inequality,
)
from .transform import DomainError, Polynomial, StretchedExp, transform_curve_continuous, transform_curve_discrete

COMMANDS = ("growth", "bounds", "transform", "profile", "folner", "cheeger", "verify")

EXIT_OK, EXIT_VIOLATION, EXIT_SPEC, EXIT_RESOURCE = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# serialisation


def fmt_real(x) -> str:
    """Integers exactly, everything else with 17 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return "%.17g" % x


def to_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON writer; non-finite reals become the strings "inf"/"nan"."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return _json_str(obj)
    if isinstance(obj, (bool, int, float, Fraction, np.integer, np.floating)):
        if isinstance(obj, np.integer):
            obj = int(obj)
        text = fmt_real(obj)
        return _json_str(text) if text in ("inf", "-inf", "nan") else text
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_str(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, str)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _json_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def rows_to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt_real(v) for v in row])
    return buf.getvalue()


def emit(text: str, path: str | None) -> int:
    data = text if text.endswith("\n") else text + "\n"
    if path is None or path == "-":
        sys.stdout.write(data)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    return len(data.encode("utf-8"))


# ---------------------------------------------------------------------------
# argument handling


def _parse_param(text: str) -> tuple[str, Any]:
    if "=" not in text:
        raise GroupSpecError(f"--param expects k=v, got {text!r}")
    k, v = text.split("=", 1)
    try:
        return k.strip(), int(v)
    except ValueError:
        return k.strip(), v.strip()


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _number(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isoperf", description="Growth, U-transform and isoperimetric bounds for Cayley graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("group")
    g.add_argument("--kind", help="free, free_abelian, dihedral, heisenberg, lamplighter, cayley_table")
    g.add_argument("--param", action="append", default=[], metavar="K=V", help="group parameter (repeatable)")
    g.add_argument("--group", metavar="FILE", help="group spec file (JSON)")
    o = common.add_argument_group("output")
    o.add_argument("--format", choices=("csv", "json"), default="csv")
    o.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--threads", type=_positive_int, default=None, help="worker processes (default $ISOPERF_THREADS or 1)")

    s = sub.add_parser("growth", parents=[common], help="ball sizes gamma(n) and sphere sizes")
    s.add_argument("--radius", type=_positive_int, default=10)

    s = sub.add_parser("bounds", parents=[common], help="side-by-side isoperimetric lower bounds")
    s.add_argument("--t", type=_number, action="append", help="cardinality (repeatable; default 1..--max-size)")
    s.add_argument("--max-size", type=_positive_int, default=20)
    s.add_argument("--lambda", dest="lambdas", type=_number, action="append")

    s = sub.add_parser("transform", parents=[common], help="U-transform curve of a group or growth model")
    s.add_argument("--model", help="poly:c=..,d=.. or stretched:c=..,b=..,alpha=.. (instead of a group)")
    s.add_argument("--t-min", type=float, default=1.0)
    s.add_argument("--t-max", type=float, default=100.0)
    s.add_argument("--points", type=_positive_int, default=50)

    s = sub.add_parser("profile", parents=[common], help="isoperimetric profile I(m)")
    s.add_argument("--max-size", type=_positive_int, default=8)

    s = sub.add_parser("folner", parents=[common], help="Følner function values")
    s.add_argument("--n", type=_number, action="append", required=True)
    s.add_argument("--max-size", type=_positive_int, default=8)

    s = sub.add_parser("cheeger", parents=[common], help="Cheeger constant and Laplacian spectral gap")

    s = sub.add_parser("verify", parents=[common], help="check the isoperimetric inequality on subset families")
    s.add_argument("--max-size", type=_positive_int, default=8)
    s.add_argument("--samples", type=int, default=0, help="random connected subsets to add")
    s.add_argument("--random-size", type=_positive_int, default=20)
    s.add_argument("--lambda", dest="lambdas", type=_number, action="append")
    return p


def load_group(args) -> Group:
    if args.group:
        if args.kind or args.param:
            raise GroupSpecError("use either --group FILE or --kind/--param")
        with open(args.group, encoding="utf-8") as fh:
            return build_group(GroupSpec.from_json(fh.read()))
    if not args.kind:
        raise GroupSpecError("a group is required: --kind ... or --group FILE")
    return build_group({"kind": args.kind, "params": dict(_parse_param(p) for p in args.param)})


def parse_model(text: str):
    name, _, rest = text.partition(":")
    kv = {}
    for part in filter(None, rest.split(",")):
        k, _, v = part.partition("=")
        kv[k.strip()] = float(v)
    try:
        if name in ("poly", "polynomial"):
            return Polynomial(kv["c"], kv["d"])
        if name in ("stretched", "stretched_exp", "exp"):
            return StretchedExp(kv["c"], kv["b"], kv.get("alpha", 1.0))
    except KeyError as exc:
        raise GroupSpecError(f"model {name!r} is missing {exc}") from None
    raise GroupSpecError(f"unknown model {name!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_growth(args) -> tuple[str, int]:
    group = load_group(args)
    table = growth_table(group, args.radius)
    if args.format == "csv":
        return table_to_csv(table), EXIT_OK
    return to_json({"group": repr(group), "order": table.order, "gamma": list(table.gamma), "sigma": list(table.sigma)}), EXIT_OK


def _bound_rows(group: Group, ts, lambdas):
    t_max = max(ts)
    table = table_for(group, t_max, ball_min=8 * t_max if lambdas is None else max(lambdas) * t_max)
    return [bound_report(table, group.degree, t, lambdas or DEFAULT_LAMBDAS) for t in ts]


def _bounds_doc(reports) -> list[dict]:
    return [
        {
            "t": r.t, "csc": r.csc, "gromov": r.gromov, "u": r.u_discrete, "strong": r.strong,
            "lambda_bounds": {fmt_real(k): v for k, v in r.lambda_bounds.items()},
            "folner_floor": r.folner_floor, "flags": r.flags,
        }
        for r in reports
    ]


def _bounds_csv(reports) -> str:
    return rows_to_csv(("t", "csc", "gromov", "u", "strong"), [(r.t, r.csc, r.gromov, r.u_discrete, r.strong) for r in reports])


def cmd_bounds(args) -> tuple[str, int]:
    group = load_group(args)
    ts = args.t or list(range(1, args.max_size + 1))
    reports = _bound_rows(group, ts, args.lambdas)
    if args.format == "csv":
        return _bounds_csv(reports), EXIT_OK
    return to_json({"group": repr(group), "bounds": _bounds_doc(reports)}), EXIT_OK


def cmd_transform(args) -> tuple[str, int]:
    if args.model:
        if args.kind or args.group:
            raise GroupSpecError("use either --model or a group")
        model = parse_model(args.model)
        ts = np.geomspace(args.t_min, args.t_max, args.points)
        results = transform_curve_continuous(model, ts)
        label = repr(model)
    else:
        group = load_group(args)
        lo, hi = max(1, math.ceil(args.t_min)), max(1, math.floor(args.t_max))
        ts = list(range(lo, hi + 1))
        table = table_for(group, hi)
        results = transform_curve_discrete(table, ts)
        label = repr(group)
    rows = [(t, r.value, r.argmax_r, "true" if r.certified else "false") for t, r in zip(ts, results)]
    if args.format == "csv":
        return rows_to_csv(("t", "u_value", "argmax_r", "certified"), rows), EXIT_OK
    doc = {
        "source": label,
        "curve": [
            {"t": t, "u_value": r.value, "argmax_r": r.argmax_r, "certified": r.certified, "diagnostic": r.diagnostic}
            for t, r in zip(ts, results)
        ],
    }
    return to_json(doc), EXIT_OK


def cmd_profile(args) -> tuple[str, int]:
    group = load_group(args)
    m_max = args.max_size
    if group.is_finite:
        m_max = min(m_max, group.order)
        points = [profile(group, m) for m in range(1, m_max + 1)]
    else:
        cp = connected_profile(group, m_max)
        points = [profile(group, m, cp) for m in range(1, m_max + 1)]
    if args.format == "csv":
        return rows_to_csv(("m", "boundary_min", "scope"), [(p.m, p.boundary_min, p.scope) for p in points]), EXIT_OK
    doc = [{"m": p.m, "boundary_min": p.boundary_min, "scope": p.scope, "witness": p.witness.to_json()} for p in points]
    return to_json({"group": repr(group), "profile": doc}), EXIT_OK


def cmd_folner(args) -> tuple[str, int]:
    group = load_group(args)
    results = [folner_value(group, n, size_max=args.max_size, seed=args.seed) for n in args.n]
    if args.format == "csv":
        rows = [(r.n, r.lower, r.upper, r.scope) for r in results]
        return rows_to_csv(("n", "lower", "upper", "scope"), rows), EXIT_OK
    doc = [
        {"n": r.n, "lower": r.lower, "upper": r.upper, "exact": r.exact, "scope": r.scope,
         "witness": None if r.witness is None else r.witness.to_json()}
        for r in results
    ]
    return to_json({"group": repr(group), "folner": doc}), EXIT_OK


def cmd_cheeger(args) -> tuple[str, int]:
    group = load_group(args)
    rep = cheeger_report(group)
    fields = {
        "h": rep.h, "lambda1": rep.lambda1, "buser_lower": rep.buser_lower,
        "buser_upper": rep.buser_upper, "u_floor": rep.u_floor, "holds": rep.holds(),
    }
    if args.format == "csv":
        return rows_to_csv(tuple(fields), [tuple(fields.values())]), EXIT_OK
    fields["witness"] = rep.witness.to_json()
    return to_json({"group": repr(group), **fields}), EXIT_OK


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("ISOPERF_THREADS")
    return max(1, int(env)) if env else 1


def cmd_verify(args) -> tuple[str, int]:
    group = load_group(args)
    threads = _threads(args)
    sweeps = []
    size_max = args.max_size
    if group.is_finite and group.order <= 20:
        sweeps.append(("all", subset_family(group, "all"), group.order))
    sweeps.append(("connected", subset_family(group, "connected", size_max=size_max), size_max))
    if args.samples > 0:
        fam = subset_family(group, "random", size_max=args.random_size, count=args.samples, seed=args.seed)
        sweeps.append(("random", fam, args.random_size))
    if group.is_finite:
        cap = group.order
        sweeps = [(n, f, min(m, cap)) for n, f, m in sweeps]
    t_top = max(m for _, _, m in sweeps)
    table = table_for(group, t_top)
    results = [verify_main_inequality(group, fam, m, table, name, threads) for name, fam, m in sweeps]
    n_viol = sum(len(r.violations) for r in results)
    lambdas = args.lambdas
    reports = _bound_rows(group, list(range(1, t_top + 1)), lambdas)
    order_viol = []
    for r in reports:
        chain = [r.strong, r.u_discrete, r.gromov, r.csc]
        if any(a < b for a, b in zip(chain, chain[1:])):
            order_viol.append({"t": r.t, "check": "strong>=u>=gromov>=csc"})
        for lam, v in r.lambda_bounds.items():
            if r.u_discrete < v:
                order_viol.append({"t": r.t, "check": f"u>=lambda_bound({fmt_real(lam)})"})
    n_viol += len(order_viol)
    code = EXIT_VIOLATION if n_viol else EXIT_OK
    if args.format == "csv":
        return _bounds_csv(reports), code
    violations = [v for r in results for v in r.to_json(group)["violations"]] + order_viol
    doc = {
        "group": repr(group),
        "families": [{"family": r.family, "count": r.count, "violations": len(r.violations)} for r in results],
        "violations": violations,
        "bounds": _bounds_doc(reports),
    }
    return to_json(doc), code


HANDLERS = {
    "growth": cmd_growth,
    "bounds": cmd_bounds,
    "transform": cmd_transform,
    "profile": cmd_profile,
    "folner": cmd_folner,
    "cheeger": cmd_cheeger,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = HANDLERS[args.command](args)
    except (GroupSpecError, DomainError, ValueError) as exc:
        print(f"isoperf: error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except (ResourceCapExceeded, ElementCapExceeded, InsufficientRadius, MemoryError) as exc:
        print(f"isoperf: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"isoperf: I/O error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    try:
        emit(text, args.out)
    except OSError as exc:
        print(f"isoperf: I/O error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.command == "verify" and code == EXIT_VIOLATION:
        print("isoperf: inequality violations found", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
