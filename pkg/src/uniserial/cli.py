"""Command-line surface.

Commands: analyze, maxsub, zeta, genprob, alpha, construct, paper-checks.
All reports are machine-readable JSON by default (byte-identical across runs
for identical flags); --format text renders them human-readable.  Exit codes:
0 on success, 1 when a verification check fails, 2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checks as checks_mod
from . import corpus
from .alpha import SimpleGroupDescriptor, alpha, alpha_star, order_of_simple, out_metadata
from .constructions import (
    affine_group,
    build_affine_equality_group,
    build_wreath_quasisimple,
    permutation_module,
    wreath_product,
)
from .errors import UniserialError
from .genprob import p_exact_enum, p_exact_mobius, p_montecarlo
from .intervals import RatInterval
from .lattice import DEFAULT_LATTICE_CAP
from .maximal import maximal_subgroups, zeta as zeta_fn
from .perm import DEFAULT_MAX_COSET_INDEX, DEFAULT_MAX_DEGREE, PermGroup
from .structure import chief_series, normal_subgroups
from .report import render_text, write_report


def _as_csv(payload) -> str:
    import csv as csv_mod
    import io

    rows = payload if isinstance(payload, list) else [payload]
    if not rows or not isinstance(rows[0], dict):
        rows = [{"value": v} for v in rows]
    fields = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv_mod.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in fields})
    return buf.getvalue().rstrip("\n")


def _emit(payload, args) -> None:
    if args.format == "text":
        text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True)
    elif args.format == "csv":
        text = payload if isinstance(payload, str) else _as_csv(payload)
    else:
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _fraction_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, RatInterval):
        return f"[{x.lo.numerator}/{x.lo.denominator},{x.hi.numerator}/{x.hi.denominator}]"
    return str(x)


def _load_group(path: str, args) -> PermGroup:
    try:
        if ":" in path and not Path(path).exists():
            kind, _, name = path.partition(":")
            if kind == "corpus":
                return corpus.load(name)
        group = PermGroup.from_file(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise SystemExit(_usage_error(f"cannot read group file {path!r}: {exc}"))
    if group.degree > args.cap_degree:
        raise SystemExit(_usage_error(f"degree exceeds --cap-degree {args.cap_degree}"))
    return group


def _resolve_normal(group: PermGroup, spec: str, args) -> PermGroup:
    if spec == "self":
        return group
    if spec == "trivial":
        return PermGroup.trivial(group.degree)
    return _load_group(spec, args)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    group = _load_group(args.file, args)
    series = chief_series(group, max_index=args.cap_index)
    payload = {
        "order": str(group.order()),
        "degree": group.degree,
        "uniserial": series.unique,
        "chief_factors": [
            {"type": f.type_name(), "width": f.width, "frattini": f.is_frattini}
            for f in series.factors
        ],
    }
    _emit(payload, args)
    return 0


def cmd_maxsub(args) -> int:
    group = _load_group(args.file, args)
    normal = _resolve_normal(group, args.N, args) if args.N else None
    classes = maximal_subgroups(group, cap=args.cap_order)
    payload = []
    for cls in classes:
        row = {
            "index": cls.index,
            "class_length": cls.class_length,
            "order": str(cls.order),
        }
        if normal is not None:
            row["contains_N"] = all(
                cls.representative.contains(g) for g in normal.generators
            )
        payload.append(row)
    _emit(payload, args)
    return 0


def cmd_zeta(args) -> int:
    group = _load_group(args.file, args)
    normal = _resolve_normal(group, args.N, args)
    s = Fraction(args.s)
    result = zeta_fn(group, normal, s, cap=args.cap_order)
    payload = {
        "s": str(s),
        "value": _fraction_str(result.value),
        "terms": [[n, m] for n, m in result.terms],
    }
    if result.order_form_value is not None and result.order_form_value != result.value:
        # the order-denominator reading of the second display form, for comparison
        payload["order_form_value"] = _fraction_str(result.order_form_value)
    _emit(payload, args)
    return 0


def cmd_genprob(args) -> int:
    group = _load_group(args.file, args)
    if args.method == "enum":
        res = p_exact_enum(group, args.d)
        payload = {
            "d": args.d,
            "method": res.method,
            "value": _fraction_str(res.value),
            "decimal": float(res.value),
        }
    elif args.method == "moebius":
        res = p_exact_mobius(group, args.d, cap=args.cap_order)
        payload = {
            "d": args.d,
            "method": res.method,
            "value": _fraction_str(res.value),
            "decimal": float(res.value),
        }
    else:
        est = p_montecarlo(group, args.d, args.samples, args.seed)
        payload = {
            "d": args.d,
            "method": "montecarlo",
            "mean": est.mean,
            "stderr": est.stderr,
            "samples": est.samples,
            "seed": est.seed,
        }
    _emit(payload, args)
    return 0


def cmd_alpha(args) -> int:
    desc = SimpleGroupDescriptor.parse(args.descriptor)
    a_star = alpha_star(desc)
    a = alpha(desc)
    payload = {
        "descriptor": str(desc),
        "order": str(order_of_simple(desc)),
        "alpha_star": _fraction_str(a_star) if a_star.width() else _fraction_str(a_star.lo),
        "alpha_interval": [float(a.lo), float(a.hi)],
        "alpha_exact": _fraction_str(a.lo) if a.width() == 0 else None,
    }
    out_order, profile = out_metadata(desc)
    payload["out_order"] = out_order
    payload["out_chief_profile"] = profile
    _emit(payload, args)
    return 0


def _read_matrix_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    p, n = int(data["p"]), int(data["n"])
    mats = [
        [row_major[i * n : (i + 1) * n] for i in range(n)]
        for row_major in data["matrices"]
    ]
    return p, n, mats


def cmd_construct(args) -> int:
    if args.construction == "wreath":
        left = _load_group(args.left, args)
        right = _load_group(args.right, args)
        group = wreath_product(left, right, max_degree=args.cap_degree)
    elif args.construction == "affine":
        p, n, mats = _read_matrix_file(args.matrices)
        if p != args.p:
            raise SystemExit(_usage_error("matrix file prime disagrees with --p"))
        group = affine_group(p, n, mats, max_degree=args.cap_degree)
    elif args.construction == "permmod":
        module, sum_zero, constants = permutation_module(args.n, args.p)
        payload = {
            "p": module.p,
            "n": module.dim,
            "matrices": [[int(x) for x in mat.flatten()] for mat in module.action],
            "sum_zero_dim": sum_zero.dim,
            "constants_dim": constants.dim,
        }
        _emit(payload, args)
        return 0
    elif args.construction == "paper-example":
        if args.example == "affine-equality":
            group, _ = build_affine_equality_group(args.p, max_degree=args.cap_degree)
        else:
            group, info = build_wreath_quasisimple(
                args.n, quotient=args.quotient, max_degree=args.cap_degree
            )
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit(_usage_error("unknown construction"))
    payload = group.to_dict()
    payload["order"] = str(group.order())
    _emit(payload, args)
    return 0


def cmd_paper_checks(args) -> int:
    selection = args.select.split(",") if args.select else None
    try:
        results = checks_mod.run_checks(selection, jobs=args.jobs)
    except KeyError as exc:
        return _usage_error(str(exc))
    if args.output_dir:
        written = write_report(results, Path(args.output_dir))
        for path in written:
            print(f"wrote {path}")
    if args.format == "text":
        print(render_text(results))
    elif args.format == "csv":
        from .report import ledger_rows

        print(_as_csv(ledger_rows(results)))
    else:
        payload = [
            {
                "check": r.check,
                "claim": r.claim,
                "passed": r.passed,
                "seconds": round(r.seconds, 3),
                "values": {k: str(v) for k, v in r.values.items()},
            }
            for r in results
        ]
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    return 0 if all(r.passed for r in results) else 1


def cmd_analyze_normals(args) -> int:
    group = _load_group(args.file, args)
    members = normal_subgroups(group).members
    payload = [str(m.order()) for m in members]
    _emit(payload, args)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_GLOBAL_DEFAULTS = {
    "cap_order": DEFAULT_LATTICE_CAP,
    "cap_degree": DEFAULT_MAX_DEGREE,
    "cap_index": DEFAULT_MAX_COSET_INDEX,
    "jobs": 1,
    "seed": 20_260_101,
    "format": "json",
    "output": None,
}


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # the subcommand copies suppress their defaults so that flags given before
    # the subcommand are not clobbered when the subparser runs
    def dfl(key):
        return argparse.SUPPRESS if suppress else _GLOBAL_DEFAULTS[key]

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--cap-order", type=int, default=dfl("cap_order"),
                        help="order cap for subgroup-lattice work")
    shared.add_argument("--cap-degree", type=int, default=dfl("cap_degree"),
                        help="degree cap for permutation domains")
    shared.add_argument("--cap-index", type=int, default=dfl("cap_index"),
                        help="index cap for coset actions")
    shared.add_argument("--jobs", type=int, default=dfl("jobs"), help="parallel checks")
    shared.add_argument("--seed", type=int, default=dfl("seed"),
                        help="master seed for randomized estimates")
    shared.add_argument("--format", choices=("json", "csv", "text"),
                        default=dfl("format"))
    shared.add_argument("--output", default=dfl("output"),
                        help="write the report to a file instead of stdout")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniserial",
        description="exact chief-series, zeta and generation computations "
        "on finite permutation groups",
        parents=[_global_flags(suppress=False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    shared = _global_flags(suppress=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[shared], **kw)

    p = add("analyze", help="order, uniseriality and chief factors")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_analyze)

    p = add("normals", help="orders of all normal subgroups")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_analyze_normals)

    p = add("maxsub", help="maximal subgroup classes")
    p.add_argument("--file", required=True)
    p.add_argument("--N", help="'self', 'trivial', or a group file; annotates containment")
    p.set_defaults(func=cmd_maxsub)

    p = add("zeta", help="maximal-subgroup zeta value")
    p.add_argument("--file", required=True)
    p.add_argument("--N", default="self")
    p.add_argument("--s", default="2", help="exponent, a rational like 3 or 5/2")
    p.set_defaults(func=cmd_zeta)

    p = add("genprob", help="generation probability")
    p.add_argument("--file", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--method", choices=("enum", "moebius", "mc"), default="enum")
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_genprob)

    p = add("alpha", help="weights of a simple-group descriptor")
    p.add_argument("descriptor", help="e.g. C:7, A:12, L:PSL2:49, Sp:M11")
    p.set_defaults(func=cmd_alpha)

    p = add("construct", help="build named groups and modules")
    psub = p.add_subparsers(dest="construction", required=True)
    w = psub.add_parser("wreath")
    w.add_argument("--left", required=True)
    w.add_argument("--right", required=True)
    a = psub.add_parser("affine")
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--matrices", required=True, help="JSON {p, n, matrices: [row-major]}")
    m = psub.add_parser("permmod")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--p", type=int, required=True)
    e = psub.add_parser("paper-example")
    e.add_argument("example", choices=("affine-equality", "wreath-quasisimple"))
    e.add_argument("--p", type=int, default=7)
    e.add_argument("--n", type=int, default=6)
    e.add_argument("--quotient", choices=("full", "central-product"), default="full")
    p.set_defaults(func=cmd_construct)

    p = add("paper-checks", help="run the verification battery")
    p.add_argument("--select", help="comma-separated check names (default: all)")
    p.add_argument("--output-dir", help="write ledger.csv/json and figures here")
    p.set_defaults(func=cmd_paper_checks)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rc = args.func(args)
    except UniserialError as exc:
        return _usage_error(str(exc))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return rc


if __name__ == "__main__":
    sys.exit(main())
