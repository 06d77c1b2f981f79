"""Command-line front end: ``polyslope <command> spec.json [options]``.

Exit codes: 0 when every asserted check passes, 2 when at least one
prediction disagrees with an oracle or brute force, 1 when the tool itself
failed (bad input, resource limits, ...).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import PolyslopeError, SpecError
from .family import FamilySpec
from .lfunc import METHODS, l_polynomial
from .verify import (Check, VerdictReport, _geometry_checks, _status, archimedean_check, hodge_section,
                     lfunction_section, polytope_section, prediction_section, verify_prediction)

COMMANDS = ("polytope", "hodge", "predict", "lfunction", "verify")
REQUIRED = ("p", "a", "partition", "b", "coeffs")


def _int(doc: Mapping, key: str) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(f"'{key}' must be an integer, got {v!r}")
    return v


def _int_list(v: Any, what: str) -> list[int]:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise SpecError(f"{what} must be a list of integers, got {v!r}")
    return v


def parse_spec(document: Mapping | str) -> FamilySpec:
    """Validate a JSON document (or its text) and build the family spec."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"spec is not valid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise SpecError("spec must be a JSON object")
    missing = [k for k in REQUIRED if k not in document]
    if missing:
        raise SpecError(f"spec is missing required key(s): {', '.join(missing)}")
    unknown = sorted(set(document) - set(REQUIRED) - {"max_k", "threads"})
    if unknown:
        raise SpecError(f"unknown key(s) in spec: {', '.join(unknown)}")
    partition = _int_list(document["partition"], "'partition'")
    b = document["b"]
    if not isinstance(b, list):
        raise SpecError("'b' must be a list of integer lists")
    b = [_int_list(row, "each row of 'b'") for row in b]
    coeffs = document["coeffs"]
    if not isinstance(coeffs, list):
        raise SpecError("'coeffs' must be a list of coordinate vectors")
    coeffs = [_int_list(c, "each coefficient") for c in coeffs]
    options = {}
    for key in ("max_k", "threads"):
        if document.get(key) is not None:
            options[key] = _int(document, key)
    return FamilySpec(_int(document, "p"), _int(document, "a"), tuple(partition),
                      tuple(tuple(r) for r in b), tuple(tuple(c) for c in coeffs), **options)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyslope", description="Slopes of L-functions of a toric exponential-sum family.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("spec", help="path to the JSON family specification")
    ap.add_argument("--max-k", type=int, default=None, help="largest extension degree to enumerate")
    ap.add_argument("--threads", type=int, default=None, help="enumeration threads")
    ap.add_argument("--hodge-mode", choices=("oracle", "closed", "both"), default="both")
    ap.add_argument("--check-archimedean", action="store_true", help="check complex root moduli and the Katz bound")
    ap.add_argument("--point-budget", type=int, default=None, help="cap on field-point evaluations")
    ap.add_argument("--method", choices=METHODS, default="direct", help="enumeration strategy")
    ap.add_argument("--json-out", default=None, help="write the JSON report here instead of stdout")
    return ap


def _validate(args: argparse.Namespace) -> None:
    for name in ("max_k", "threads", "point_budget"):
        v = getattr(args, name)
        if v is not None and v < 1:
            raise SpecError(f"--{name.replace('_', '-')} must be positive")


def _run_command(args: argparse.Namespace, spec: FamilySpec) -> VerdictReport:
    budget = args.point_budget
    max_k = args.max_k if args.max_k is not None else spec.max_k
    threads = args.threads if args.threads is not None else spec.threads
    if args.command == "verify":
        return verify_prediction(spec, max_k=max_k, threads=threads, method=args.method, budget=budget,
                                 hodge_mode=args.hodge_mode, check_archimedean=args.check_archimedean)
    report = VerdictReport(spec=spec.to_json())
    clock = time.perf_counter
    try:
        if args.command in ("polytope", "hodge"):
            t0 = clock()
            geo, report.polytope = polytope_section(spec)
            report.checks.extend(_geometry_checks(spec, geo, report.polytope))
            report.timings["polytope"] = clock() - t0
            if args.command == "hodge":
                t0 = clock()
                _, report.hodge = hodge_section(spec, geo if args.hodge_mode != "closed" else None, args.hodge_mode)
                if args.hodge_mode == "both":
                    report.checks.append(Check("hodge_closed_vs_oracle", _status(report.hodge["agree"]),
                                               {"H_oracle": report.hodge["H_oracle"],
                                                "H_closed": report.hodge["H_closed"]}))
                report.timings["hodge"] = clock() - t0
        elif args.command == "predict":
            report.prediction = prediction_section(spec)
        elif args.command == "lfunction":
            t0 = clock()
            rec = l_polynomial(spec, max_k, threads, args.method, budget)
            report.timings["lfunction"] = clock() - t0
            report.lfunction = lfunction_section(rec)
            report.checks.append(Check("reconstruction", _status(rec.poly is not None),
                                       {"mode": rec.mode, "error": rec.error}))
            if args.check_archimedean and rec.poly is not None:
                arch = archimedean_check(rec.poly, n=spec.n)
                report.archimedean = arch.as_dict()
                report.checks.append(Check("archimedean", _status(arch.ok), {"tol": 1e-9}))
    except PolyslopeError as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    return report


def summary(report: VerdictReport, command: str) -> str:
    """Fixed-order human-readable table."""
    lines = [f"command      {command}"]
    s = report.spec
    lines.append(f"family       p={s['p']} a={s['a']} partition={s['partition']} b={s['b']}")
    if report.polytope:
        P = report.polytope
        lines.append(f"polytope     {len(P['vertices'])} vertices, {P['face_count']} facets, "
                     f"D_def={P['D_def']}, D_lcm={P['D_lcm']}, sum|det|={P['volume_sum']}")
    if report.hodge:
        H = report.hodge
        parts = [f"D={H['D']}"]
        if "H_oracle" in H:
            parts.append(f"oracle={H['H_oracle']}")
        if "H_closed" in H:
            parts.append(f"closed={H['H_closed']}")
        lines.append("hodge        " + " ".join(parts))
    if report.prediction:
        lines.append(f"prediction   slopes={report.prediction['slopes']} d={report.prediction['d']}")
    if report.lfunction:
        L = report.lfunction
        lines.append(f"lfunction    k<={L['k_max']} mode={L['mode']} degree={L.get('degree')} slopes={L.get('slopes')}")
    for c in report.checks:
        flag = "" if c.asserted else " (informational)"
        lines.append(f"check        {c.name:<28} {c.status}{flag}")
    if report.error:
        lines.append(f"error        {report.error}")
    lines.append(f"verdict      {report.verdict}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        text = Path(args.spec).read_text(encoding="utf-8")
        spec = parse_spec(text)
    except (OSError, PolyslopeError) as exc:
        print(f"polyslope: error: {exc}", file=sys.stderr)
        return 1
    report = _run_command(args, spec)
    payload = json.dumps(report.to_json(), indent=2) + "\n"
    if args.json_out:
        Path(args.json_out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    print(summary(report, args.command), file=sys.stderr)
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
