"""Command-line entry point: ``recconv {analyze,simulate,verify-series,sweep}``.

Exit status is 0 whenever the command ran, whatever the verdict; 2 for
parse, validation or usage errors; 3 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from recconv.analyzer import match_quadratic_family
from recconv.dsl import ParseError, parse, to_recurrence
from recconv.gf_verifier import check_example_identity, check_linear_identity
from recconv.jsonio import dumps, jsonable
from recconv.model import LinearRecurrence, ValidationError, validate
from recconv.numeric import rational
from recconv.oracle import Converged, OracleConfig, decide_combined, simulate
from recconv.xval import (
    GridTooLarge,
    grid_from_json,
    sweep_condition_v,
    sweep_linear,
    write_csv,
    write_json,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


def _rat_arg(text: str):
    try:
        return rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recconv",
        description="Decide exact eventual convergence of rational recurrence sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, oracle: bool = True) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        if oracle:
            p.add_argument("--max-steps", type=_positive, default=1000)
            p.add_argument("--max-bits", type=_positive, default=4096)

    p = sub.add_parser("analyze", help="closed-form verdict, oracle as last resort")
    p.add_argument("file", type=Path)
    p.add_argument("--target", type=_rat_arg)
    common(p)

    p = sub.add_parser("simulate", help="run the exact oracle")
    p.add_argument("file", type=Path)
    p.add_argument("--target", type=_rat_arg)
    p.add_argument("--prefix", type=_positive, default=20, help="trajectory terms to print")
    common(p)

    p = sub.add_parser("verify-series", help="check the generating-function cancellation")
    p.add_argument("file", type=Path)
    p.add_argument("--degree", type=_positive, required=True, help="trajectory length N")
    p.add_argument("--target", type=_rat_arg)
    common(p, oracle=False)

    p = sub.add_parser("sweep", help="cross-validate closed forms against the oracle")
    p.add_argument("family", choices=("linear", "condition-v"))
    p.add_argument("grid", type=Path, help="JSON grid description")
    p.add_argument("--json-out", type=Path)
    p.add_argument("--csv-out", type=Path)
    p.add_argument("--workers", type=_positive, default=1)
    common(p)
    return parser


def _load(path: Path):
    text = path.read_bytes()
    f = parse(text)
    rec = to_recurrence(f)
    validate(rec)
    return f, rec


def _target(args, f) -> Any:
    K = args.target if args.target is not None else f.target
    if K is None:
        raise UsageError("no target: pass --target or set 'target' in the file")
    return K


def _doc(verdict: str, method: str, M: Optional[int], target, details: dict) -> dict:
    return {"verdict": verdict, "method": method, "M": M, "target": target, "details": details}


def cmd_analyze(args) -> dict:
    f, rec = _load(args.file)
    K = _target(args, f)
    v = decide_combined(rec, K, OracleConfig(args.max_steps, args.max_bits))
    details = {"kind": "linear" if isinstance(rec, LinearRecurrence) else "polynomial"}
    if v.reason:
        details["reason"] = v.reason
    if v.steps_used is not None:
        details["steps_used"] = v.steps_used
        details["bits_cap_hit"] = v.bits_cap_hit
    details.update(v.details)
    return _doc(v.outcome, v.method, v.M, K, details)


def cmd_simulate(args) -> dict:
    f, rec = _load(args.file)
    K = _target(args, f)
    out = simulate(rec, K, OracleConfig(args.max_steps, args.max_bits))
    details: dict = {"length": len(out.trajectory), "prefix": list(out.trajectory[: args.prefix])}
    if isinstance(out, Converged):
        M = out.M
    else:
        M = None
        details["steps"] = getattr(out, "steps", getattr(out, "step", None))
        if hasattr(out, "bits"):
            details["bits"] = out.bits
    return _doc(out.kind, "oracle", M, K, details)


def cmd_verify(args) -> dict:
    f, rec = _load(args.file)
    K = args.target if args.target is not None else f.target
    N = args.degree
    if isinstance(rec, LinearRecurrence):
        method = "gf-linear"
        report = check_linear_identity(rec, K, N)
    else:
        params = match_quadratic_family(rec)
        if params is None:
            raise UsageError(
                "verify-series supports linear recurrences and the rule "
                "a1*(r[i-1] - r[i-3]) + a2*r[i-2]^2 + a3*r[i-3]*r[i-1] + d"
            )
        method = "gf-quadratic-family"
        report = check_example_identity(*params, rec.initials, K, N)
    verdict = "identity-holds" if report.ok else "identity-fails"
    return _doc(verdict, method, None, K, jsonable(report))


def cmd_sweep(args) -> dict:
    try:
        doc = json.loads(args.grid.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"grid is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("grid must be a JSON object")
    try:
        grid = grid_from_json(doc)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    cfg = OracleConfig(args.max_steps, args.max_bits)
    run = sweep_linear if args.family == "linear" else sweep_condition_v
    try:
        report = run(grid, cfg, workers=args.workers)
    except (GridTooLarge, KeyError) as exc:
        raise UsageError(str(exc)) from None
    if args.json_out:
        write_json(report, args.json_out)
    if args.csv_out:
        write_csv(report, args.csv_out)
    verdict = "mismatch" if report.mismatches else "no-mismatch"
    details = report.summary()
    details["mismatch_indices"] = [r.index for r in report.mismatches]
    return _doc(verdict, f"sweep-{args.family}", None, None, details)


COMMANDS = {
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "verify-series": cmd_verify,
    "sweep": cmd_sweep,
}


def _text(doc: dict) -> str:
    lines = [f"verdict: {doc['verdict']}", f"method:  {doc['method']}"]
    if doc["M"] is not None:
        lines.append(f"M:       {doc['M']}")
    if doc["target"] is not None:
        lines.append(f"target:  {doc['target']}")
    for k, v in doc["details"].items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"{getattr(args, 'file', '')}: parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValidationError as exc:
        print(f"{getattr(args, 'file', '')}: invalid recurrence: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"recconv: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"recconv: {exc}", file=sys.stderr)
        return EXIT_IO
    doc = jsonable(doc)
    if args.format == "json":
        print(dumps(doc))
    else:
        print(_text(doc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
