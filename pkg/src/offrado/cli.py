"""Command-line surface: every capability behind stable canonical-JSON I/O.

stdout carries exactly one JSON document per invocation; anything meant for
humans goes to stderr.  Exit codes: Ok 0, WitnessFound 1, Unproved 2,
InvalidInput 64.  Rational arguments accept integer or "p/q" strings only;
decimals are refused because they are not exactly what they look like.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .certificates import (
    UnprovedError,
    certificate_as_json,
    certificate_from_json,
    certificate_stats,
    certify_upper,
    verify_certificate,
)
from .equations import (
    ProblemSpec,
    formula_continuous,
    formula_degenerate_k1,
    formula_discrete,
)
from .intervals import (
    boundary_witnesses,
    coloring_as_json,
    coloring_from_json,
    lower_bound_coloring,
    verify_coloring,
)
from .search import compute_rado
from .serialize import canonical_json, format_rational, parse_rational
from . import suite

EXIT_CODES = {"Ok": 0, "WitnessFound": 1, "Unproved": 2, "InvalidInput": 64}


class _CliError(ValueError):
    """Bad flags or bad input files; maps to InvalidInput."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2), which Unproved owns
        raise _CliError(message)


def _result(command: str, spec, payload, status: str) -> dict:
    return {"command": command, "spec": spec, "payload": payload, "status": status}


def _spec_json(k: int, l: int, gamma: Fraction = Fraction(1)) -> dict:
    return {"k": k, "l": l, "gamma": format_rational(gamma)}


def _write_out(path: str, payload: dict) -> str:
    Path(path).write_text(canonical_json(payload) + "\n", encoding="ascii")
    return path


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise _CliError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise _CliError(f"{path} is not JSON: {exc}") from None


def _thread_mode() -> int:
    """RADO_THREADS: 0 selects automatically, 1 forces the deterministic
    single-threaded mode.  Every current code path is single-threaded and
    deterministic, so all values behave like 1."""
    raw = os.environ.get("RADO_THREADS", "0")
    try:
        value = int(raw)
        if value < 0:
            raise ValueError
    except ValueError:
        print(f"offrado: ignoring invalid RADO_THREADS={raw!r}", file=sys.stderr)
        return 1
    return value


def cmd_formula(args) -> dict:
    gamma = parse_rational(args.gamma) if args.gamma is not None else None
    if args.mode == "discrete":
        if gamma is not None:
            raise _CliError("--gamma does not apply to the discrete formula")
        value = formula_discrete(args.k, args.l)
        spec = _spec_json(args.k, args.l)
    elif args.mode == "continuous":
        value = formula_continuous(args.k, args.l, gamma if gamma is not None else 1)
        spec = _spec_json(args.k, args.l, gamma if gamma is not None else Fraction(1))
    else:  # k1
        if args.k != 1:
            raise _CliError("--mode k1 requires k = 1")
        if gamma is not None:
            raise _CliError("--gamma does not apply to the degenerate k=1 oracle")
        value = formula_degenerate_k1(args.l)
        spec = _spec_json(args.k, args.l)
    payload = {"value": format_rational(value.value), "kind": value.kind.value}
    return _result("formula", spec, payload, "Ok")


def cmd_discrete(args) -> dict:
    spec = ProblemSpec(args.k, args.l)
    report = compute_rado(
        spec, max_n=args.max_n, propagation=not args.no_propagation, scan=args.scan
    )
    payload = report.as_json()
    status = "Ok" if report.value is not None else "Unproved"
    return _result("discrete", spec.as_json(), payload, status)


def cmd_lower_bound(args) -> dict:
    gamma = parse_rational(args.gamma) if args.gamma is not None else Fraction(1)
    spec = ProblemSpec(args.k, args.l, gamma)
    coloring = lower_bound_coloring(spec)
    verdict = verify_coloring(coloring, spec)
    if not verdict.is_valid:
        # correctness tripwire: the construction is supposed to be unconditionally valid
        raise RuntimeError(f"lower-bound coloring failed self-verification: {verdict}")
    red_w, blue_w = boundary_witnesses(spec)
    doc = coloring_as_json(coloring)
    payload = {
        "file": _write_out(args.out, doc) if args.out else None,
        "coloring": doc,
        "verdict": "Valid",
        "boundary_witnesses": {"red": red_w.as_json(), "blue": blue_w.as_json()},
    }
    return _result("lower-bound", spec.as_json(), payload, "Ok")


def cmd_verify_coloring(args) -> dict:
    obj = _read_json(args.file)
    try:
        coloring = coloring_from_json(obj)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    spec = ProblemSpec(args.k, args.l, coloring.domain.lo)
    verdict = verify_coloring(coloring, spec)
    payload = verdict.as_json()
    status = "Ok" if verdict.is_valid else "WitnessFound"
    return _result("verify-coloring", spec.as_json(), payload, status)


def cmd_certify_upper(args) -> dict:
    spec = ProblemSpec(args.k, args.l)
    certificate = certify_upper(
        spec,
        auto_denominator=args.grid_denominator if args.grid_denominator else 1,
        max_depth=args.max_depth,
        force_auto=args.grid_denominator is not None,
    )
    doc = certificate_as_json(certificate)
    stats = certificate_stats(certificate)
    payload = {
        "file": _write_out(args.out, doc) if args.out else None,
        "domain_end": format_rational(certificate.domain_end),
        "branches": stats["branches"],
        "steps": stats["steps"],
        "points_used": stats["points_used"],
    }
    return _result("certify-upper", spec.as_json(), payload, "Ok")


def cmd_verify_certificate(args) -> dict:
    obj = _read_json(args.file)
    try:
        certificate = certificate_from_json(obj)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    check = verify_certificate(certificate)
    spec_json = certificate.spec.as_json()
    if check.ok:
        stats = certificate_stats(certificate)
        payload = {
            "verified": True,
            "domain_end": format_rational(certificate.domain_end),
            "branches": stats["branches"],
            "steps": stats["steps"],
        }
        return _result("verify-certificate", spec_json, payload, "Ok")
    payload = {
        "verified": False,
        "failure": {
            "path": list(check.failure.path),
            "step_index": check.failure.step_index,
            "reason": check.failure.reason,
        },
    }
    return _result("verify-certificate", spec_json, payload, "WitnessFound")


def cmd_reproduce(args) -> dict:
    results = suite.run_all(full=args.full)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}", file=sys.stderr)
    all_ok = all(r.ok for r in results)
    payload = {
        "full": args.full,
        "all_ok": all_ok,
        "checks": [r.as_json() for r in results],
    }
    return _result("reproduce", None, payload, "Ok" if all_ok else "WitnessFound")


def build_parser() -> _Parser:
    parser = _Parser(prog="offrado", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="closed-form values")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--gamma", help="domain left endpoint (continuous mode only)")
    p.add_argument("--mode", choices=("discrete", "continuous", "k1"), default="continuous")
    p.set_defaults(handler=cmd_formula)

    p = sub.add_parser("discrete", help="exact search over {1..n}")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--max-n", type=int, default=None, help="hard scan cap (default formula+5)")
    p.add_argument("--no-propagation", action="store_true", help="2^n brute-force oracle mode")
    p.add_argument("--scan", action="store_true", help="record colorability for every n up to the cap")
    p.set_defaults(handler=cmd_discrete)

    p = sub.add_parser("lower-bound", help="emit and self-verify the extremal coloring")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--gamma", help="domain left endpoint (default 1)")
    p.add_argument("--out", help="write the coloring file here")
    p.set_defaults(handler=cmd_lower_bound)

    p = sub.add_parser("verify-coloring", help="check a coloring file")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--file", required=True)
    p.set_defaults(handler=cmd_verify_coloring)

    p = sub.add_parser("certify-upper", help="build and verify an upper-bound certificate")
    p.add_argument("k", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--out", help="write the certificate file here")
    p.add_argument(
        "--grid-denominator", type=int, default=None,
        help="search every branch automatically on the 1/d grid instead of using built chains",
    )
    p.add_argument("--max-depth", type=int, default=64, help="branch depth cap for the prover")
    p.set_defaults(handler=cmd_certify_upper)

    p = sub.add_parser("verify-certificate", help="re-verify a certificate file")
    p.add_argument("--file", required=True)
    p.set_defaults(handler=cmd_verify_certificate)

    p = sub.add_parser("reproduce", help="run the whole verification suite")
    p.add_argument("--full", action="store_true", help="heavyweight ranges (several minutes)")
    p.set_defaults(handler=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    _thread_mode()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.handler(args)
    except _CliError as exc:
        result = _result("invalid", None, {"error": str(exc)}, "InvalidInput")
    except UnprovedError as exc:
        spec = exc.spec.as_json()
        payload = {
            "error": str(exc),
            "branch": exc.branch,
            "grid_denominator": exc.denominator,
            "max_depth": exc.depth,
        }
        result = _result("certify-upper", spec, payload, "Unproved")
    except ValueError as exc:
        result = _result("invalid", None, {"error": str(exc)}, "InvalidInput")
    print(canonical_json(result))
    return EXIT_CODES[result["status"]]
