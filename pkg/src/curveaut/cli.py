"""Command-line front end.

A thin client over the service handlers: every subcommand builds a
request model, calls the same function the HTTP endpoint uses, and prints
the response as text or JSON.  Exit codes: 0 success, 1 verification
failure, 2 input error, 3 closure cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .service import handlers, schemas
from .service.handlers import CapError, InputError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: Optional[str]):
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json(model) -> str:
    return model.model_dump_json(indent=2) + "\n"


def cmd_curve(args) -> int:
    request = schemas.CurveRequest(
        family=args.family, d=args.d, lam=args.lam, conductor=args.conductor
    )
    response = handlers.curve(request)
    if args.format == "json":
        _emit(_json(response), args.output)
        return EXIT_OK
    _emit(response.polynomial, args.output)
    if args.gens_output:
        if not response.generators:
            raise InputError(f"family {args.family} has no published generators")
        _emit(response.generators, args.gens_output)
    return EXIT_OK


def cmd_closure(args) -> int:
    request = schemas.ClosureRequest(generators=_read_text(args.gens), cap=args.cap)
    response = handlers.closure_handler(request)
    if args.format == "json":
        _emit(_json(response), args.output)
    else:
        lines = [f"order {response.order}", f"zeta {response.conductor}"]
        lines += [f"elements of order {o}: {c}" for o, c in response.element_orders]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    request = schemas.ClassifyRequest(
        curve=_read_text(args.curve), generators=_read_text(args.gens), cap=args.cap
    )
    response = handlers.classify_handler(request)
    if args.format == "json":
        _emit(_json(response), args.output)
    else:
        lines = [
            f"degree {response.degree}",
            f"order {response.order}",
            f"cases {' '.join(response.cases)}",
            f"primary {response.primary}",
        ]
        for row in response.bounds:
            lines.append(
                f"bound[{row['case']}] {row['order']} <= {row['bound']}: "
                + ("ok" if row["ok"] else "VIOLATED")
            )
        for key, value in response.witnesses.items():
            lines.append(f"witness {key}: {value}")
        for flag in response.flags:
            lines.append(f"flag: {flag}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_smooth(args) -> int:
    request = schemas.SmoothRequest(curve=_read_text(args.curve))
    response = handlers.smooth_handler(request)
    if args.format == "json":
        _emit(_json(response), args.output)
    else:
        lines = [f"smooth {str(response.smooth).lower()}"]
        if response.witness is not None:
            coords = " : ".join(response.witness["coords"])
            lines.append(f"witness ({coords})  # zeta {response.witness['zeta']}")
        elif not response.smooth:
            lines.append("witness not found (non-constructive verdict)")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    request = schemas.BoundsRequest(
        genus=args.genus,
        oikawa=args.oikawa,
        arakawa=args.arakawa,
        hurwitz=args.hurwitz,
    )
    response = handlers.bounds_handler(request)
    if args.format == "json":
        _emit(_json(response), args.output)
    else:
        lines = [f"{response.name} {response.value}"]
        if response.ratios:
            lines.append("admissible ratios above 24: " + ", ".join(response.ratios))
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    request = schemas.VerifyRequest(suite=args.suite, cap=args.cap)
    response = handlers.verify_handler(request)
    if args.format == "json":
        _emit(_json(response), args.output)
    else:
        lines = []
        for suite in response.suites:
            lines.append(f"== suite {suite.suite}: " + ("pass" if suite.passed else "FAIL"))
            for check in suite.checks:
                mark = "ok  " if check.passed else "FAIL"
                detail = f"  [{check.detail}]" if check.detail else ""
                lines.append(f"  {mark} {check.name}{detail}")
        lines.append("all passed" if response.passed else "FAILURES PRESENT")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if response.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curveaut",
        description="Exact automorphism groups of smooth plane curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p_curve = sub.add_parser("curve", help="emit a named family member as a polynomial file")
    p_curve.add_argument("family")
    p_curve.add_argument("--d", type=int, required=True)
    p_curve.add_argument("--lambda", dest="lam", default=None,
                         help="family parameter; scalar expression with z = zeta_d")
    p_curve.add_argument("--conductor", type=int, default=None,
                         help="embed output coefficients into Q(zeta_N)")
    p_curve.add_argument("--gens-output", default=None,
                         help="also write the standard generators to this file")
    common(p_curve)
    p_curve.set_defaults(func=cmd_curve)

    p_closure = sub.add_parser("closure", help="close a generator file and report the order")
    p_closure.add_argument("--gens", required=True, help="generator file ('-' for stdin)")
    p_closure.add_argument("--cap", type=int, default=None)
    common(p_closure)
    p_closure.set_defaults(func=cmd_closure)

    p_classify = sub.add_parser("classify", help="classify a (curve, generators) pair")
    p_classify.add_argument("--curve", required=True)
    p_classify.add_argument("--gens", required=True)
    p_classify.add_argument("--cap", type=int, default=None)
    common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_smooth = sub.add_parser("smooth", help="exact smoothness verdict for a curve file")
    p_smooth.add_argument("--curve", required=True)
    common(p_smooth)
    p_smooth.set_defaults(func=cmd_smooth)

    p_bounds = sub.add_parser("bounds", help="genus-based bound calculators")
    p_bounds.add_argument("--genus", type=int, required=True)
    mode = p_bounds.add_mutually_exclusive_group(required=True)
    mode.add_argument("--oikawa", type=int, default=None, metavar="K")
    mode.add_argument("--arakawa", type=int, nargs=3, default=None, metavar=("K1", "K2", "K3"))
    mode.add_argument("--hurwitz", action="store_true")
    common(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument(
        "suite",
        choices=(
            "fermat", "klein", "fdd1", "dcurve", "fprime",
            "fdoubleprime", "hessian", "galois", "theorem2", "theorem3", "all",
        ),
    )
    p_verify.add_argument("--cap", type=int, default=None)
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
