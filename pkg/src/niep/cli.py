"""Command-line front end.

Exit status: 0 on success, 2 when no criterion applies (or a verification
fails), 1 on bad input.
"""

from __future__ import annotations

import argparse
import sys

from .criteria import guo_bound_realize
from .criteria._common import as_spectrum
from .errors import CriterionNotSatisfied, InputError, NiepError, PositiveRealizationNotFound
from .realize import check_all, criterion_names, realize_auto, realize_with
from .scalars import backend_named
from .serialize import dumps, encode_value, format_scalar, matrix_from_json, matrix_to_json, parse_spectrum
from .universal import AUTO, universal_realize
from .verify import certify

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_NOT_APPLICABLE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="niep", description="Construct nonnegative matrices with a prescribed spectrum.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spectrum_required=True):
        src = p.add_mutually_exclusive_group(required=spectrum_required)
        src.add_argument("--spectrum", help='JSON list such as "[6,3,3,-5,-5]" or {"lambda": [[re, im], ...]}')
        src.add_argument("--file", help="read the spectrum JSON from this file")
        p.add_argument("--backend", choices=("rational", "float"), default="rational")
        p.add_argument("--tol", type=float, default=None, help="float-mode verification tolerance")
        p.add_argument("--out", help="write JSON output here instead of stdout")

    p = sub.add_parser("check", help="evaluate every implemented criterion")
    common(p)
    p = sub.add_parser("realize", help="build a realizing matrix with a certificate")
    common(p)
    p.add_argument("--criterion", default="auto", choices=["auto", *criterion_names()])
    p = sub.add_parser("universal", help="one positive matrix per allowed Jordan form")
    common(p)
    p.add_argument("--eps", default=AUTO, help="nilpotent perturbation size (default: auto)")
    p = sub.add_parser("verify", help="check a matrix against a spectrum")
    common(p)
    p.add_argument("--matrix", required=True, help="matrix JSON file")
    p = sub.add_parser("guo", help="(n-1) max|lambda_j| bound and its realizing matrix")
    common(p)
    return parser


def _read_spectrum(args, backend):
    text = args.spectrum
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    return parse_spectrum(text, backend)


def _emit(args, payload):
    text = payload if isinstance(payload, str) else dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_json(report) -> dict:
    out = {"passed": report.passed, "char_poly_match": report.char_poly_match, "max_deviation": report.max_deviation}
    if report.nonnegative is not None:
        out["nonnegative"] = report.nonnegative
        out["min_entry"] = format_scalar(report.min_entry)
    if report.deviation_index is not None:
        out["first_bad_coefficient"] = report.deviation_index
    return out


def _cmd_check(args, backend):
    s = as_spectrum(_read_spectrum(args, backend))
    verdicts = check_all(s)
    lines = [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in verdicts.items()]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if any(verdicts.values()) else EXIT_NOT_APPLICABLE


def _cmd_realize(args, backend):
    s = as_spectrum(_read_spectrum(args, backend))
    cert = realize_auto(s) if args.criterion == "auto" else realize_with(s, args.criterion)
    theorem = cert.theorem
    if cert.shifted:
        theorem += " (realizes a Perron-shifted list)"
    report = certify(cert.matrix, cert.spectrum, tol=args.tol)
    payload = matrix_to_json(cert.matrix, theorem, cert.steps)
    payload["certificate"]["criterion"] = cert.criterion
    payload["certificate"]["spectrum"] = [encode_value(v) for v in cert.spectrum]
    payload["certificate"]["verification"] = _report_json(report)
    if cert.shifted:
        payload["certificate"]["requested_spectrum"] = [encode_value(v) for v in cert.requested]
    _emit(args, payload)
    return EXIT_OK if report.passed else EXIT_NOT_APPLICABLE


def _cmd_universal(args, backend):
    s = as_spectrum(_read_spectrum(args, backend))
    results = universal_realize(s, eps=args.eps if args.eps == AUTO else backend.scalar(args.eps))
    payload = []
    for r in results:
        payload.append(
            {
                "jordan_form": [[encode_value(v), list(part)] for v, part in r.target.blocks],
                "matrix": matrix_to_json(r.matrix),
                "rank_chains": [[encode_value(v), chain] for v, chain in r.rank_chains.items()],
                "recovered": [[encode_value(v), list(part)] for v, part in r.found.items()],
                "matches": r.matches,
            }
        )
    _emit(args, payload)
    return EXIT_OK if all(r.matches for r in results) else EXIT_NOT_APPLICABLE


def _cmd_verify(args, backend):
    with open(args.matrix, encoding="utf-8") as fh:
        m = matrix_from_json(fh.read())
    values = _read_spectrum(args, m.backend)
    if len(values) != m.n:
        raise InputError(f"matrix order {m.n} differs from spectrum length {len(values)}")
    report = certify(m, values, tol=args.tol)
    _emit(args, _report_json(report))
    return EXIT_OK if report.passed else EXIT_NOT_APPLICABLE


def _cmd_guo(args, backend):
    s = as_spectrum(_read_spectrum(args, backend))
    bound, m = guo_bound_realize(s.tail, s.backend)
    report = certify(m, [bound, *s.tail], tol=args.tol)
    payload = {
        "bound": format_scalar(bound),
        "lambda_1": format_scalar(s.perron),
        "lambda_1_meets_bound": bool(s.perron >= bound),
        "matrix": matrix_to_json(m, "Guo bound (n-1) max|lambda_j|", []),
        "verification": _report_json(report),
    }
    _emit(args, payload)
    return EXIT_OK


COMMANDS = {
    "check": _cmd_check,
    "realize": _cmd_realize,
    "universal": _cmd_universal,
    "verify": _cmd_verify,
    "guo": _cmd_guo,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        backend = backend_named(args.backend)
        return COMMANDS[args.command](args, backend)
    except PositiveRealizationNotFound as exc:
        print(f"universal construction unavailable: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except CriterionNotSatisfied as exc:
        print(f"no implemented criterion applies: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    except (InputError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NiepError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_NOT_APPLICABLE


if __name__ == "__main__":
    sys.exit(main())
