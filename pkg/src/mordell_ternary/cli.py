"""Command-line front end.

Exit status is 0 on success, 1 when a verification finds a mismatch or a
query answers in the negative (not represented, excluded), and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .forms import FormError, enumerate_classes, format_form, parse_form
from .mordell import ExcludedInputError, certify, validate_certificate
from .represent import find_representation, get_entry, is_excluded, registry
from .verify import (
    Report,
    verify_all,
    verify_characterization,
    verify_lemmas,
    verify_table1,
    verify_theorem,
)

OK, FAIL, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _entry_ids() -> list[str]:
    return [e.id for e in registry()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mordell-ternary", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", help="list classes of positive forms of a determinant")
    s.add_argument("--det", type=_positive, required=True)
    s.add_argument("--all", action="store_true", help="include imprimitive classes")

    s = sub.add_parser("represent", help="find v with f(v) = m")
    s.add_argument("--form", type=parse_form, required=True, help='"c1,c2,c3,c23,c13,c12"')
    s.add_argument("--m", type=int, required=True)

    s = sub.add_parser("excluded", help="is m in an entry's excluded set")
    s.add_argument("--entry", choices=_entry_ids(), required=True)
    s.add_argument("--m", type=_positive, required=True)

    s = sub.add_parser("certify", help="build and validate a representation certificate")
    s.add_argument("--entry", choices=[e.id for e in registry() if e.has_case_table], required=True)
    s.add_argument("--m", type=_positive, required=True)

    s = sub.add_parser("verify", help="sweep one entry")
    s.add_argument("--entry", choices=_entry_ids(), required=True)
    s.add_argument("--N", type=_positive, default=10000)
    s.add_argument("--kind", choices=["characterization", "theorem"], default="characterization")

    s = sub.add_parser("verify-all", help="characterization sweep for every entry")
    s.add_argument("--N", type=_positive, default=50000)

    sub.add_parser("verify-table1", help="consistency checks on the determinant-10 data table")

    s = sub.add_parser("verify-lemmas", help="descent, base and separation properties")
    s.add_argument("--N", type=_positive, default=10000)

    for name in ("verify", "verify-all", "verify-lemmas"):
        sub.choices[name].add_argument("--jobs", type=_positive, default=1)
    for action in sub.choices.values():
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


def _emit(args: argparse.Namespace, payload: object, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def _reports(args: argparse.Namespace, reports: list[Report]) -> int:
    if args.json:
        data = [r.to_json() for r in reports]
        print(json.dumps(data[0] if len(data) == 1 else data))
    else:
        for r in reports:
            print(r.to_text())
    return OK if all(r.ok for r in reports) else FAIL


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "enumerate":
        classes = enumerate_classes(args.det, primitive=not args.all)
        _emit(args, [format_form(f) for f in classes], "\n".join(format_form(f) for f in classes))
        return OK
    if cmd == "represent":
        v = find_representation(args.form, args.m)
        if v is None:
            _emit(args, {"m": args.m, "represented": False, "vector": None}, "not represented")
            return FAIL
        _emit(args, {"m": args.m, "represented": True, "vector": list(v)}, " ".join(map(str, v)))
        return OK
    if cmd == "excluded":
        hit = is_excluded(get_entry(args.entry).spec, args.m)
        _emit(args, {"entry": args.entry, "m": args.m, "excluded": hit}, "excluded" if hit else "admissible")
        return FAIL if hit else OK
    if cmd == "certify":
        try:
            cert = certify(args.entry, args.m)
        except ExcludedInputError as exc:
            _emit(args, {"entry": args.entry, "m": args.m, "error": str(exc)}, f"excluded: {exc}")
            return FAIL
        problems = validate_certificate(cert)
        text = "\n".join(
            [
                f"case    {cert.rule.label}",
                f"witness {cert.witness.astuple()}",
                f"f       {cert.f.pretty()}",
                f"U       {cert.equivalence.entries()}",
                f"vector  {cert.vector}",
            ]
            + [f"problem {p}" for p in problems]
        )
        _emit(args, cert.to_json(), text)
        return FAIL if problems else OK
    if cmd == "verify":
        run = verify_characterization if args.kind == "characterization" else verify_theorem
        return _reports(args, [run(args.entry, args.N, jobs=args.jobs)])
    if cmd == "verify-all":
        return _reports(args, verify_all(args.N, jobs=args.jobs))
    if cmd == "verify-table1":
        return _reports(args, [verify_table1()])
    if cmd == "verify-lemmas":
        return _reports(args, [verify_lemmas(args.N, jobs=args.jobs)])
    raise AssertionError(cmd)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (FormError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
