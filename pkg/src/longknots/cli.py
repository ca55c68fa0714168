"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error, 3 a fuzz
run found an invariant that changed under a move.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagram import (
    BUILTIN_DIAGRAMS,
    MOVES,
    TRANSFORMS,
    DiagramError,
    LongDiagram,
    builtin_diagram,
    concat_all,
    descent,
    parse_code,
    transform,
)
from .invariants import VARIANTS, KindMismatchError, fuzz_invariance, invariant_profile
from .ring import UNIT_MODES, PolynomialParseError
from .switch import (
    BUILTIN_SWITCHES,
    InvalidSwitchError,
    Switch,
    SwitchFileError,
    algebra_relation_holds,
    builtin_switch,
    load_switch,
    symmetry_report,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


class _DiagramSource(argparse.Action):
    """Collect --knot/--code/--code-file in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        sources = list(getattr(namespace, "diagrams", None) or [])
        sources.append((option_string.lstrip("-"), values))
        namespace.diagrams = sources


def _add_diagram_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--knot", action=_DiagramSource, metavar="NAME", help=f"built-in diagram: {', '.join(BUILTIN_DIAGRAMS)}")
    p.add_argument("--code", action=_DiagramSource, metavar="CODE", help='passage code such as "O1- O2+ U1- U2+"')
    p.add_argument("--code-file", action=_DiagramSource, metavar="PATH", help="file holding a passage code")


def _add_switch_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--switch", metavar="NAME", help=f"built-in switch: {', '.join(BUILTIN_SWITCHES)}")
    p.add_argument("--switch-file", metavar="PATH", help="JSON switch description")
    p.add_argument("--unit-mode", choices=UNIT_MODES, help="unit group used for canonical forms")
    p.add_argument("--no-check", action="store_true", help="skip switch validation (switch files only)")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="longknots", description="Invariants of long virtual and flat knots from linear switches.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("compute", help="invariant polynomials of a diagram")
    _add_diagram_args(p)
    _add_switch_args(p)
    p.add_argument("--codim", type=int, default=0, metavar="N", help="largest codimension (default 0)")
    _add_format(p)

    p = sub.add_parser("transform", help="mirror, reflect or reverse a diagram")
    _add_diagram_args(p)
    p.add_argument("--op", choices=TRANSFORMS, required=True)
    _add_format(p)

    p = sub.add_parser("concat", help="concatenate diagrams in the order given")
    _add_diagram_args(p)
    _add_format(p)

    p = sub.add_parser("descent", help="lift a flat diagram to a virtual one")
    _add_diagram_args(p)
    _add_format(p)

    p = sub.add_parser("check-switch", help="validate a switch and report its symmetry classes")
    _add_switch_args(p)
    _add_format(p)

    p = sub.add_parser("fuzz", help="check invariance under random Reidemeister moves")
    _add_diagram_args(p)
    _add_switch_args(p)
    p.add_argument("--codim", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", type=int, default=100, metavar="N", help="number of move sequences")
    p.add_argument("--depth", type=int, default=6, metavar="N", help="longest move sequence")
    _add_format(p)

    p = sub.add_parser("list", help="list built-in diagrams and switches")
    _add_format(p)
    return parser


# -- sources ------------------------------------------------------------------------------


def _diagram_from(kind: str, value: str) -> LongDiagram:
    if kind == "knot":
        try:
            return builtin_diagram(value)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if kind == "code-file":
        try:
            value = Path(value).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {value}: {exc.strerror}") from None
    return parse_code(value)


def _diagrams(args, exactly_one: bool = True) -> list[LongDiagram]:
    sources = getattr(args, "diagrams", None) or []
    if not sources:
        raise UsageError("give a diagram with --knot, --code or --code-file")
    if exactly_one and len(sources) != 1:
        raise UsageError("give exactly one of --knot, --code, --code-file")
    return [_diagram_from(kind, value) for kind, value in sources]


def _switch(args) -> Switch:
    if bool(args.switch) == bool(args.switch_file):
        raise UsageError("give exactly one of --switch, --switch-file")
    if args.switch:
        if args.no_check:
            raise UsageError("--no-check applies to --switch-file only")
        try:
            s = builtin_switch(args.switch)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    else:
        try:
            s = load_switch(args.switch_file, check=not args.no_check)
        except OSError as exc:
            raise UsageError(f"cannot read {args.switch_file}: {exc.strerror}") from None
    if args.unit_mode and args.unit_mode != s.unit_mode:
        s = Switch(s.A, s.B, s.C, s.D, name=s.name, kind=s.kind, unit_mode=args.unit_mode, check=False)
    return s


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands -----------------------------------------------------------------------------


def run_compute(args) -> int:
    if args.codim < 0:
        raise UsageError("--codim must be nonnegative")
    (d,) = _diagrams(args)
    s = _switch(args)
    profile = invariant_profile(d, s, args.codim)
    doc = {"command": "compute", **profile.to_dict()}
    lines = [f"diagram: {d.render() or '(empty)'}", f"switch: {s.name}", f"unit-mode: {profile.mode}"]
    lines += [f"{v:<5} r={r}  {text}" for v, r, text in profile.rows()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def _code_result(args, command: str, d: LongDiagram) -> int:
    _emit(args, {"command": command, "code": d.render(), "kind": d.kind}, d.render())
    return EXIT_OK


def run_transform(args) -> int:
    (d,) = _diagrams(args)
    return _code_result(args, "transform", transform(d, args.op))


def run_concat(args) -> int:
    return _code_result(args, "concat", concat_all(_diagrams(args, exactly_one=False)))


def run_descent(args) -> int:
    (d,) = _diagrams(args)
    return _code_result(args, "descent", descent(d))


def run_check_switch(args) -> int:
    s = _switch(args)
    lhs, rhs = s.yang_baxter_sides()
    checks = {
        "yang-baxter": lhs == rhs,
        "involution": (s.matrix * s.matrix).is_identity(),
        "algebra-relation": algebra_relation_holds(s),
    }
    report = {form: sorted(found) for form, found in symmetry_report(s).items()}
    doc = {
        "command": "check-switch",
        "switch": s.name,
        "kind": s.kind,
        "dimension": s.d,
        "coefficients": s.domain.name,
        "variables": list(s.vars),
        "checks": checks,
        "symmetry": report,
    }
    lines = [f"switch: {s.name} ({s.kind}, d={s.d}, {s.domain.name} coefficients in {', '.join(s.vars)})"]
    lines += [f"{name}: {'holds' if ok else 'fails'}" for name, ok in checks.items()]
    lines += [f"symmetry ({form} dagger): {', '.join(found) or 'none'}" for form, found in report.items()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if checks["yang-baxter"] else EXIT_INVALID


def run_fuzz(args) -> int:
    if args.moves < 0 or args.depth < 1 or args.codim < 0:
        raise UsageError("--moves must be nonnegative, --depth positive, --codim nonnegative")
    (d,) = _diagrams(args)
    s = _switch(args)
    base, _, found = fuzz_invariance(d, s, args.moves, args.depth, args.seed, args.codim)
    mismatches = [
        {
            "sequence": m.sequence,
            "seed": m.seed,
            "moves": [str(mv) for mv in m.moves],
            "code": m.diagram.render(),
            "changed": [
                {"variant": v, "codim": r, "expected": str(m.expected[(v, r)]), "found": str(m.found[(v, r)])}
                for v, r in m.changed
            ],
        }
        for m in found
    ]
    doc = {
        "command": "fuzz",
        "switch": s.name,
        "code": d.render(),
        "unit-mode": base.mode,
        "seed": args.seed,
        "sequences": args.moves,
        "depth": args.depth,
        "codim": args.codim,
        "mismatches": mismatches,
    }
    lines = [f"fuzz {d.render() or '(empty)'} under {s.name}: {args.moves} sequences, depth <= {args.depth}, seed {args.seed}"]
    for m in mismatches:
        lines.append(f"MISMATCH sequence {m['sequence']} (seed {m['seed']}): {' '.join(m['moves'])}")
        lines.append(f"  code: {m['code']}")
        for c in m["changed"]:
            lines.append(f"  {c['variant']} r={c['codim']}: expected {c['expected']}, found {c['found']}")
    lines.append(f"{len(mismatches)} mismatch{'es' if len(mismatches) != 1 else ''}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_MISMATCH if mismatches else EXIT_OK


def run_list(args) -> int:
    doc = {
        "command": "list",
        "diagrams": {name: builtin_diagram(name).render() for name in BUILTIN_DIAGRAMS},
        "switches": {name: builtin_switch(name).kind for name in BUILTIN_SWITCHES},
        "moves": list(MOVES),
        "variants": list(VARIANTS),
    }
    lines = ["diagrams:"]
    lines += [f"  {name:<22} {code or '(empty)'}" for name, code in doc["diagrams"].items()]
    lines.append("switches:")
    lines += [f"  {name:<22} {kind}" for name, kind in doc["switches"].items()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


COMMANDS = {
    "compute": run_compute,
    "transform": run_transform,
    "concat": run_concat,
    "descent": run_descent,
    "check-switch": run_check_switch,
    "fuzz": run_fuzz,
    "list": run_list,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"longknots {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DiagramError, PolynomialParseError, SwitchFileError, InvalidSwitchError, KindMismatchError) as exc:
        print(f"longknots {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
