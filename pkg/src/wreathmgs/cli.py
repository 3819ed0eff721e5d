"""Command-line entry point.

Exit codes: 0 all checks passed, 1 definitive negative result or invalid
instance, 2 replay or oracle disagreement, 3 resource cap exceeded, 64 usage
error.  Reports go to standard output and depend only on argv.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automaton as am
from .acceptance import run_suite
from .construct import LEMMAS, load_instance, run_lemma_trials, validate_lcondition_finite
from .errors import InvalidData, NotSatisfied, ResourceError, SteeringNotFound
from .perm import DEFAULT_ELEMENT_CAP, PermutationGroup
from .portrait import Portrait, decompose_level_k, pi_sign, square_obstruction
from .pscert import find_ps_witness, find_steering, verify_ps_witness

EXIT_OK, EXIT_NEGATIVE, EXIT_MISMATCH, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--cap", type=int, default=DEFAULT_ELEMENT_CAP, help="element cap for enumerations")
    p.add_argument("--depth", type=int, default=6, help="truncation depth for machine inputs")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wreathmgs", description="Verification workflows for wreath products "
                     "and tree automorphisms.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ps-check", help="search for a PS witness in a group file")
    p.add_argument("group")
    _common(p)

    p = sub.add_parser("lemma-replay", help="replay a construction lemma on an instance file")
    p.add_argument("instance")
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    _common(p)

    p = sub.add_parser("theta", help="active-state counts of a machine")
    p.add_argument("machine")
    p.add_argument("-N", type=int, default=20, dest="levels")
    _common(p)

    p = sub.add_parser("classify", help="growth class of a machine")
    p.add_argument("machine")
    _common(p)

    p = sub.add_parser("parity", help="level parities of a portrait (or truncated machine)")
    p.add_argument("portrait")
    _common(p)

    p = sub.add_parser("decompose", help="split a portrait at level k")
    p.add_argument("portrait")
    p.add_argument("-k", type=int, default=2)
    _common(p)

    p = sub.add_parser("compose", help="product a*b of two machines (b acts first)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    _common(p)

    p = sub.add_parser("suite", help="run the acceptance battery")
    _common(p)
    return parser


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_portrait(path, depth) -> Portrait:
    data = _read_json(path)
    if "states" in data:
        return am.to_portrait(am.MealyAutomorphism.from_json(data), depth)
    return Portrait.from_json(data)


def _ps_check(args):
    group = PermutationGroup.from_json(_read_json(args.group), element_cap=args.cap)
    try:
        w = find_ps_witness(group)
    except NotSatisfied as exc:
        return EXIT_NEGATIVE, {"satisfied": False, "criterion": exc.criterion, "reason": exc.reason}
    report = verify_ps_witness(group, w)
    out = {"satisfied": report.passed, "witness": w.to_json()}
    try:
        st = find_steering(group, w)
        out["steering"] = {"case": st.case, "d": list(st.d.images),
                           "labeling": list(st.labeling.images), "targets": list(st.targets)}
    except SteeringNotFound as exc:
        out["steering"] = {"error": exc.reason}
    if not report.passed:
        out["failed_checks"] = report.failed()
        return EXIT_MISMATCH, out
    return EXIT_OK, out


def _lemma_replay(args):
    data = load_instance(_read_json(args.instance))
    report = validate_lcondition_finite(data)
    out = {"validation": report.to_json()}
    if not report.passed:
        return EXIT_NEGATIVE, out
    entry = run_lemma_trials(data, args.lemma, args.trials, args.seed, args.cap)
    out["replay"] = {"lemma_id": entry.lemma_id, "instances_checked": entry.instances_checked,
                     "all_passed": entry.all_passed, "first_failure": entry.first_failure,
                     "note": entry.note}
    return (EXIT_OK if entry.all_passed else EXIT_MISMATCH), out


def _machine(path):
    return am.MealyAutomorphism.from_json(_read_json(path))


def _theta(args):
    g = _machine(args.machine)
    return EXIT_OK, {"N": args.levels, "theta": list(am.theta_profile(g, args.levels).counts)}


def _classify(args):
    g = _machine(args.machine)
    cls = am.classify_activity(g)
    emp = am.empirical_activity(g)
    out = {"kind": cls.kind, "degree": cls.degree, "finitary_depth": am.is_finitary(g),
           "sampled": {"kind": emp.kind, "degree": emp.degree}}
    return (EXIT_OK if cls == emp else EXIT_MISMATCH), out


def _parity(args):
    g = _load_portrait(args.portrait, args.depth)
    signs = [pi_sign(g, n) for n in range(g.depth)]
    level = square_obstruction(g)
    return EXIT_OK, {"signs": signs, "not_a_square_at": level}


def _decompose(args):
    g = _load_portrait(args.portrait, args.depth)
    top, rest = decompose_level_k(g, args.k)
    return EXIT_OK, {"k": args.k, "top": top.to_json(), "rest": rest.to_json(),
                     "round_trip": top * rest == g}


def _compose(args):
    gh = _machine(args.a) * _machine(args.b)
    if args.output:
        am.save_machine(gh, args.output)
    return EXIT_OK, gh.to_json()


def _suite(args):
    results = run_suite(args.seed)
    out = {"seed": args.seed, "passed": all(r.passed for r in results),
           "criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                         "details": r.details} for r in results]}
    return (EXIT_OK if out["passed"] else EXIT_MISMATCH), out


HANDLERS = {
    "ps-check": _ps_check,
    "lemma-replay": _lemma_replay,
    "theta": _theta,
    "classify": _classify,
    "parity": _parity,
    "decompose": _decompose,
    "compose": _compose,
    "suite": _suite,
}


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(x, indent) if isinstance(x, (dict, list)) else f"{pad}- {_scalar(x)}"
                         for x in obj)
    return f"{pad}{_scalar(obj)}"


def _scalar(v) -> str:
    return json.dumps(v) if isinstance(v, (dict, list)) else str(v)


def _emit(out, fmt):
    if fmt == "json":
        print(json.dumps(out, indent=2, sort_keys=True, default=str))
    else:
        print(_text(out))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, out = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"wreathmgs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        code, out = EXIT_RESOURCE, {"error": type(exc).__name__, "reason": str(exc)}
    except (InvalidData, SteeringNotFound) as exc:
        code, out = EXIT_NEGATIVE, {"error": type(exc).__name__, "reason": str(exc)}
    except (OSError, KeyError, TypeError, ValueError) as exc:
        print(f"wreathmgs: error: malformed input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(out, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
