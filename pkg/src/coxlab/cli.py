"""Command-line surface: analyze, enumerate, segment, classify, verify.

Exit codes: 0 success, 1 invalid input, 2 reduced-expression precondition
violated, 3 resource budget exceeded, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import Budget, classify, enumerate_reduced
from .builtins import builtin_names, builtin_system
from .coxeter import CoxeterSystem, Word, system_from_json
from .errors import (
    CoxlabError,
    InternalInvariantError,
    InvalidInputError,
    NotReducedError,
)
from .labelings import enumerate_all
from .roots import Root, RootCache, inversion_set, length_and_reducedness, root_sequence
from .segment import build_structure, to_dot
from .verify import run_all_sweeps


def _root_names(system: CoxeterSystem, word: Word,
                cache: RootCache) -> dict[Root, str]:
    """Stable names A, B, C, ... by first appearance in the root sequence."""
    names: dict[Root, str] = {}
    for theta in root_sequence(system, word, cache):
        if theta not in names:
            k = len(names)
            names[theta] = chr(ord("A") + k) if k < 26 else f"R{k + 1}"
    return names


def _load_system(args) -> CoxeterSystem:
    if args.builtin:
        return builtin_system(args.builtin)
    if args.system:
        try:
            with open(args.system, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise InvalidInputError(f"cannot read system file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"system file is not valid JSON: {exc}") from exc
        return system_from_json(data)
    raise InvalidInputError("one of --builtin or --system is required")


def _require_word(system: CoxeterSystem, args) -> Word:
    if args.word is None:
        raise InvalidInputError("--word is required for this command")
    return system.parse_word(args.word)  # empty string encodes the identity


def _mode(args, default: str) -> str:
    if getattr(args, "json", False):
        return "json"
    if getattr(args, "dot", False):
        return "dot"
    if getattr(args, "text", False):
        return "text"
    return default


def _coords_str(root: Root) -> str:
    return "(" + ", ".join(c.approx(6) for c in root.coords) + ")"


def cmd_analyze(args) -> int:
    system = _load_system(args)
    word = _require_word(system, args)
    budget = Budget(max_words=args.budget)
    cache = RootCache(system)
    length, reduced = length_and_reducedness(system, word, cache)
    if not reduced:
        raise NotReducedError("analyze requires a reduced expression")
    names = _root_names(system, word, cache)
    structure = build_structure(inversion_set(system, word, cache), cache)
    families = enumerate_all(system, word, budget, cache)
    report = classify(system, word, budget, cache)
    if _mode(args, "text") == "json":
        payload = {
            "system": system.to_json(),
            "word": list(system.word_names(word)),
            "length": length,
            "inversion_set": [
                {"name": names[r], **r.to_json()} for r in structure.points
            ],
            "lines": structure.to_json(names)["lines"],
            "labeling_count": len(families.labelings),
            "classification": report.to_json(),
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"word: {' '.join(system.word_names(word))}")
    print(f"length: {length}")
    print(f"inversion set ({len(structure.points)} roots):")
    for root in sorted(structure.points, key=lambda r: names[r]):
        print(f"  {names[root]} = {_coords_str(root)}")
    print(f"lines ({len(structure.lines)}):")
    for line in structure.lines:
        members = ",".join(names[r] for r in line.members)
        if line.kind == "partial":
            print(f"  partial {{{members}}} canonical end {names[line.members[0]]}")
        else:
            print(f"  full {{{members}}}")
    print(f"reduced expressions: {report.reduced_count}")
    print(f"labelings: {len(families.labelings)}")
    print(f"commutation classes: {report.commutation_class_count}")
    print(f"contractible long sets (N): {report.n_contractible}")
    print(f"freely braided: {str(report.freely_braided).lower()}")
    print(f"fully covering: {str(report.fully_covering).lower()}")
    print(f"short-braid avoiding: {str(report.short_braid_avoiding).lower()}")
    print(f"covered count: {report.covered_count}")
    return 0


def cmd_enumerate(args) -> int:
    system = _load_system(args)
    word = _require_word(system, args)
    budget = Budget(max_words=args.budget)
    cache = RootCache(system)
    words = sorted(enumerate_reduced(system, word, budget, cache))
    families = enumerate_all(system, word, budget, cache)
    if _mode(args, "text") == "json":
        payload = {
            "reduced_expressions": [list(system.word_names(w)) for w in words],
            "labelings": [labeling.to_json() for labeling in families.labelings],
            "tournaments": [t.to_json() for t in families.tournaments],
            "counts": {
                "reduced_words": families.counts[0],
                "labelings": families.counts[1],
                "tournaments": families.counts[2],
            },
        }
        print(json.dumps(payload, indent=2))
        return 0
    for w in words:
        print(" ".join(system.word_names(w)))
    print(f"count: {len(words)} (labelings {families.counts[1]}, "
          f"tournaments {families.counts[2]})")
    return 0


def cmd_segment(args) -> int:
    system = _load_system(args)
    word = _require_word(system, args)
    cache = RootCache(system)
    names = _root_names(system, word, cache)
    structure = build_structure(inversion_set(system, word, cache), cache)
    if _mode(args, "dot") == "json":
        print(json.dumps(structure.to_json(names), indent=2))
    else:
        sys.stdout.write(to_dot(structure, names))
    return 0


def cmd_classify(args) -> int:
    system = _load_system(args)
    word = _require_word(system, args)
    budget = Budget(max_words=args.budget)
    report = classify(system, word, budget)
    if _mode(args, "text") == "json":
        print(json.dumps(report.to_json(), indent=2))
        return 0
    for key, value in report.to_json().items():
        if key == "contractible_long_sets":
            value = len(value)
        print(f"{key}: {value}")
    return 0


def cmd_verify(args) -> int:
    if not args.builtin:
        raise InvalidInputError("verify requires --builtin")
    system = builtin_system(args.builtin)
    budget = Budget(max_words=args.budget)
    reports = run_all_sweeps(system, args.max_length, budget)
    failed = False
    for report in reports:
        print(report.line())
        for mismatch in report.mismatches:
            print(f"    {mismatch}")
        failed = failed or not report.passed
    if failed:
        raise InternalInvariantError("verification sweep found mismatches")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxlab",
        description="Exact-arithmetic Coxeter group analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "analyze": cmd_analyze,
        "enumerate": cmd_enumerate,
        "segment": cmd_segment,
        "classify": cmd_classify,
        "verify": cmd_verify,
    }
    for name, handler in commands.items():
        p = sub.add_parser(name)
        p.add_argument("--system", help="path to a system JSON file")
        p.add_argument("--builtin", help=f"built-in system ({', '.join(builtin_names())})")
        p.add_argument("--word", help="generator names, whitespace-separated or JSON")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--dot", action="store_true", help="DOT output (segment)")
        p.add_argument("--text", action="store_true", help="human-readable output")
        p.add_argument("--max-length", type=int, default=6,
                       help="length bound for verify sweeps")
        p.add_argument("--budget", type=int, default=10**6,
                       help="cap on enumerated reduced expressions")
        p.set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget <= 0 or args.max_length < 0:
        print("error: budgets must be positive", file=sys.stderr)
        return 1
    try:
        return args.handler(args)
    except CoxlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
