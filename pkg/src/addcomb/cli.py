"""Command-line front end.

Subcommands mirror the library: generate materializes prefixes, complexity
profiles them, find-power and simultaneous hunt for block powers, search
runs the avoidance backtracker, verify runs the acceptance criteria.
Structured output is JSON with sorted keys; profiles can also be CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .acceptance import CRITERIA, run_all
from .complexity import check_abelian_bounds, check_additive_bounds, observed_bounds, profile
from .measures import MorphismMu, mu_additive, mu_from_description, mu_parikh
from .powers import (
    RetryCapExhausted,
    SearchLimits,
    find_power_scan,
    find_power_vdw,
    find_simultaneous,
)
from .search import AvoidanceProblem, backtrack
from .words import NAMED_WORDS, letter_to_json, named_word, word_from_description


def _read_text_arg(arg: str) -> str:
    """Inline JSON if it looks like JSON, otherwise the contents of a file."""
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        return s
    return Path(arg).read_text()


def _load_word(arg: str):
    if arg in NAMED_WORDS:
        return named_word(arg)
    return word_from_description(_read_text_arg(arg))


def _mu_for(mode: str, alphabet) -> MorphismMu:
    if mode == "additive":
        return mu_additive(alphabet)
    if mode == "abelian":
        return mu_parikh(alphabet)
    if mode.startswith("mu:"):
        doc = json.loads(_read_text_arg(mode[3:]))
        return mu_from_description(doc, alphabet)
    raise ValueError(f"unknown mode {mode!r}; expected additive, abelian, or mu:<json-or-file>")


def _limits_from(args) -> SearchLimits:
    if args.limits is not None:
        doc = json.loads(_read_text_arg(args.limits))
        limits = SearchLimits.from_json_dict(doc, prefix_length=args.n)
    else:
        if args.n is None:
            raise ValueError("either --n or --limits with an \"n\" field is required")
        limits = SearchLimits(prefix_length=args.n)
    if getattr(args, "modulus", None) is not None:
        limits.modulus = None if args.modulus == "auto" else int(args.modulus)
        if limits.modulus is not None and limits.modulus < 1:
            raise ValueError("modulus must be >= 1")
    if getattr(args, "no_fallback", False):
        limits.exhaustive_fallback = False
    return limits


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc, out: str | None) -> None:
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)


def cmd_generate(args) -> int:
    word = _load_word(args.word).prefix(args.n)
    if args.format == "json":
        # an explicit description: feeding it back to --word reproduces the prefix
        doc = {"kind": "explicit", "letters": [letter_to_json(a) for a in word.letters]}
        _emit_json(doc, args.out)
    else:
        lines = [" ".join(str(c) for c in a) for a in word.letters]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_complexity(args) -> int:
    src = _load_word(args.word)
    mu = _mu_for(args.mode, src.alphabet)
    nmax = args.nmax if args.nmax is not None else min(64, args.n)
    prof = profile(src, mu, args.n, nmax)
    if args.format == "csv":
        if args.bounds:
            raise ValueError("--bounds needs --format json")
        _emit(prof.to_csv(), args.out)
        return 0
    doc = prof.to_json_dict()
    if args.bounds:
        word = src.prefix(args.n)
        report = observed_bounds(prof, word, mu, euclidean=True)
        checks = check_abelian_bounds if mu.name == "parikh" else check_additive_bounds
        verdicts = [v.to_json_dict() for v in checks(report)]
        # serialize the report after the checks so their notes are included
        doc = {"profile": doc, "bounds": report.to_json_dict(), "verdicts": verdicts}
    _emit_json(doc, args.out)
    return 0


def cmd_find_power(args) -> int:
    src = _load_word(args.word)
    mu = _mu_for(args.mode, src.alphabet)
    limits = _limits_from(args)
    finder = find_power_scan if args.method == "scan" else find_power_vdw
    witness = finder(src, mu, args.k, limits)
    doc = {"found": witness is not None, "k": args.k, "method": args.method, "limits": limits.to_json_dict()}
    if witness is not None:
        doc["witness"] = witness.to_json_dict()
    _emit_json(doc, args.out)
    return 0


def cmd_simultaneous(args) -> int:
    sources = [_load_word(w) for w in args.word]
    limits = _limits_from(args)
    witness = find_simultaneous(sources, args.k, limits)
    doc = {
        "found": witness is not None,
        "k": args.k,
        "words": len(sources),
        "limits": limits.to_json_dict(),
    }
    if witness is not None:
        doc["witness"] = witness.to_json_dict()
    _emit_json(doc, args.out)
    return 0


def cmd_search(args) -> int:
    letters = [int(v) for v in args.alphabet.split(",") if v.strip() != ""]
    problem = AvoidanceProblem(letters, args.k, args.max_length, node_budget=args.budget)
    outcome = backtrack(
        problem,
        checkpoint_path=args.checkpoint,
        checkpoint_interval=args.interval,
        resume=args.resume,
    )
    _emit_json(outcome.to_json_dict(), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.criterion is not None:
        if args.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {args.criterion!r}; known: {', '.join(CRITERIA)}")
        results = [CRITERIA[args.criterion]()]
    else:
        results = run_all(quick=args.quick)
    ok = all(r.passed for r in results)
    if args.format == "json":
        _emit_json({"passed": ok, "criteria": [r.to_json_dict() for r in results]}, args.out)
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.elapsed:.2f}s)  {r.detail}" for r in results
        ]
        lines.append(f"{'all criteria passed' if ok else 'FAILURES PRESENT'}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def _add_word_arg(p, multiple: bool = False) -> None:
    help_text = "named word (%s), inline JSON description, or a JSON file" % ", ".join(sorted(NAMED_WORDS))
    if multiple:
        p.add_argument("--word", action="append", required=True, help=help_text + "; repeatable")
    else:
        p.add_argument("--word", required=True, help=help_text)


def _add_limit_args(p) -> None:
    p.add_argument("--n", type=int, default=None, help="prefix length to search")
    p.add_argument("--limits", default=None, help="limits as inline JSON or a JSON file")
    p.add_argument("--modulus", default=None, help='coloring modulus: an integer or "auto"')
    p.add_argument("--no-fallback", action="store_true", dest="no_fallback",
                   help="fail with exit code 2 instead of running the exhaustive fallback pass")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addcomb",
        description="Additive and abelian structure of infinite words: "
        "complexity profiles, block-power finding, avoidance search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="materialize a prefix of a word")
    _add_word_arg(p)
    p.add_argument("--n", type=int, required=True, help="prefix length")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write to a file instead of stdout")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("complexity", help="distinct block values per window length")
    _add_word_arg(p)
    p.add_argument("--n", type=int, required=True, help="prefix length")
    p.add_argument("--nmax", type=int, default=None, help="largest window length (default min(64, n))")
    p.add_argument("--mode", default="additive", help="additive, abelian, or mu:<json-or-file>")
    p.add_argument("--bounds", action="store_true", help="include observed gap constants and verdicts")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_complexity)

    p = sub.add_parser("find-power", help="find k adjacent equal-length blocks with equal values")
    _add_word_arg(p)
    p.add_argument("--k", type=int, required=True, help="number of blocks")
    p.add_argument("--mode", default="additive", help="additive, abelian, or mu:<json-or-file>")
    p.add_argument("--method", choices=("scan", "vdw"), default="scan")
    _add_limit_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_find_power)

    p = sub.add_parser("simultaneous", help="one power position shared by several words")
    _add_word_arg(p, multiple=True)
    p.add_argument("--k", type=int, required=True, help="number of blocks")
    _add_limit_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_simultaneous)

    p = sub.add_parser("search", help="backtracking search for power-avoiding words")
    p.add_argument("--alphabet", required=True, help="comma-separated integer letters, e.g. 0,1")
    p.add_argument("--k", type=int, required=True, help="power order to avoid")
    p.add_argument("--max-length", type=int, required=True, dest="max_length")
    p.add_argument("--budget", type=int, default=None, help="node budget (default unlimited)")
    p.add_argument("--checkpoint", default=None, help="checkpoint file (JSON)")
    p.add_argument("--interval", type=int, default=100_000, help="nodes between checkpoints")
    p.add_argument("--resume", action="store_true", help="resume from the checkpoint file")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--quick", action="store_true", help="reduced scales, no time budgets")
    p.add_argument("--criterion", default=None, help="run a single criterion by name")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except RetryCapExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
