"""``lga`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 malformed input file, 3 constraint
violation (cyclic grammar, unknown token in strict mode, ...), 4 internal
invariant failure (including an oracle disagreement).

Positive grammars: a token that leaves the matcher at its initial state is
always kept, whatever obligations the initial state itself carries.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .apply import NEGATIVE, POSITIVE, GrammarError, apply_matcher, compile_grammar
from .automaton import Automaton, classify, count_paths
from .bench import run_bench
from .fsa_format import FormatError, format_fsa, load_fsa
from .matcher import FailureAutomaton, format_matcher, load_matcher, scan_factors
from .oracle import oracle_check
from .text import RandomSpec, load_lexicon, sentences_to_automata

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CONSTRAINT, EXIT_INTERNAL = range(5)


class UsageError(Exception):
    pass


class ConstraintError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}")


def _fail(message: str) -> None:
    if os.environ.get("LGA_COLOR") == "1":
        message = f"\033[31m{message}\033[0m"
    print(message, file=sys.stderr)


def _write(path: str | None, content: str) -> None:
    """Write atomically, or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(content)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def automaton_stats(a: Automaton) -> dict:
    acyclic, deterministic = classify(a)
    return {
        "states": a.state_count,
        "transitions": a.transition_count,
        "finals": len(a.finals),
        "acyclic": acyclic,
        "deterministic": deterministic,
        "paths": count_paths(a, 0).path_count,
        "labels": len(a.labels()),
    }


def _dumps(obj: dict) -> str:
    return json.dumps(obj) + "\n"


def cmd_compile(args: argparse.Namespace) -> None:
    grammar = load_fsa(args.grammar)
    try:
        fa, trace = compile_grammar(grammar, wildcard=args.wildcard)
    except GrammarError as exc:
        raise ConstraintError(str(exc)) from None
    _write(args.output, format_matcher(fa))
    summary = (
        f"states={fa.state_count} transitions={fa.transition_count} "
        f"enqueues={trace.enqueues} copies={trace.copies} "
        f"failure_steps={trace.failure_steps} "
        f"transitions_examined={trace.transitions_examined}\n"
    )
    (sys.stdout if args.output else sys.stderr).write(summary)


def _apply_one(text: Automaton, fa: FailureAutomaton, mode: str, minimize_result: bool) -> tuple[Automaton, dict]:
    result, stats = apply_matcher(text, fa, mode, minimize_result=minimize_result)
    report = automaton_stats(result)
    report.update(
        dropped_transitions=stats.dropped_transitions,
        paths_in=stats.paths_in,
        paths_out=stats.paths_out,
        mode=stats.mode,
    )
    return result, report


def cmd_apply(args: argparse.Namespace) -> None:
    fa = load_matcher(args.matcher)
    mode = POSITIVE if args.positive else NEGATIVE
    source = Path(args.text)
    if not source.is_dir():
        result, report = _apply_one(load_fsa(source), fa, mode, not args.no_minimize)
        _write(args.output, format_fsa(result))
        if args.stats:
            _write(args.stats, _dumps(report))
        return
    # a directory of sentence automata: same names under -o, one stats entry each
    if not args.output:
        raise UsageError("apply: -o DIR is required when TEXT is a directory")
    texts = {p.name: load_fsa(p) for p in sorted(source.glob("*.fsa"))}
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    reports = {}
    for name, text in texts.items():
        result, reports[name] = _apply_one(text, fa, mode, not args.no_minimize)
        _write(str(out / name), format_fsa(result))
    if args.stats:
        _write(args.stats, json.dumps(reports, sort_keys=True) + "\n")


def cmd_scan(args: argparse.Namespace) -> None:
    fa = load_matcher(args.matcher)
    stream = open(args.file, encoding="utf-8") if args.file else sys.stdin
    try:
        for line in stream:
            ends = scan_factors(fa, line.split())
            sys.stdout.write(" ".join(map(str, ends)) + "\n")
    finally:
        if args.file:
            stream.close()


def cmd_text(args: argparse.Namespace) -> None:
    lex = load_lexicon(args.lexicon)
    lines = Path(args.sentences).read_text(encoding="utf-8").splitlines()
    try:
        built = sentences_to_automata(lines, lex, strict=args.strict)
    except KeyError as exc:
        raise ConstraintError(f"{exc.args[0]} (strict mode)") from None
    except ValueError as exc:
        raise ConstraintError(str(exc)) from None
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    for lineno, a in built:
        name = f"{lineno:04d}.fsa"
        _write(str(out / name), format_fsa(a))
        print(f"{name} states={a.state_count} paths={count_paths(a, 0).path_count}")


def cmd_stats(args: argparse.Namespace) -> None:
    report = automaton_stats(load_fsa(args.fsa))
    if args.json:
        sys.stdout.write(_dumps(report))
    else:
        for key, value in report.items():
            shown = "unbounded" if value is None else str(value).lower()
            print(f"{key}: {shown}")


def cmd_bench(args: argparse.Namespace) -> None:
    try:
        spec = RandomSpec(args.sequences, args.min_len, args.alphabet, args.grammar_states, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_bench(spec)
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    if report["kept_ok"] != report["kept_checked"] or report["removed_ok"] != report["removed_checked"]:
        raise InvariantError("spot check failed")


def cmd_oracle_check(args: argparse.Namespace) -> None:
    text, grammar = load_fsa(args.text), load_fsa(args.grammar)
    mode = POSITIVE if args.positive else NEGATIVE
    if args.max_len is None and not classify(text)[0]:
        raise ConstraintError("cyclic text automaton: pass --max-len")
    try:
        ok, checked, kept = oracle_check(text, grammar, mode, args.max_len)
    except GrammarError as exc:
        raise ConstraintError(str(exc)) from None
    if not ok:
        raise InvariantError(f"oracle mismatch ({mode}): {checked} paths checked")
    print(f"ok {mode}: {checked} paths checked, {kept} kept")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lga", description="Apply local grammars to text automata.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile a grammar .fsa into a .fsm3 matcher")
    p.add_argument("grammar")
    p.add_argument("-o", "--output")
    p.add_argument("--wildcard", action="store_true", help="let <?> transitions match any label")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("apply", help="apply a compiled matcher to a text automaton")
    p.add_argument("text", help="a .fsa file, or a directory of them")
    p.add_argument("matcher")
    p.add_argument("--positive", action="store_true", help="grammar lists obligatory sequences")
    p.add_argument("--no-minimize", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("--stats")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("scan", help="report match end positions for each input line")
    p.add_argument("matcher")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("text", help="build one text automaton per sentence")
    p.add_argument("sentences")
    p.add_argument("lexicon")
    p.add_argument("--strict", action="store_true", help="reject unknown tokens")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_text)

    p = sub.add_parser("stats", help="size, shape and path count of an automaton")
    p.add_argument("fsa")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="random text/grammar benchmark")
    p.add_argument("--sequences", type=int, default=1600)
    p.add_argument("--min-len", type=int, default=20)
    p.add_argument("--alphabet", type=int, default=60)
    p.add_argument("--grammar-states", type=int, default=290)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle-check", help="compare application with brute-force filtering")
    p.add_argument("text")
    p.add_argument("grammar")
    p.add_argument("--positive", action="store_true")
    p.add_argument("--max-len", type=int)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except UsageError as exc:
        _fail(str(exc))
        return EXIT_USAGE
    except FormatError as exc:
        _fail(f"parse error: {exc}")
        return EXIT_PARSE
    except OSError as exc:
        _fail(f"error: {exc}")
        return EXIT_USAGE
    except ConstraintError as exc:
        _fail(f"constraint violation: {exc}")
        return EXIT_CONSTRAINT
    except (InvariantError, AssertionError) as exc:
        _fail(f"internal invariant failure: {exc}")
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
