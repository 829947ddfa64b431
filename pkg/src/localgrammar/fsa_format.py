"""Reading and writing the ``.fsa`` text format.

::

    lga-fsa v1
    initial 0
    final 3
    0 1 a        # src dst label
    0 1 b

``#`` starts a comment. State ids may be any non-negative integers; they
are renumbered densely, in increasing id order, on load.
"""

from __future__ import annotations

from pathlib import Path

from .automaton import Automaton, check_label

FSA_HEADER = "lga-fsa v1"


class FormatError(ValueError):
    """A malformed input file. ``lineno`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, lineno: int = 0) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


def content_lines(text: str):
    """Yield ``(lineno, fields)`` for non-blank lines, comments stripped."""
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split("#", 1)[0].split()
        if fields:
            yield lineno, fields


def parse_int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise FormatError(f"expected a state id, got {token!r}", lineno)
    return int(token)


def parse_fsa(text: str) -> Automaton:
    lines = content_lines(text)
    first = next(lines, None)
    if first is None or " ".join(first[1]) != FSA_HEADER:
        raise FormatError(f"missing '{FSA_HEADER}' header", first[0] if first else 1)
    second = next(lines, None)
    if second is None or second[1][0] != "initial" or len(second[1]) != 2:
        raise FormatError("expected 'initial <id>' after the header", second[0] if second else 1)
    initial = parse_int(second[1][1], second[0])

    ids = {initial}
    finals: set[int] = set()
    arcs: dict[tuple[int, str, int], int] = {}
    seen_arcs = False
    for lineno, fields in lines:
        if fields[0] == "final":
            if seen_arcs:
                raise FormatError("'final' lines must precede transitions", lineno)
            if len(fields) < 2:
                raise FormatError("'final' needs at least one state id", lineno)
            finals.update(parse_int(tok, lineno) for tok in fields[1:])
            continue
        if fields[0] == "initial":
            raise FormatError("duplicate 'initial' line", lineno)
        if len(fields) != 3:
            raise FormatError("expected '<src> <dst> <label>'", lineno)
        seen_arcs = True
        src, dst = parse_int(fields[0], lineno), parse_int(fields[1], lineno)
        label = fields[2]
        try:
            check_label(label)
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        if (src, label, dst) in arcs:
            raise FormatError(f"duplicate transition {src} {dst} {label}", lineno)
        arcs[(src, label, dst)] = lineno
        ids.update((src, dst))
    ids |= finals

    dense = {old: new for new, old in enumerate(sorted(ids))}
    return Automaton.from_arcs(
        len(dense),
        dense[initial],
        (dense[f] for f in finals),
        ((dense[s], label, dense[d]) for s, label, d in arcs),
    )


def format_fsa(a: Automaton) -> str:
    lines = [FSA_HEADER, f"initial {a.initial}"]
    if a.finals:
        lines.append("final " + " ".join(map(str, sorted(a.finals))))
    lines.extend(f"{src} {dst} {label}" for src, label, dst in a.arcs())
    return "\n".join(lines) + "\n"


def load_fsa(path: str | Path) -> Automaton:
    return parse_fsa(Path(path).read_text(encoding="utf-8"))


def save_fsa(a: Automaton, path: str | Path) -> None:
    Path(path).write_text(format_fsa(a), encoding="utf-8")
