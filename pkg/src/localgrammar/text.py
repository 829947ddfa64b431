"""Text automata: building them from sentences and a lexicon, and
generating random ones.

A lexicon maps a surface token to its analyses; each analysis is a short
label sequence such as ``DET f:s le`` (category, features, canonical
form). A sentence becomes an acyclic automaton with one slot per token and
one branch per analysis inside each slot, so every initial-to-final path
picks exactly one analysis per token.

Random instances
----------------
:func:`random_instance` uses :class:`random.Random` seeded with
``spec.seed`` and consumes it in a fixed order:

1. ``sequence_count`` sequences, each of length
   ``randint(min_length, min_length + 10)`` with labels drawn by
   ``randrange(alphabet_size)``; the text is the minimized trie.
2. A grammar grown to ``grammar_states`` states by
   :func:`random_grammar`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .automaton import (
    RESERVED_LABELS,
    UNKNOWN,
    Automaton,
    check_label,
    count_paths,
    minimize,
    topological_order,
    trim,
)
from .fsa_format import FormatError

Analysis = tuple[str, ...]


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, tuple[Analysis, ...]]

    def analyses(self, surface: str) -> tuple[Analysis, ...]:
        return self.entries.get(surface, ())

    def __contains__(self, surface: str) -> bool:
        return surface in self.entries

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class AnalyzedToken:
    surface: str
    analyses: tuple[Analysis, ...]


def parse_lexicon(text: str) -> Lexicon:
    """Parse ``surface<TAB>label label ...`` lines; duplicates collapse."""
    entries: dict[str, dict[Analysis, None]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        if "\t" not in line:
            raise FormatError("expected 'surface<TAB>analysis'", lineno)
        surface, rest = line.split("\t", 1)
        surface = surface.strip()
        analysis = tuple(rest.split())
        if not surface:
            raise FormatError("empty surface form", lineno)
        if not analysis:
            raise FormatError(f"empty analysis for {surface!r}", lineno)
        for label in analysis:
            if label in RESERVED_LABELS:
                raise FormatError(f"reserved label {label} in the lexicon", lineno)
            try:
                check_label(label)
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
        entries.setdefault(surface, {})[analysis] = None
    return Lexicon({s: tuple(a) for s, a in entries.items()})


def load_lexicon(path: str | Path) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def analyze(tokens: Sequence[str], lex: Lexicon, strict: bool = False) -> list[AnalyzedToken]:
    out = []
    for surface in tokens:
        analyses = lex.analyses(surface)
        if not analyses:
            if strict:
                raise KeyError(f"unknown token {surface!r}")
            check_label(surface)
            analyses = ((UNKNOWN, surface),)
        out.append(AnalyzedToken(surface, analyses))
    return out


def build_text_automaton(
    tokens: Sequence[str], lex: Lexicon, strict: bool = False
) -> Automaton:
    """Acyclic automaton of all analyses of ``tokens``.

    Unknown tokens get the analysis ``<UNK> surface`` unless ``strict``, in
    which case they raise ``KeyError``.
    """
    if not tokens:
        raise ValueError("cannot build a text automaton from no tokens")
    slots = analyze(tokens, lex, strict)
    arcs = []
    boundary = 0
    count = 1
    for slot in slots:
        end = count
        count += 1
        for analysis in slot.analyses:
            q = boundary
            for k, label in enumerate(analysis):
                if k == len(analysis) - 1:
                    dst = end
                else:
                    dst = count
                    count += 1
                arcs.append((q, label, dst))
                q = dst
        boundary = end
    return trim(Automaton.from_arcs(count, 0, [boundary], arcs))


def sentences_to_automata(
    lines: Iterable[str], lex: Lexicon, strict: bool = False
) -> list[tuple[int, Automaton]]:
    """One automaton per non-blank line, keyed by 1-based line number."""
    return [
        (lineno, build_text_automaton(line.split(), lex, strict))
        for lineno, line in enumerate(lines, 1)
        if line.split()
    ]


def ambiguity_report(before: Automaton, after: Automaton) -> tuple[int, int, Fraction]:
    """Path counts before and after, and their ratio."""
    counts = []
    for a in (before, after):
        n = count_paths(a, 0).path_count
        if n is None:
            raise ValueError("ambiguity report needs acyclic automata")
        counts.append(n)
    b, c = counts
    return b, c, Fraction(c, b) if b else Fraction(1)


@dataclass(frozen=True)
class RandomSpec:
    sequence_count: int
    min_length: int
    alphabet_size: int
    grammar_states: int
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("sequence_count", "min_length", "alphabet_size", "grammar_states"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def alphabet(size: int) -> list[str]:
    return [f"t{k}" for k in range(size)]


def random_acyclic(
    rng: random.Random,
    states: int,
    labels: Sequence[str],
    deterministic: bool = True,
    edge_factor: float = 1.5,
) -> Automaton:
    """A small random acyclic automaton, trimmed.

    Edges only go from lower to higher state numbers, which keeps the graph
    acyclic; roughly ``edge_factor * states`` edges are attempted.
    """
    arcs = set()
    used: dict[tuple[int, str], int] = {}
    for _ in range(int(edge_factor * states) + 1):
        if states < 2:
            break
        src = rng.randrange(states - 1)
        dst = rng.randrange(src + 1, states)
        label = rng.choice(labels)
        if deterministic and (src, label) in used:
            continue
        used[(src, label)] = dst
        arcs.add((src, label, dst))
    finals = [q for q in range(states) if rng.random() < 0.3] or [states - 1]
    return trim(Automaton.from_arcs(states, 0, finals, arcs))


def random_grammar(
    rng: random.Random,
    states: int,
    labels: Sequence[str],
    max_depth: int = 4,
) -> Automaton:
    """Grow a deterministic acyclic grammar to ``states`` states.

    A random tree of depth at most ``max_depth`` is grown by uniform
    attachment, the root's children being restricted to a tenth of the
    labels so that forbidden sequences share prefixes as real local
    grammars do. A quarter as many extra forward edges then turn the tree
    into a DAG. Every leaf is final, so every word has length at least 2
    once depth-1 leaves are given a child.
    """
    first_labels = list(labels[: max(1, len(labels) // 10)])
    depth = [0]
    out: list[dict[str, int]] = [{}]
    while len(out) < states:
        parent = rng.randrange(len(out))
        if depth[parent] >= max_depth:
            continue
        pool = first_labels if parent == 0 else labels
        free = [a for a in pool if a not in out[parent]]
        if not free:
            continue
        out[parent][rng.choice(free)] = len(out)
        depth.append(depth[parent] + 1)
        out.append({})
    for q in range(1, len(out)):
        if depth[q] == 1 and not out[q]:
            out[q][rng.choice(labels)] = len(out)
            depth.append(2)
            out.append({})
    for _ in range(len(out) // 4):
        src = rng.randrange(1, len(out) - 1)
        dst = rng.randrange(src + 1, len(out))
        free = [a for a in labels if a not in out[src]]
        if free and depth[dst] >= 2:
            out[src][rng.choice(free)] = dst
    arcs = [(q, a, d) for q, o in enumerate(out) for a, d in o.items()]
    finals = [q for q, o in enumerate(out) if not o]
    return trim(Automaton.from_arcs(len(out), 0, finals, arcs))


def random_sequences(rng: random.Random, spec: RandomSpec) -> list[list[str]]:
    labels = alphabet(spec.alphabet_size)
    return [
        [labels[rng.randrange(spec.alphabet_size)] for _ in range(length)]
        for length in (
            rng.randint(spec.min_length, spec.min_length + 10)
            for _ in range(spec.sequence_count)
        )
    ]


def random_instance(spec: RandomSpec) -> tuple[Automaton, Automaton]:
    """Seeded ``(text, grammar)`` pair; see the module docstring."""
    rng = random.Random(spec.seed)
    text = minimize(Automaton.from_words(random_sequences(rng, spec)))
    grammar = random_grammar(rng, spec.grammar_states, alphabet(spec.alphabet_size))
    assert topological_order(grammar) is not None
    return text, grammar
