"""Applying compiled local grammars to text automata.

Both modes read the text automaton and the failure matcher in parallel,
breadth first from the pair of initial states, and keep or drop each text
transition:

* negative grammars list forbidden sequences; a transition is dropped when
  it moves the matcher into a match state, so the result accepts exactly
  the text paths with no forbidden factor;
* positive grammars list obligatory continuations; a transition is dropped
  when the matcher sits on a state with a pending obligation (one of its
  transitions leads to a final state) and the label continues none of
  them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .automaton import (
    Automaton,
    classify,
    count_paths,
    determinize,
    is_deterministic,
    minimize,
    trim,
)
from .matcher import (
    BuildTrace,
    FailureAutomaton,
    _step,
    build_factor_matcher,
    failure_lookup,
)

NEGATIVE = "negative"
POSITIVE = "positive"

Pair = tuple[int, int]


class GrammarError(ValueError):
    """The grammar automaton cannot be compiled (e.g. it has a cycle)."""


@dataclass
class ApplyStats:
    mode: str
    states_in: int = 0
    states_out: int = 0
    transitions_in: int = 0
    transitions_out: int = 0
    paths_in: int | None = None
    paths_out: int | None = None
    dropped_transitions: int = 0
    transitions_examined: int = 0


@dataclass
class Product:
    """The untrimmed pair automaton built by an application.

    ``pairs[k]`` is the (text state, matcher state) pair of product state
    ``k``. ``dropped`` lists the text transitions that were not kept as
    ``(source pair, label, text target)``.
    """

    pairs: list[Pair] = field(default_factory=list)
    arcs: list[tuple[int, str, int]] = field(default_factory=list)
    finals: set[int] = field(default_factory=set)
    dropped: list[tuple[Pair, str, int]] = field(default_factory=list)
    examined: int = 0

    def automaton(self) -> Automaton:
        return Automaton.from_arcs(len(self.pairs), 0, self.finals, self.arcs)


def ft(fa: FailureAutomaton, state: int) -> bool:
    """True when no transition of ``state`` leads to a final state."""
    return all(dst not in fa.finals_raw for dst in fa.delta[state].values())


def _negative_step(fa: FailureAutomaton) -> Callable[[int, str], int | None]:
    def step(state: int, label: str) -> int | None:
        nxt = failure_lookup(fa, state, label)[0]
        return None if nxt in fa.finals_closed else nxt

    return step


def _positive_step(fa: FailureAutomaton) -> Callable[[int, str], int | None]:
    free = [ft(fa, q) for q in range(fa.state_count)]

    def step(state: int, label: str) -> int | None:
        v = state
        while v != fa.initial and _step(fa, v, label) is None and free[v]:
            v = fa.fail[v]
        dst = _step(fa, v, label)
        if dst is not None:
            return dst
        # the initial state is never constrained by its own obligations
        return v if v == fa.initial else None

    return step


def build_product(text: Automaton, fa: FailureAutomaton, mode: str = NEGATIVE) -> Product:
    """Pair construction shared by both modes (no trimming)."""
    if mode not in (NEGATIVE, POSITIVE):
        raise ValueError(f"unknown mode {mode!r}")
    step = _negative_step(fa) if mode == NEGATIVE else _positive_step(fa)
    prod = Product()
    start = (text.initial, fa.initial)
    if mode == NEGATIVE and fa.initial in fa.finals_closed:
        # the empty sequence is forbidden, hence every sequence is
        prod.pairs.append(start)
        return prod

    index = {start: 0}
    prod.pairs.append(start)
    queue = deque([start])
    while queue:
        u1, u3 = pair = queue.popleft()
        src = index[pair]
        if u1 in text.finals:
            prod.finals.add(src)
        for label, v1 in text.transitions[u1]:
            prod.examined += 1
            v3 = step(u3, label)
            if v3 is None:
                prod.dropped.append((pair, label, v1))
                continue
            target = (v1, v3)
            dst = index.get(target)
            if dst is None:
                dst = index[target] = len(prod.pairs)
                prod.pairs.append(target)
                queue.append(target)
            prod.arcs.append((src, label, dst))
    return prod


def _apply(text: Automaton, fa: FailureAutomaton, mode: str) -> tuple[Automaton, ApplyStats]:
    prod = build_product(text, fa, mode)
    result = trim(prod.automaton())
    stats = ApplyStats(
        mode=mode,
        states_in=text.state_count,
        states_out=result.state_count,
        transitions_in=text.transition_count,
        transitions_out=result.transition_count,
        dropped_transitions=len(prod.dropped),
        transitions_examined=prod.examined,
    )
    return result, stats


def apply_negative(text: Automaton, fa: FailureAutomaton) -> tuple[Automaton, ApplyStats]:
    """Remove every path of ``text`` containing a factor in the grammar."""
    return _apply(text, fa, NEGATIVE)


def apply_positive(text: Automaton, fa: FailureAutomaton) -> tuple[Automaton, ApplyStats]:
    """Remove every path of ``text`` that violates an obligatory continuation."""
    return _apply(text, fa, POSITIVE)


def reference_scan_positive(fa: FailureAutomaton, word: Sequence[str]) -> bool:
    """Single-sequence restatement of :func:`apply_positive`."""
    step = _positive_step(fa)
    q = fa.initial
    for label in word:
        q = step(q, label)
        if q is None:
            return False
    return True


def compile_grammar(
    grammar: Automaton, wildcard: bool = False
) -> tuple[FailureAutomaton, BuildTrace]:
    """Trim, determinize and minimize ``grammar``, then build its matcher."""
    g = trim(grammar)
    if not classify(g)[0]:
        raise GrammarError("grammar automaton has a cycle")
    g = minimize(determinize(g))
    return build_factor_matcher(g, wildcard=wildcard)


def apply_matcher(
    text: Automaton,
    fa: FailureAutomaton,
    mode: str = NEGATIVE,
    minimize_result: bool = True,
) -> tuple[Automaton, ApplyStats]:
    """Apply, trim, optionally minimize, and fill in path counts."""
    result, stats = _apply(text, fa, mode)
    if minimize_result:
        if not is_deterministic(result):
            result = determinize(result)
        result = minimize(result)
        stats.states_out = result.state_count
        stats.transitions_out = result.transition_count
    stats.paths_in = count_paths(text, 0).path_count
    stats.paths_out = count_paths(result, 0).path_count
    return result, stats


def disambiguate(
    text: Automaton,
    grammar: Automaton,
    mode: str = NEGATIVE,
    minimize_result: bool = True,
) -> tuple[Automaton, ApplyStats]:
    """Compile ``grammar`` and apply it to ``text``."""
    fa, _ = compile_grammar(grammar)
    return apply_matcher(text, fa, mode, minimize_result)
