"""Deterministic factor matchers with failure transitions.

Given an acyclic deterministic grammar automaton ``G`` (the forbidden or
obligatory label sequences), :func:`build_factor_matcher` turns it into a
:class:`FailureAutomaton` recognizing every sequence that *ends with* a
word of ``L(G)``. The construction walks ``G`` breadth first, computing
for each state the failure state: the state reached by the longest proper
suffix of its access sequences that is still a prefix of some word of
``L(G)``. A state reached by sequences disagreeing on that suffix is
duplicated; duplicates are shared through a per-state registry keyed by
failure value, so a state is only copied as often as it has to be.

Missing transitions are resolved at lookup time by following failure
links down to the initial state, which carries an implicit loop on every
label. The alphabet therefore never has to be enumerated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .automaton import WILDCARD, Automaton, check_label, classify, is_trim
from .fsa_format import FormatError, content_lines, parse_int

FSM3_HEADER = "lga-fsm3 v1"


@dataclass(frozen=True)
class FailureAutomaton:
    """A partial DFA plus a failure function.

    ``delta[q]`` maps labels to targets, ``fail[q]`` is the failure state of
    ``q``. ``finals_raw`` are the final states as built; ``finals_closed``
    adds every state with a final state somewhere on its failure chain.
    With ``wildcard`` set, a ``<?>`` transition matches any label that has
    no transition of its own.
    """

    state_count: int
    initial: int
    delta: tuple[dict[str, int], ...]
    fail: tuple[int, ...]
    finals_raw: frozenset[int]
    wildcard: bool = False
    finals_closed: frozenset[int] = field(init=False, repr=False, compare=False)
    depth: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.state_count
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        if len(self.delta) != n or len(self.fail) != n:
            raise ValueError("delta and fail need one entry per state")
        for q in range(n):
            if not 0 <= self.fail[q] < n:
                raise ValueError(f"fail[{q}] = {self.fail[q]} out of range")
            for label, dst in self.delta[q].items():
                if not 0 <= dst < n:
                    raise ValueError(f"transition {q} -{label}-> {dst} out of range")
        if any(not 0 <= f < n for f in self.finals_raw):
            raise ValueError("final state out of range")
        if self.fail[self.initial] != self.initial:
            raise ValueError("the initial state must fail to itself")

        depth = [-1] * n
        depth[self.initial] = 0
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for dst in self.delta[q].values():
                if depth[dst] < 0:
                    depth[dst] = depth[q] + 1
                    queue.append(dst)
        for q in range(n):
            if depth[q] < 0:
                raise ValueError(f"state {q} is unreachable")
            if q != self.initial and depth[self.fail[q]] >= depth[q]:
                raise ValueError(
                    f"fail[{q}] = {self.fail[q]} is not shallower than state {q}"
                )
        object.__setattr__(self, "depth", tuple(depth))

        closed = set()
        for q in sorted(range(n), key=depth.__getitem__):
            if q in self.finals_raw or (q != self.initial and self.fail[q] in closed):
                closed.add(q)
        object.__setattr__(self, "finals_closed", frozenset(closed))

    @property
    def transition_count(self) -> int:
        return sum(len(d) for d in self.delta)

    def labels(self) -> frozenset[str]:
        return frozenset(label for d in self.delta for label in d)

    def as_automaton(self) -> Automaton:
        """The underlying partial DFA, failure links ignored."""
        arcs = [(q, a, d) for q, out in enumerate(self.delta) for a, d in out.items()]
        return Automaton.from_arcs(self.state_count, self.initial, self.finals_raw, arcs)


@dataclass
class BuildTrace:
    """Work counters from :func:`build_factor_matcher`.

    ``origin[q]`` is the grammar state that matcher state ``q`` copies.
    """

    enqueues: int = 0
    copies: int = 0
    failure_steps: int = 0
    transitions_examined: int = 0
    origin: tuple[int, ...] = ()


def build_factor_matcher(
    grammar: Automaton,
    wildcard: bool = False,
    duplicate_final_sinks: bool = True,
) -> tuple[FailureAutomaton, BuildTrace]:
    """Build the failure matcher for ``A* L(grammar)``.

    ``grammar`` must be acyclic, deterministic and trim; in practice pass
    ``minimize(determinize(trim(g)))``. Matcher states ``0..n-1`` are the
    grammar states; copies are numbered from ``n`` in creation order.

    With ``duplicate_final_sinks=False``, a final state without outgoing
    transitions is never copied and keeps the first failure value computed
    for it. The matcher is then smaller but only exact up to the first
    match of each scan, which is all that pruning needs; scanning past a
    match may report spurious matches.
    """
    acyclic, deterministic = classify(grammar)
    if not acyclic:
        raise ValueError("grammar automaton must be acyclic")
    if not deterministic:
        raise ValueError("grammar automaton must be deterministic")
    empty = not grammar.finals and grammar.state_count == 1 and not grammar.transition_count
    if not empty and not is_trim(grammar):
        raise ValueError("grammar automaton must be trim")

    i = grammar.initial
    n = grammar.state_count
    original_out = [dict(arcs) for arcs in grammar.transitions]
    out = [dict(d) for d in original_out]
    origin = list(range(n))
    fail: list[int | None] = [None] * n
    fail[i] = i
    # registry[g]: failure value -> matcher state, for copies of grammar state g
    registry: list[dict[int, int]] = [{} for _ in range(n)]
    finals = set(grammar.finals)
    sinks = {f for f in grammar.finals if not original_out[f]}
    trace = BuildTrace(enqueues=1)

    queue = deque([i])
    while queue:
        u = queue.popleft()
        for label in sorted(out[u]):
            trace.transitions_examined += 1
            target = out[u][label]
            v = fail[u]
            while v != i and label not in out[v]:
                v = fail[v]
                trace.failure_steps += 1
            if u != i and label in out[v]:
                v = out[v][label]
            g = origin[target]
            copies = registry[g]
            if copies and not duplicate_final_sinks and g in sinks:
                out[u][label] = next(iter(copies.values()))
            elif not copies:
                fail[target] = v
                copies[v] = target
                queue.append(target)
                trace.enqueues += 1
            elif v not in copies:
                w = len(out)
                out.append(dict(original_out[g]))
                origin.append(g)
                fail.append(v)
                if g in grammar.finals:
                    finals.add(w)
                copies[v] = w
                out[u][label] = w
                queue.append(w)
                trace.enqueues += 1
                trace.copies += 1
            else:
                out[u][label] = copies[v]

    trace.origin = tuple(origin)
    fa = FailureAutomaton(
        state_count=len(out),
        initial=i,
        delta=tuple(out),
        fail=tuple(fail),
        finals_raw=frozenset(finals),
        wildcard=wildcard,
    )
    return fa, trace


def _step(fa: FailureAutomaton, state: int, label: str) -> int | None:
    out = fa.delta[state]
    dst = out.get(label)
    if dst is None and fa.wildcard:
        dst = out.get(WILDCARD)
    return dst


def failure_lookup(fa: FailureAutomaton, state: int, label: str) -> tuple[int, int]:
    """Next state on ``label`` and the number of failure links followed."""
    steps = 0
    v = state
    while True:
        dst = _step(fa, v, label)
        if dst is not None:
            return dst, steps
        if v == fa.initial:
            return v, steps
        v = fa.fail[v]
        steps += 1


def is_match_state(fa: FailureAutomaton, state: int) -> bool:
    return state in fa.finals_closed


def recognize_ends_with(
    fa: FailureAutomaton, word: Sequence[str]
) -> tuple[bool, list[int]]:
    """Scan ``word``; accepted iff it ends with a word of the grammar.

    The trace lists the initial state, then for each label the states
    passed through by failure links followed by the state reached.
    """
    q = fa.initial
    trace = [q]
    for label in word:
        v = q
        while _step(fa, v, label) is None and v != fa.initial:
            v = fa.fail[v]
            trace.append(v)
        dst = _step(fa, v, label)
        if dst is not None:
            q = dst
            trace.append(q)
        else:
            # implicit loop on the initial state; record it unless the
            # failure walk already ended there
            if v == q:
                trace.append(v)
            q = v
    return is_match_state(fa, q), trace


def scan_moves(fa: FailureAutomaton, word: Sequence[str]) -> tuple[list[int], int]:
    """End positions of matches, plus total moves (advances + failure steps)."""
    q = fa.initial
    ends = [0] if is_match_state(fa, q) else []
    moves = 0
    for pos, label in enumerate(word, 1):
        q, steps = failure_lookup(fa, q, label)
        moves += steps + 1
        if q in fa.finals_closed:
            ends.append(pos)
    return ends, moves


def scan_factors(fa: FailureAutomaton, word: Sequence[str]) -> list[int]:
    """Positions ``p`` such that some suffix of ``word[:p]`` is in ``L(G)``."""
    return scan_moves(fa, word)[0]


def expand_to_dfa(fa: FailureAutomaton, alphabet: Iterable[str]) -> Automaton:
    """Materialize every default move over ``alphabet`` as a real transition.

    The result keeps the matcher's state numbering and is complete over
    ``alphabet``; its finals are the match states.
    """
    alphabet = set(alphabet)
    used = fa.labels() - ({WILDCARD} if fa.wildcard else set())
    missing = used - alphabet
    if missing:
        raise ValueError(f"alphabet lacks labels used by the matcher: {sorted(missing)}")
    arcs = [
        (q, a, failure_lookup(fa, q, a)[0])
        for q in range(fa.state_count)
        for a in alphabet
    ]
    return Automaton.from_arcs(fa.state_count, fa.initial, fa.finals_closed, arcs)


def format_matcher(fa: FailureAutomaton) -> str:
    lines = [FSM3_HEADER, f"initial {fa.initial}", f"states {fa.state_count}"]
    if fa.wildcard:
        lines.append("wildcard 1")
    for q in range(fa.state_count):
        lines.append(f"state {q} fail={fa.fail[q]} final={int(q in fa.finals_raw)}")
    for q in range(fa.state_count):
        for label, dst in sorted(fa.delta[q].items()):
            lines.append(f"{q} {dst} {label}")
    return "\n".join(lines) + "\n"


def _keyed(token: str, key: str, lineno: int) -> int:
    prefix = key + "="
    if not token.startswith(prefix):
        raise FormatError(f"expected '{prefix}<n>', got {token!r}", lineno)
    return parse_int(token[len(prefix):], lineno)


def parse_matcher(text: str) -> FailureAutomaton:
    lines = list(content_lines(text))

    def expect(idx: int, key: str) -> int:
        if idx >= len(lines) or lines[idx][1][0] != key or len(lines[idx][1]) != 2:
            raise FormatError(f"expected '{key} <n>'", lines[idx][0] if idx < len(lines) else 0)
        return parse_int(lines[idx][1][1], lines[idx][0])

    if not lines or " ".join(lines[0][1]) != FSM3_HEADER:
        raise FormatError(f"missing '{FSM3_HEADER}' header", lines[0][0] if lines else 1)
    initial = expect(1, "initial")
    n = expect(2, "states")
    idx = 3
    wildcard = False
    if idx < len(lines) and lines[idx][1][0] == "wildcard":
        wildcard = bool(expect(idx, "wildcard"))
        idx += 1

    fail: list[int | None] = [None] * n
    finals = set()
    delta: list[dict[str, int]] = [{} for _ in range(n)]

    def state_id(token: str, lineno: int) -> int:
        q = parse_int(token, lineno)
        if q >= n:
            raise FormatError(f"state {q} not declared (states {n})", lineno)
        return q

    for lineno, fields in lines[idx:]:
        if fields[0] == "state":
            if len(fields) != 4:
                raise FormatError("expected 'state <id> fail=<id> final=<0|1>'", lineno)
            q = state_id(fields[1], lineno)
            if fail[q] is not None:
                raise FormatError(f"state {q} declared twice", lineno)
            fail[q] = _keyed(fields[2], "fail", lineno)
            if fail[q] >= n:
                raise FormatError(f"fail target {fail[q]} not declared", lineno)
            flag = _keyed(fields[3], "final", lineno)
            if flag not in (0, 1):
                raise FormatError("final flag must be 0 or 1", lineno)
            if flag:
                finals.add(q)
            continue
        if len(fields) != 3:
            raise FormatError("expected '<src> <dst> <label>'", lineno)
        src, dst = state_id(fields[0], lineno), state_id(fields[1], lineno)
        label = fields[2]
        try:
            check_label(label)
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        if label in delta[src]:
            raise FormatError(f"state {src} has two '{label}' transitions", lineno)
        delta[src][label] = dst

    missing = [q for q in range(n) if fail[q] is None]
    if missing:
        raise FormatError(f"no 'state' line for state(s) {missing}")
    try:
        return FailureAutomaton(n, initial, tuple(delta), tuple(fail), frozenset(finals), wildcard)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_matcher(path: str | Path) -> FailureAutomaton:
    return parse_matcher(Path(path).read_text(encoding="utf-8"))


def save_matcher(fa: FailureAutomaton, path: str | Path) -> None:
    Path(path).write_text(format_matcher(fa), encoding="utf-8")
