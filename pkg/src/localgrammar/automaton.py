"""Finite automata over an open alphabet of string labels.

An :class:`Automaton` is an immutable labeled multigraph with one initial
state and a set of final states. States are dense integers ``0..n-1``.
Transition functions are partial: a missing transition means the implicit
dead state, so no sink is ever materialized.

Every algorithm here returns its result renumbered in breadth-first
discovery order (transitions visited by label, then target), which makes
outputs reproducible and comparable byte for byte.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Iterator, Sequence

WILDCARD = "<?>"
UNKNOWN = "<UNK>"
RESERVED_LABELS = frozenset({WILDCARD, UNKNOWN})


def check_label(label: str) -> None:
    """Raise ``ValueError`` if ``label`` cannot appear on a transition."""
    if not label:
        raise ValueError("empty label")
    if "#" in label or any(c.isspace() for c in label):
        raise ValueError(f"label {label!r} contains whitespace or '#'")
    if label.startswith("<") and label not in RESERVED_LABELS:
        raise ValueError(f"label {label!r} uses the reserved '<' prefix")


@dataclass(frozen=True)
class Automaton:
    """A finite automaton with integer states ``0..state_count-1``.

    ``transitions[q]`` is the tuple of ``(label, target)`` pairs leaving
    ``q``, sorted and free of duplicates. Use :meth:`from_arcs` to build
    one from an unsorted arc list.
    """

    state_count: int
    initial: int
    finals: frozenset[int]
    transitions: tuple[tuple[tuple[str, int], ...], ...]

    def __post_init__(self) -> None:
        n = self.state_count
        if n < 1:
            raise ValueError("an automaton needs at least one state")
        if not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} out of range")
        if len(self.transitions) != n:
            raise ValueError("one transition list per state is required")
        for f in self.finals:
            if not 0 <= f < n:
                raise ValueError(f"final state {f} out of range")
        for q, arcs in enumerate(self.transitions):
            for i, (label, dst) in enumerate(arcs):
                if not 0 <= dst < n:
                    raise ValueError(f"transition {q} -{label}-> {dst} out of range")
                if i and arcs[i - 1] >= (label, dst):
                    raise ValueError(f"transitions of state {q} not sorted/unique")

    @classmethod
    def from_arcs(
        cls,
        state_count: int,
        initial: int,
        finals: Iterable[int],
        arcs: Iterable[tuple[int, str, int]],
    ) -> Automaton:
        """Build from ``(src, label, dst)`` triples; duplicates collapse."""
        out: list[set[tuple[str, int]]] = [set() for _ in range(state_count)]
        for src, label, dst in arcs:
            out[src].add((label, dst))
        return cls(
            state_count,
            initial,
            frozenset(finals),
            tuple(tuple(sorted(s)) for s in out),
        )

    @classmethod
    def from_words(cls, words: Iterable[Sequence[str]]) -> Automaton:
        """The prefix tree (trie) accepting exactly ``words``."""
        children: list[dict[str, int]] = [{}]
        finals = set()
        for word in words:
            q = 0
            for label in word:
                nxt = children[q].get(label)
                if nxt is None:
                    nxt = len(children)
                    children[q][label] = nxt
                    children.append({})
                q = nxt
            finals.add(q)
        arcs = [(q, a, r) for q, d in enumerate(children) for a, r in d.items()]
        return _renumber(cls.from_arcs(len(children), 0, finals, arcs))

    @property
    def transition_count(self) -> int:
        return sum(len(arcs) for arcs in self.transitions)

    def arcs(self) -> Iterator[tuple[int, str, int]]:
        for q, out in enumerate(self.transitions):
            for label, dst in out:
                yield q, label, dst

    def labels(self) -> frozenset[str]:
        return frozenset(label for _, label, _ in self.arcs())

    def delta(self, state: int, label: str) -> int | None:
        """Target of ``label`` from ``state`` in a deterministic automaton."""
        for a, dst in self.transitions[state]:
            if a == label:
                return dst
        return None

    def accepts(self, word: Sequence[str]) -> bool:
        current = {self.initial}
        for label in word:
            current = {d for q in current for a, d in self.transitions[q] if a == label}
            if not current:
                return False
        return not current.isdisjoint(self.finals)


@dataclass(frozen=True)
class PathReport:
    """Number of accepted label sequences plus a bounded sample of them.

    ``path_count`` is ``None`` when the language is infinite.
    """

    path_count: int | None
    sample_paths: tuple[tuple[str, ...], ...]

    @property
    def unbounded(self) -> bool:
        return self.path_count is None


def empty_automaton() -> Automaton:
    return Automaton(1, 0, frozenset(), ((),))


def classify(a: Automaton) -> tuple[bool, bool]:
    """Return ``(acyclic, deterministic)``."""
    deterministic = all(
        all(out[i][0] != out[i - 1][0] for i in range(1, len(out)))
        for out in a.transitions
    )
    return topological_order(a) is not None, deterministic


def is_deterministic(a: Automaton) -> bool:
    return classify(a)[1]


def topological_order(a: Automaton) -> list[int] | None:
    """Kahn's algorithm; ``None`` if the graph has a cycle."""
    indegree = [0] * a.state_count
    for _, _, dst in a.arcs():
        indegree[dst] += 1
    queue = deque(q for q in range(a.state_count) if indegree[q] == 0)
    order = []
    while queue:
        q = queue.popleft()
        order.append(q)
        for _, dst in a.transitions[q]:
            indegree[dst] -= 1
            if indegree[dst] == 0:
                queue.append(dst)
    return order if len(order) == a.state_count else None


def _renumber(a: Automaton, keep: set[int] | None = None) -> Automaton:
    """Breadth-first renumbering from the initial state.

    Only states in ``keep`` (default: all) are visited; unreachable states
    disappear.
    """
    order = {a.initial: 0}
    queue = deque([a.initial])
    arcs = []
    while queue:
        q = queue.popleft()
        for label, dst in a.transitions[q]:
            if keep is not None and dst not in keep:
                continue
            if dst not in order:
                order[dst] = len(order)
                queue.append(dst)
            arcs.append((order[q], label, order[dst]))
    finals = [order[f] for f in a.finals if f in order]
    return Automaton.from_arcs(len(order), 0, finals, arcs)


def reachable(a: Automaton) -> set[int]:
    seen = {a.initial}
    stack = [a.initial]
    while stack:
        for _, dst in a.transitions[stack.pop()]:
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return seen


def coreachable(a: Automaton) -> set[int]:
    back: list[list[int]] = [[] for _ in range(a.state_count)]
    for src, _, dst in a.arcs():
        back[dst].append(src)
    seen = set(a.finals)
    stack = list(a.finals)
    while stack:
        for src in back[stack.pop()]:
            if src not in seen:
                seen.add(src)
                stack.append(src)
    return seen


def trim(a: Automaton) -> Automaton:
    """Keep only states that are both accessible and co-accessible."""
    useful = reachable(a) & coreachable(a)
    if a.initial not in useful:
        return empty_automaton()
    return _renumber(a, useful)


def is_trim(a: Automaton) -> bool:
    return len(reachable(a) & coreachable(a)) == a.state_count


def determinize(a: Automaton) -> Automaton:
    """Subset construction. States of the result are sorted state sets."""
    start = (a.initial,)
    index = {start: 0}
    subsets = [start]
    arcs = []
    finals = []
    i = 0
    while i < len(subsets):
        subset = subsets[i]
        if not a.finals.isdisjoint(subset):
            finals.append(i)
        moves: dict[str, set[int]] = {}
        for q in subset:
            for label, dst in a.transitions[q]:
                moves.setdefault(label, set()).add(dst)
        for label in sorted(moves):
            target = tuple(sorted(moves[label]))
            j = index.get(target)
            if j is None:
                j = index[target] = len(subsets)
                subsets.append(target)
            arcs.append((i, label, j))
        i += 1
    return _renumber(Automaton.from_arcs(len(subsets), 0, finals, arcs))


def minimize(a: Automaton) -> Automaton:
    """Minimal partial DFA for L(a) by Hopcroft partition refinement.

    ``a`` must be deterministic. It is trimmed first, so every surviving
    state has a nonempty future and a missing transition can only mean the
    implicit dead state.
    """
    if not is_deterministic(a):
        raise ValueError("minimize requires a deterministic automaton")
    a = trim(a)
    if not a.finals:
        return a
    n = a.state_count

    inverse: dict[str, dict[int, list[int]]] = {}
    for src, label, dst in a.arcs():
        inverse.setdefault(label, {}).setdefault(dst, []).append(src)

    block_of = [0] * n
    blocks: list[set[int]] = []
    for part in (set(a.finals), set(range(n)) - a.finals):
        if part:
            for q in part:
                block_of[q] = len(blocks)
            blocks.append(part)
    # With a partial transition function the partition is not stable with
    # respect to the whole state set, so every initial block is a splitter.
    pending = set(range(len(blocks)))
    worklist = list(pending)

    while worklist:
        splitter_id = worklist.pop()
        pending.discard(splitter_id)
        splitter = list(blocks[splitter_id])
        for label, back in inverse.items():
            hit: dict[int, set[int]] = {}
            for q in splitter:
                for src in back.get(q, ()):
                    hit.setdefault(block_of[src], set()).add(src)
            for b, inside in hit.items():
                block = blocks[b]
                if len(inside) == len(block):
                    continue
                block -= inside
                new_id = len(blocks)
                blocks.append(inside)
                for q in inside:
                    block_of[q] = new_id
                if b in pending:
                    pending.add(new_id)
                    worklist.append(new_id)
                else:
                    smaller = new_id if len(inside) <= len(block) else b
                    pending.add(smaller)
                    worklist.append(smaller)

    arcs = {(block_of[s], label, block_of[d]) for s, label, d in a.arcs()}
    quotient = Automaton.from_arcs(
        len(blocks),
        block_of[a.initial],
        {block_of[f] for f in a.finals},
        arcs,
    )
    return _renumber(quotient)


def _distinct_dfa(a: Automaton) -> Automaton:
    """Trimmed deterministic automaton with the same language."""
    a = trim(a)
    if not is_deterministic(a):
        a = trim(determinize(a))
    return a


def _lex_paths(a: Automaton) -> Iterator[tuple[str, ...]]:
    """Accepted words of an acyclic DFA in lexicographic order."""
    stack: list[tuple[int, tuple[str, ...]]] = [(a.initial, ())]
    while stack:
        q, word = stack.pop()
        if q in a.finals:
            yield word
        for label, dst in reversed(a.transitions[q]):
            stack.append((dst, word + (label,)))


def _shortlex_paths(a: Automaton) -> Iterator[tuple[str, ...]]:
    """Accepted words of a trim DFA ordered by length, then lexicographically."""
    queue = deque([(a.initial, ())])
    while queue:
        q, word = queue.popleft()
        if q in a.finals:
            yield word
        for label, dst in a.transitions[q]:
            queue.append((dst, word + (label,)))


def iter_paths(a: Automaton) -> Iterator[tuple[str, ...]]:
    """Every distinct accepted label sequence.

    Lexicographic for finite languages; shortlex (and endless) otherwise.
    """
    d = _distinct_dfa(a)
    if not d.finals:
        return iter(())
    if topological_order(d) is None:
        return _shortlex_paths(d)
    return _lex_paths(d)


def count_paths(a: Automaton, sample_limit: int = 10) -> PathReport:
    """Count distinct accepted label sequences.

    Nondeterministic inputs are determinized first so that two paths
    spelling the same sequence count once.
    """
    d = _distinct_dfa(a)
    if not d.finals:
        return PathReport(0, ())
    order = topological_order(d)
    sample = tuple(islice(iter_paths(d), sample_limit))
    if order is None:
        return PathReport(None, sample)
    ways = [0] * d.state_count
    for q in reversed(order):
        ways[q] = (q in d.finals) + sum(ways[dst] for _, dst in d.transitions[q])
    return PathReport(ways[d.initial], sample)


def longest_path(a: Automaton) -> int:
    """Length of the longest accepted word; ``ValueError`` if unbounded."""
    d = trim(a)
    order = topological_order(d)
    if order is None:
        raise ValueError("automaton has a cycle on an accepting path")
    if not d.finals:
        return 0
    best = [-1] * d.state_count
    for q in reversed(order):
        tails = [best[dst] + 1 for _, dst in d.transitions[q] if best[dst] >= 0]
        if q in d.finals:
            tails.append(0)
        best[q] = max(tails, default=-1)
    return best[d.initial]


def _distance_to_final(a: Automaton) -> list[int]:
    back: list[list[int]] = [[] for _ in range(a.state_count)]
    for src, _, dst in a.arcs():
        back[dst].append(src)
    dist = [-1] * a.state_count
    queue = deque(a.finals)
    for f in a.finals:
        dist[f] = 0
    while queue:
        q = queue.popleft()
        for src in back[q]:
            if dist[src] < 0:
                dist[src] = dist[q] + 1
                queue.append(src)
    return dist


def languages_equal_bounded(a: Automaton, b: Automaton, max_len: int) -> bool:
    """Do ``a`` and ``b`` accept the same words of length at most ``max_len``?

    Runs a breadth-first search over pairs of states of the determinized
    machines. When one side falls into the dead state, the other side must
    not be able to reach a final state within the remaining budget.
    """
    a, b = _distinct_dfa(a), _distinct_dfa(b)
    dist_a, dist_b = _distance_to_final(a), _distance_to_final(b)

    def dead_ok(dist: list[int], q: int, budget: int) -> bool:
        return not 0 <= dist[q] <= budget

    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        (p, q), depth = queue.popleft()
        budget = max_len - depth
        if p is None:
            if not dead_ok(dist_b, q, budget):
                return False
            continue
        if q is None:
            if not dead_ok(dist_a, p, budget):
                return False
            continue
        if (p in a.finals) != (q in b.finals):
            return False
        if budget == 0:
            continue
        out_a = dict(a.transitions[p])
        out_b = dict(b.transitions[q])
        for label in sorted(out_a.keys() | out_b.keys()):
            pair = (out_a.get(label), out_b.get(label))
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, depth + 1))
    return True


def isomorphic(a: Automaton, b: Automaton) -> bool:
    """Is there a state bijection mapping ``a`` onto ``b``?

    Both machines must be deterministic and trim; the bijection is then
    forced by a parallel breadth-first traversal.
    """
    for m in (a, b):
        if not is_deterministic(m) or not is_trim(m) and m.finals:
            raise ValueError("isomorphic requires deterministic trim automata")
    if a.state_count != b.state_count or a.transition_count != b.transition_count:
        return False
    forward = {a.initial: b.initial}
    backward = {b.initial: a.initial}
    queue = deque([a.initial])
    while queue:
        p = queue.popleft()
        q = forward[p]
        if (p in a.finals) != (q in b.finals):
            return False
        out_a, out_b = a.transitions[p], b.transitions[q]
        if [lab for lab, _ in out_a] != [lab for lab, _ in out_b]:
            return False
        for (_, pd), (_, qd) in zip(out_a, out_b):
            if pd in forward:
                if forward[pd] != qd:
                    return False
            elif qd in backward:
                return False
            else:
                forward[pd] = qd
                backward[qd] = pd
                queue.append(pd)
    return len(forward) == a.state_count == b.state_count
