import random

import pytest
from hypothesis import strategies as st

from localgrammar import fixtures
from localgrammar.automaton import Automaton, trim
from localgrammar.text import random_acyclic

LABELS = ["a", "b", "c", "d", "e", "f"]


@pytest.fixture
def small_grammar():
    return fixtures.fsa("small_grammar")


@pytest.fixture
def small_text():
    return fixtures.fsa("small_text")


@pytest.fixture
def shared_matcher():
    return fixtures.matcher("shared_matcher")


@st.composite
def acyclic_automata(draw, max_states=12, max_labels=6, deterministic=True):
    """Trimmed acyclic automata; edges only go forward in state order."""
    n = draw(st.integers(2, max_states))
    labels = LABELS[: draw(st.integers(1, max_labels))]
    raw = draw(
        st.lists(
            st.tuples(st.integers(0, n - 2), st.sampled_from(labels), st.integers(1, n - 1)),
            max_size=3 * n,
        )
    )
    arcs, seen = [], set()
    for src, label, dst in raw:
        if dst <= src or (deterministic and (src, label) in seen):
            continue
        seen.add((src, label))
        arcs.append((src, label, dst))
    finals = draw(st.sets(st.integers(1, n - 1), min_size=1))
    return trim(Automaton.from_arcs(n, 0, finals, arcs))


def seeded_instances(count, seed, max_states=12, max_labels=6, text_deterministic=False, text_edges=1.5):
    """``count`` (text, grammar, labels) triples from a fixed seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        labels = LABELS[: rng.randint(1, max_labels)]
        grammar = random_acyclic(rng, rng.randint(2, max_states), labels)
        text = random_acyclic(rng, rng.randint(2, max_states), labels, text_deterministic, text_edges)
        if grammar.finals and text.finals and 0 not in grammar.finals:
            out.append((text, grammar, labels))
    return out


# one line per acceptance criterion, shown after the run even when output is captured
CRITERIA_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)
