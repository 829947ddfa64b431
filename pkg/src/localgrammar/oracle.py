"""Brute-force references for checking the fast algorithms.

Nothing here uses failure links or pair constructions: matches are found
by restarting the grammar automaton at every position, and applications
are checked by enumerating the text's paths one by one.
"""

from __future__ import annotations

from itertools import takewhile
from typing import Sequence

from .apply import NEGATIVE, apply_matcher, compile_grammar, reference_scan_positive
from .automaton import Automaton, iter_paths, languages_equal_bounded, longest_path, topological_order, trim


def naive_match_ends(grammar: Automaton, word: Sequence[str]) -> list[int]:
    """End positions ``p`` such that some suffix of ``word[:p]`` is in L(grammar)."""
    ends = set()
    for start in range(len(word) + 1):
        current = {grammar.initial}
        pos = start
        while current:
            if not current.isdisjoint(grammar.finals):
                ends.add(pos)
            if pos == len(word):
                break
            label = word[pos]
            current = {d for q in current for a, d in grammar.transitions[q] if a == label}
            pos += 1
    return sorted(ends)


def has_forbidden_factor(grammar: Automaton, word: Sequence[str]) -> bool:
    return bool(naive_match_ends(grammar, word))


def ends_with_word(grammar: Automaton, word: Sequence[str]) -> bool:
    return any(grammar.accepts(word[i:]) for i in range(len(word) + 1))


def bounded_paths(a: Automaton, max_len: int) -> list[tuple[str, ...]]:
    """Accepted words of length at most ``max_len``."""
    if topological_order(trim(a)) is None:
        return list(takewhile(lambda w: len(w) <= max_len, iter_paths(a)))
    return [w for w in iter_paths(a) if len(w) <= max_len]


def filtered_trie(text: Automaton, grammar: Automaton, mode: str, max_len: int) -> Automaton:
    """Trie of the text paths that survive ``grammar``, decided path by path."""
    paths = bounded_paths(text, max_len)
    if mode == NEGATIVE:
        kept = [w for w in paths if not has_forbidden_factor(grammar, w)]
    else:
        fa, _ = compile_grammar(grammar)
        kept = [w for w in paths if reference_scan_positive(fa, w)]
    return Automaton.from_words(kept)


def oracle_check(
    text: Automaton, grammar: Automaton, mode: str = NEGATIVE, max_len: int | None = None
) -> tuple[bool, int, int]:
    """Compare the pair construction with the path-by-path filter.

    Returns ``(agree, paths checked, paths kept by the oracle)``.
    """
    if max_len is None:
        max_len = longest_path(text) + 1
    fa, _ = compile_grammar(grammar)
    result, _ = apply_matcher(text, fa, mode, minimize_result=False)
    expected = filtered_trie(text, grammar, mode, max_len)
    n_paths = len(bounded_paths(text, max_len))
    n_kept = len(bounded_paths(expected, max_len))
    return languages_equal_bounded(result, expected, max_len), n_paths, n_kept
