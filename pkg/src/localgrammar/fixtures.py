"""Demo data shipped with the package.

``small_grammar.fsa`` and ``small_text.fsa`` are a small worked example;
``shared_matcher.fsm3`` is its matcher built with shared final sinks,
entered by hand. ``demo.lex``,
``this.fsa``, ``un.fsa`` and the ``.txt`` sentence files are a
representative lexicon and two grammars; they are not transcriptions of
any real dictionary.
"""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

from .automaton import Automaton
from .fsa_format import parse_fsa
from .matcher import FailureAutomaton, parse_matcher
from .text import Lexicon, parse_lexicon


def path(name: str) -> Path:
    return Path(str(files(__package__).joinpath("data", name)))


def read(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def fsa(name: str) -> Automaton:
    return parse_fsa(read(name + ".fsa"))


def matcher(name: str) -> FailureAutomaton:
    return parse_matcher(read(name + ".fsm3"))


def lexicon(name: str = "demo") -> Lexicon:
    return parse_lexicon(read(name + ".lex"))


def sentences(name: str) -> list[str]:
    return read(name + ".txt").splitlines()
