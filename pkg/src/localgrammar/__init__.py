"""Local grammar automata: failure-function matchers and text disambiguation."""

from .apply import (
    NEGATIVE,
    POSITIVE,
    ApplyStats,
    GrammarError,
    apply_matcher,
    apply_negative,
    apply_positive,
    build_product,
    compile_grammar,
    disambiguate,
    ft,
    reference_scan_positive,
)
from .automaton import (
    UNKNOWN,
    WILDCARD,
    Automaton,
    PathReport,
    classify,
    count_paths,
    determinize,
    isomorphic,
    iter_paths,
    languages_equal_bounded,
    minimize,
    trim,
)
from .fsa_format import FormatError, format_fsa, load_fsa, parse_fsa, save_fsa
from .matcher import (
    BuildTrace,
    FailureAutomaton,
    build_factor_matcher,
    expand_to_dfa,
    failure_lookup,
    format_matcher,
    is_match_state,
    load_matcher,
    parse_matcher,
    recognize_ends_with,
    save_matcher,
    scan_factors,
)
from .text import (
    Lexicon,
    RandomSpec,
    ambiguity_report,
    build_text_automaton,
    parse_lexicon,
    random_instance,
)

__version__ = "0.1.0"

__all__ = [
    "NEGATIVE",
    "POSITIVE",
    "ApplyStats",
    "GrammarError",
    "apply_matcher",
    "apply_negative",
    "apply_positive",
    "build_product",
    "compile_grammar",
    "disambiguate",
    "ft",
    "reference_scan_positive",
    "UNKNOWN",
    "WILDCARD",
    "Automaton",
    "PathReport",
    "classify",
    "count_paths",
    "determinize",
    "isomorphic",
    "iter_paths",
    "languages_equal_bounded",
    "minimize",
    "trim",
    "FormatError",
    "format_fsa",
    "load_fsa",
    "parse_fsa",
    "save_fsa",
    "BuildTrace",
    "FailureAutomaton",
    "build_factor_matcher",
    "expand_to_dfa",
    "failure_lookup",
    "format_matcher",
    "is_match_state",
    "load_matcher",
    "parse_matcher",
    "recognize_ends_with",
    "save_matcher",
    "scan_factors",
    "Lexicon",
    "RandomSpec",
    "ambiguity_report",
    "build_text_automaton",
    "parse_lexicon",
    "random_instance",
]
