"""
Removing analyses with a local grammar
======================================

Each sentence becomes an automaton with one path per combination of
analyses. A negative grammar deletes paths containing a forbidden sequence;
a positive grammar keeps only paths that complete every sequence they
start.
"""

from localgrammar import fixtures
from localgrammar.apply import NEGATIVE, POSITIVE, compile_grammar, disambiguate
from localgrammar.automaton import iter_paths
from localgrammar.text import ambiguity_report, build_text_automaton

lex = fixtures.lexicon()

# "this limit": 3 analyses of this, 5 of limit
text = build_text_automaton("this limit".split(), lex)
result, stats = disambiguate(text, fixtures.fsa("this"), NEGATIVE)
before, after, ratio = ambiguity_report(text, result)
print(f"this limit: {before} -> {after} paths (ratio {ratio})")
for path in iter_paths(result):
    print("   ", " ".join(path))

# Determiner and noun must agree in gender
grammar = fixtures.fsa("un")
for line in fixtures.sentences("un"):
    text = build_text_automaton(line.split(), lex)
    result, stats = disambiguate(text, grammar, POSITIVE)
    verdict = "kept" if stats.paths_out else "rejected"
    print(f"{line!r}: {verdict}")

# Unknown words get a placeholder analysis instead of failing
text = build_text_automaton("le zorglub".split(), lex)
print(list(iter_paths(text)))

# The compiled matcher can be reused across many sentences
fa, trace = compile_grammar(fixtures.fsa("this"))
print(f"matcher for 'this': {fa.state_count} states, {trace.copies} copies")
