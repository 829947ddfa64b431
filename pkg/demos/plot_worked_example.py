"""
Compiling a small grammar and watching it scan
==============================================

A grammar of forbidden sequences is compiled into a matcher with failure
links. We then scan a few label sequences and follow the states visited.
"""

from localgrammar import fixtures
from localgrammar.matcher import build_factor_matcher, failure_lookup, format_matcher, recognize_ends_with

# The grammar: (a|b) (a|b|c|d) d
grammar = fixtures.fsa("small_grammar")
print(f"grammar: {grammar.state_count} states, {grammar.transition_count} transitions")

# Strict build. The final state is reached with two different failure
# values, so it is duplicated along with state 2.
strict, trace = build_factor_matcher(grammar)
print(f"strict build: {strict.state_count} states, {trace.copies} copies")

# Sharing final sinks gives a smaller matcher that is only exact up to the
# first match. The shipped fixture is the same machine entered by hand.
shared, trace = build_factor_matcher(grammar, duplicate_final_sinks=False)
print(f"shared final sinks: {shared.state_count} states, {trace.copies} copy")
manual = fixtures.matcher("shared_matcher")
print(format_matcher(manual))

# Scan "a a c d". The third step follows one failure link.
q = manual.initial
for label in "aacd":
    nxt, steps = failure_lookup(manual, q, label)
    print(f"{q} --{label}--> {nxt}" + (f"  ({steps} failure step)" if steps else ""))
    q = nxt
print("ends with a grammar word:", recognize_ends_with(manual, list("aacd"))[0])

# Past a match the shared sink misreads: "a c d d" does not end with a word.
for fa, name in ((strict, "strict"), (shared, "shared")):
    print(name, "a c d d ->", recognize_ends_with(fa, list("acdd"))[0])
