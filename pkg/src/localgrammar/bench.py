"""Desk-scale benchmark: random text, random grammar, compile and apply.

The command-line defaults are 1600 random sequences of length 20 to 30
over 60 labels and a grammar of 290 states.
Timings are wall-clock seconds from :func:`time.perf_counter`.
"""

from __future__ import annotations

import random
import time

from .apply import NEGATIVE, build_product
from .automaton import determinize, iter_paths, minimize, trim
from .matcher import build_factor_matcher, scan_factors
from .oracle import has_forbidden_factor
from .text import RandomSpec, random_instance


def run_bench(spec: RandomSpec, samples: int = 1000) -> dict:
    """Run the pipeline once and return a flat report dictionary.

    Spot checks sample surviving and removed paths (seeded from
    ``spec.seed``); when fewer than ``samples`` paths of a kind exist, all
    of them are checked. Surviving paths must have no match under the
    matcher, and removed paths must contain a forbidden factor according to
    the naive search on the grammar.
    """
    t0 = time.perf_counter()
    text, grammar = random_instance(spec)
    t1 = time.perf_counter()
    g2 = minimize(determinize(trim(grammar)))
    fa, trace = build_factor_matcher(g2)
    t2 = time.perf_counter()
    product = build_product(text, fa, NEGATIVE)
    applied = trim(product.automaton())
    t3 = time.perf_counter()
    result = minimize(applied)
    t4 = time.perf_counter()

    before = set(iter_paths(text))
    after = list(iter_paths(result))
    after_set = set(after)
    removed = sorted(before - after_set)
    rng = random.Random(spec.seed)
    kept_sample = after if len(after) <= samples else rng.sample(after, samples)
    removed_sample = removed if len(removed) <= samples else rng.sample(removed, samples)
    kept_ok = sum(1 for w in kept_sample if not scan_factors(fa, w))
    removed_ok = sum(1 for w in removed_sample if has_forbidden_factor(g2, w))

    return {
        "text_states": text.state_count,
        "text_transitions": text.transition_count,
        "text_paths": len(before),
        "grammar_states_raw": grammar.state_count,
        "grammar_states": g2.state_count,
        "matcher_states": fa.state_count,
        "matcher_transitions": fa.transition_count,
        "matcher_copies": trace.copies,
        "growth_ratio": round(fa.state_count / g2.state_count, 4),
        "applied_states": applied.state_count,
        "result_states": result.state_count,
        "result_transitions": result.transition_count,
        "result_paths": len(after),
        "dropped_transitions": len(product.dropped),
        "kept_checked": len(kept_sample),
        "kept_ok": kept_ok,
        "removed_checked": len(removed_sample),
        "removed_ok": removed_ok,
        "seconds_generate": round(t1 - t0, 4),
        "seconds_compile": round(t2 - t1, 4),
        "seconds_apply": round(t3 - t2, 4),
        "seconds_minimize": round(t4 - t3, 4),
    }
