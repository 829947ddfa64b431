"""
Random text and grammar at desk scale
=====================================

1600 random sequences of length 20 to 30 over 60 labels, and a random
grammar of 290 states. Pass ``--small`` for a quick run.
"""

import sys

from localgrammar.bench import run_bench
from localgrammar.text import RandomSpec

if "--small" in sys.argv:
    spec = RandomSpec(200, 10, 30, 60, seed=1)
else:
    spec = RandomSpec(1600, 20, 60, 290, seed=1)

report = run_bench(spec)
width = max(map(len, report))
for key, value in report.items():
    print(f"{key:<{width}}  {value}")

# growth of the matcher over the minimized grammar
print(f"\n{report['matcher_copies']} states copied, growth {report['growth_ratio']}")
