#!/usr/bin/env python3
"""Median speedup of the generic-element path over the naive r! sum.

Runs each method three times on one algebra and prints both medians and
their ratio. Usage: bench_median.py [ALGEBRA] [R]  (default gl(3) 6).
"""

import statistics
import sys

from py_superali.bench import run_bench
from py_superali.algebras import MatrixAlgebraSpec

RUNS = 3

algebra = sys.argv[1] if len(sys.argv) > 1 else "gl(3)"
r = int(sys.argv[2]) if len(sys.argv) > 2 else 6
spec = MatrixAlgebraSpec.parse(algebra)

medians = {}
for method in ("naive", "generic"):
    times = [run_bench(spec, r, method).elapsed_ms for _ in range(RUNS)]
    medians[method] = statistics.median(times)
    print(f"{method:>8}: median {medians[method]:.1f} ms over {RUNS} runs")

ratio = medians["naive"] / max(medians["generic"], 1e-6)
print(f"speedup: {ratio:.1f}x")
sys.exit(0 if ratio >= 10 else 1)
