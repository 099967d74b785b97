#!/usr/bin/env python3
"""Benchmark: compiled coefficient kernels vs the pure-Python fallback.

The coefficient integrals (A1, A2, A3, B, M) are the hot path of sweeps
and the discrepancy ledger.  This script times both backends on an
uncached workload and reports the speedup plus the worst value
disagreement.

Usage: python benchmarks/bench_backends.py [repeats]
"""

import sys
import time

from phi_ineq.coefquad import available_backends, coef_integral_uncached
from phi_ineq.convexity import PhiKernel


def workload():
    constant = PhiKernel.constant()
    power = PhiKernel.power(0.5)
    mt = PhiKernel.mt()
    cases = []
    for alpha in (0.4, 0.9, 1.5, 2.6):
        for lam in (0.0, 0.2, 0.5, 0.85, 1.0):
            cases.append(("A1", alpha, lam, None))
            for kernel in (constant, power, mt):
                cases.append(("A2", alpha, lam, kernel))
                cases.append(("A3", alpha, lam, kernel))
            cases.append(("B", alpha, lam, None))
    cases.append(("M", 1.0, 0.0, mt))
    return cases


def run(backend, cases, repeats):
    t0 = time.perf_counter()
    values = []
    for rep in range(repeats):
        # tiny alpha jitter defeats any downstream caching between reps
        jitter = rep * 1e-12
        for family, alpha, lam, kernel in cases:
            values.append(coef_integral_uncached(
                family, alpha + jitter, lam, kernel, p=2.0, backend=backend))
    return time.perf_counter() - t0, values


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    cases = workload()
    n = len(cases) * repeats
    print(f"workload: {len(cases)} coefficient integrals x {repeats} repeats = {n}")
    timings = {}
    results = {}
    for backend in available_backends():
        elapsed, values = run(backend, cases, repeats)
        timings[backend] = elapsed
        results[backend] = values
        print(f"{backend:>9}: {elapsed:8.3f} s total, {1e6 * elapsed / n:9.1f} us/integral")
    if "compiled" in timings and "pure" in timings:
        speedup = timings["pure"] / timings["compiled"]
        worst = max(abs(a - b) for a, b in zip(results["compiled"], results["pure"]))
        print(f"speedup (pure/compiled): {speedup:.1f}x")
        print(f"worst |compiled - pure|: {worst:.3e}")
    else:
        print("compiled extension not available; nothing to compare")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
