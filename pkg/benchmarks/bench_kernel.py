#!/usr/bin/env python3
"""Benchmark the compiled polynomial kernel against the pure-Python fallback.

Runs the dict-convolution micro-kernel and two real workloads (the top-degree
series with its functional-equation residual, and an order-12 compositional
inverse) under both backends and prints a comparison table.

Usage: python benchmarks/bench_kernel.py [--quick]
"""

import argparse
import random
import time

from charpoly import _kernel_py

try:
    from charpoly import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def random_poly(rng, nvars, degree, nterms):
    out = {}
    while len(out) < nterms:
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.randrange(nvars)] += 1
        key = 0
        for i, e in enumerate(exps):
            key |= e << (16 * i)
        out[key] = rng.randrange(-999, 1000) or 1
    return out


def bench_mul(kernel, polys, repeats):
    best = float("inf")
    for _ in range(repeats):
        t = time.perf_counter()
        for a, b in polys:
            kernel.poly_mul(a, b)
        best = min(best, time.perf_counter() - t)
    return best


def bench_workloads(repeats):
    """Series workloads run through whichever backend charpoly selected."""
    from charpoly import kernel
    from charpoly.polyring import compositional_inverse
    from charpoly.stanley import (
        functional_equation_residual,
        inverse_argument,
        top_series,
    )

    results = {}
    t = time.perf_counter()
    for _ in range(repeats):
        top_series.cache_clear()
        inverse_argument.cache_clear()
        g = top_series(3, 12)
        assert functional_equation_residual(g, 3).is_zero()
    results["top series + functional equation (m=3, order 12)"] = (
        time.perf_counter() - t
    ) / repeats

    t = time.perf_counter()
    for _ in range(repeats):
        inverse_argument.cache_clear()
        arg = inverse_argument(3, 12)
        w = compositional_inverse(arg)
        assert arg.compose(w).coefficient(1) == 1
    results["compositional inverse + compose (m=3, order 12)"] = (
        time.perf_counter() - t
    ) / repeats
    return kernel.BACKEND, results


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="fewer repetitions")
    args = parser.parse_args()
    repeats = 1 if args.quick else 3

    rng = random.Random(20240901)
    sizes = [(4, 6, 120), (6, 8, 462), (6, 12, 1500)]
    pairs = {
        s: [(random_poly(rng, *s), random_poly(rng, *s)) for _ in range(4)]
        for s in sizes
    }

    print(f"{'workload':55s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for s in sizes:
        label = f"poly_mul 4x ({s[2]} terms, {s[0]} vars, degree {s[1]})"
        pure = bench_mul(_kernel_py, pairs[s], repeats)
        if _kernel_c is None:
            print(f"{label:55s} {pure * 1e3:9.1f}ms {'n/a':>10s} {'':>8s}")
        else:
            comp = bench_mul(_kernel_c, pairs[s], repeats)
            print(
                f"{label:55s} {pure * 1e3:9.1f}ms {comp * 1e3:9.1f}ms "
                f"{pure / comp:7.2f}x"
            )

    # cross-check the backends agree on a sample
    if _kernel_c is not None:
        a, b = pairs[sizes[-1]][0]
        assert _kernel_c.poly_mul(a, b) == _kernel_py.poly_mul(a, b)

    backend, results = bench_workloads(repeats)
    print(f"\nend-to-end workloads (selected backend: {backend};"
          f" set CHARPOLY_KERNEL=pure to compare):")
    for label, seconds in results.items():
        print(f"  {label:53s} {seconds:8.2f}s")


if __name__ == "__main__":
    main()
