#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Two workloads, matching where analysis time actually goes:
  * grid component labelling on large sparse occupancy grids
    (block detection over big worksheets)
  * SCC + single-edge-removal sweeps over many small digraphs
    (the smell detectors' exhaustive regime)

Run:  python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

from cellflow import _kernels_py as pure

try:
    from cellflow import _kernels as native
except ImportError:
    native = None

STRIDE = 16386


def make_grid_keys(rows: int, cols: int, density: float, seed: int) -> list[int]:
    rng = random.Random(seed)
    keys = [
        (r + 1) * STRIDE + (c + 1)
        for r in range(rows)
        for c in range(cols)
        if rng.random() < density
    ]
    return keys


def make_digraphs(count: int, n: int, seed: int) -> list[tuple[list[int], list[int]]]:
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        tails, heads = [], []
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < 0.35:
                    tails.append(u)
                    heads.append(v)
        graphs.append((tails, heads))
    return graphs


def timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def bench_grid(backend, keys):
    return timed(lambda: backend.grid_component_labels(keys, STRIDE))


def bench_digraphs(backend, graphs, n):
    def run():
        for tails, heads in graphs:
            backend.scc_labels(n, tails, heads)
            if backend.has_cycle(n, tails, heads):
                backend.removal_fix_mask(n, tails, heads)

    return timed(run)


def main():
    print(f"{'workload':<44} {'pure':>10} {'native':>10} {'speedup':>9}")

    for rows, cols, density in ((600, 200, 0.4), (1500, 400, 0.35)):
        keys = make_grid_keys(rows, cols, density, seed=7)
        label = f"grid labels {rows}x{cols} ({len(keys)} cells)"
        t_pure = bench_grid(pure, keys)
        if native is not None:
            t_native = bench_grid(native, keys)
            print(f"{label:<44} {t_pure:>9.3f}s {t_native:>9.3f}s {t_pure / t_native:>8.1f}x")
        else:
            print(f"{label:<44} {t_pure:>9.3f}s {'n/a':>10}")

    for count, n in ((20000, 5), (5000, 8)):
        graphs = make_digraphs(count, n, seed=11)
        label = f"scc+removal sweep: {count} digraphs, n={n}"
        t_pure = bench_digraphs(pure, graphs, n)
        if native is not None:
            t_native = bench_digraphs(native, graphs, n)
            print(f"{label:<44} {t_pure:>9.3f}s {t_native:>9.3f}s {t_pure / t_native:>8.1f}x")
        else:
            print(f"{label:<44} {t_pure:>9.3f}s {'n/a':>10}")

    if native is None:
        print("\ncompiled extension not built; only the fallback was measured")


if __name__ == "__main__":
    main()
