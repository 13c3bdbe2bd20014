"""Pure-Python kernels: the fallback backend for cellflow.kernels.

Same contracts as the compiled _kernels extension; see that module's
source for the algorithm notes. These run one to two orders of magnitude
slower on large inputs (benchmarks/bench_kernels.py quantifies).
"""

from __future__ import annotations

from typing import Sequence

BACKEND_NAME = "pure-python"


def grid_component_labels(keys: Sequence[int], stride: int) -> list[int]:
    """8-connected component labels for occupied grid cells.

    `keys` must be sorted ascending, each key = row * stride + col with
    1 <= col < stride - 1. Labels are canonical: numbered by first
    occurrence in key order (i.e. by topmost-leftmost member).
    """
    n = len(keys)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    index = {key: i for i, key in enumerate(keys)}
    # backward neighbours: west, north-east, north, north-west
    offsets = (1, stride - 1, stride, stride + 1)
    for i, key in enumerate(keys):
        for off in offsets:
            j = index.get(key - off)
            if j is not None:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    labels = [-1] * n
    remap: dict[int, int] = {}
    for i in range(n):
        root = find(i)
        if root not in remap:
            remap[root] = len(remap)
        labels[i] = remap[root]
    return labels


def scc_labels(n: int, tails: Sequence[int], heads: Sequence[int]) -> list[int]:
    """Strongly connected component labels (iterative Tarjan).

    Components are renumbered by first occurrence scanning nodes 0..n-1,
    so output is canonical for a given (n, edge list).
    """
    adj_start, adj = _adjacency(n, tails, heads)

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0

    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for k in range(adj_start[v] + ei, adj_start[v + 1]):
                w = adj[k]
                ei += 1
                if index[w] == -1:
                    work[-1] = (v, ei)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = v  # temporary: root marker
                    if w == v:
                        break
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])

    remap: dict[int, int] = {}
    out = [0] * n
    for v in range(n):
        root = comp[v]
        if root not in remap:
            remap[root] = len(remap)
        out[v] = remap[root]
    return out


def has_cycle(n: int, tails: Sequence[int], heads: Sequence[int]) -> bool:
    """True when the digraph has any directed cycle (self-loops count)."""
    return _has_cycle_skipping(n, tails, heads, -1)


def removal_fix_mask(n: int, tails: Sequence[int], heads: Sequence[int]) -> list[int]:
    """mask[e] = 1 iff the graph minus edge e is acyclic."""
    return [0 if _has_cycle_skipping(n, tails, heads, e) else 1 for e in range(len(tails))]


def _has_cycle_skipping(n: int, tails: Sequence[int], heads: Sequence[int], skip: int) -> bool:
    successors: list[list[int]] = [[] for _ in range(n)]
    indegree = [0] * n
    for e, (t, h) in enumerate(zip(tails, heads)):
        if e != skip:
            successors[t].append(h)
            indegree[h] += 1
    queue = [v for v in range(n) if indegree[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for h in successors[v]:
            indegree[h] -= 1
            if indegree[h] == 0:
                queue.append(h)
    return seen != n


def _adjacency(n: int, tails: Sequence[int], heads: Sequence[int]) -> tuple[list[int], list[int]]:
    counts = [0] * (n + 1)
    for t in tails:
        counts[t + 1] += 1
    for i in range(n):
        counts[i + 1] += counts[i]
    adj = [0] * len(tails)
    fill = counts[:]
    for t, h in zip(tails, heads):
        adj[fill[t]] = h
        fill[t] += 1
    return counts, adj
