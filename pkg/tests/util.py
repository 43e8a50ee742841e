"""Shared test helpers: independent oracles and fixture generators.

Everything here is deliberately written from the definitions (enumeration,
Floyd-Warshall, subset recursion) rather than calling back into the code
paths under test.
"""

import random
from itertools import combinations, permutations

from fanpart import Graph, FanPartition

INF = float("inf")


def floyd_warshall(g):
    """All-pairs distances, independent of the library's BFS."""
    n = g.n
    dist = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in g.edges():
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def neighbor_masks(g):
    nbr = [0] * g.n
    for u, v in g.edges():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    return nbr


def popcount(x):
    return bin(x).count("1")


def path_parts_oracle(g, central_mask, w):
    """Parts (as bitmasks, in order) of a minimum-length path-partition of
    g - central with parts of size <= w, or None.  Subset recursion from
    the definition."""
    full = (1 << g.n) - 1
    rest = full & ~central_mask
    nbr = neighbor_masks(g)
    memo = {}

    def solve(placed, last):
        if placed == rest:
            return ()
        key = (placed, last)
        if key in memo:
            return memo[key]
        free = rest & ~placed
        forced = 0
        m = last
        while m:
            b = m & -m
            forced |= nbr[b.bit_length() - 1]
            m ^= b
        forced &= free
        best = None
        if popcount(forced) <= w:
            sub = free
            while True:
                if sub and (forced & ~sub) == 0 and popcount(sub) <= w:
                    tail = solve(placed | sub, sub)
                    if tail is not None and (best is None or 1 + len(tail) < len(best)):
                        best = (sub,) + tail
                if sub == 0:
                    break
                sub = (sub - 1) & free
        memo[key] = best
        return best

    return solve(0, 0)


def fan_partition_witness(g, m, w):
    """A fan-partition of g into at most 1 central + (m-1) ordered path
    parts, every part of size <= w; None if none exists.  Exhaustive."""
    n = g.n
    for central in range(1 << n):
        if popcount(central) > w:
            continue
        parts = path_parts_oracle(g, central, w)
        if parts is not None and len(parts) <= m - 1:
            return FanPartition(
                n,
                frozenset(i for i in range(n) if central >> i & 1),
                tuple(
                    frozenset(i for i in range(n) if p >> i & 1) for p in parts
                ),
            )
    return None


def graphs_up_to_iso(n):
    """All graphs on n vertices up to isomorphism (numpy-accelerated
    canonical forms; fine for n <= 6)."""
    import numpy as np

    if n == 0:
        return [Graph(0)]
    pairs = list(combinations(range(n), 2))
    e = len(pairs)
    pair_idx = {p: i for i, p in enumerate(pairs)}
    weights = np.left_shift(np.int64(1), np.arange(e, dtype=np.int64))
    masks = np.arange(1 << e, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(e)) & 1
    canon = masks.copy()
    for perm in permutations(range(n)):
        pm = np.array(
            [pair_idx[tuple(sorted((perm[u], perm[v])))] for u, v in pairs],
            dtype=np.int64,
        )
        vals = (bits * weights[pm]).sum(axis=1)
        np.minimum(canon, vals, out=canon)
    reps = sorted(set(int(v) for v in canon))
    out = []
    for mask in reps:
        out.append(Graph(n, [pairs[i] for i in range(e) if mask >> i & 1]))
    return out


def is_connected(g):
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_tree_parents(rng, n):
    """Random rooted tree as a parent array (node 0 is the root)."""
    parent = [-1] + [rng.randrange(i) for i in range(1, n)]
    return tuple(parent)


def random_path_partitioned_graph(rng, n, w):
    """A graph together with a valid path-partition of width <= w: vertices
    are dealt into ordered parts of size <= w, and edges are drawn only
    inside parts or between consecutive parts."""
    parts = []
    verts = list(range(n))
    i = 0
    while i < n:
        size = rng.randint(1, w)
        parts.append(frozenset(verts[i : i + size]))
        i += size
    edges = []
    for pi, part in enumerate(parts):
        pool = sorted(part)
        nxt = sorted(parts[pi + 1]) if pi + 1 < len(parts) else []
        for a_i, u in enumerate(pool):
            for v in pool[a_i + 1 :]:
                if rng.random() < 0.5:
                    edges.append((u, v))
            for v in nxt:
                if rng.random() < 0.4:
                    edges.append((u, v))
    return Graph(n, edges), parts
