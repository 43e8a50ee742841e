"""Simple undirected graphs on dense integer vertices, named families,
graph power / quotient / strong product / blowup, and small exhaustive
subgraph and minor oracles.

Vertices are always 0..n-1.  Graphs are immutable after construction and
every operation here is a pure function, so concurrent use is safe.
"""

from __future__ import annotations

import random
from collections import deque

from .errors import InvalidPartitionError, TooLargeError

# Exhaustive-search guards: these routines exist as ground-truth oracles
# for tests, not as scalable algorithms.
MAX_PATTERN = 8
MAX_HOST = 10


class Graph:
    """Immutable simple undirected graph.

    adj[v] is the sorted tuple of neighbours of v; no loops, no parallel
    edges, adjacency is symmetric.
    """

    __slots__ = ("n", "adj", "_sets")

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._sets = tuple(frozenset(s) for s in nbrs)

    def has_edge(self, u, v):
        return v in self._sets[u]

    def neighbors(self, v):
        return self._sets[v]

    def degree(self, v):
        return len(self.adj[v])

    @property
    def m(self):
        return sum(len(a) for a in self.adj) // 2

    def edges(self):
        """Sorted list of (u, v) pairs with u < v."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def vertices(self):
        return range(self.n)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def make_path(m):
    """Path P_m on m vertices (m >= 1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def make_cycle(m):
    """Cycle C_m on m vertices (m >= 3)."""
    if m < 3:
        raise ValueError("m must be >= 3")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def make_complete(m):
    """Complete graph K_m (m >= 1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Graph(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def make_star(m):
    """Star on m vertices: vertex 0 adjacent to all others."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Graph(m, [(0, i) for i in range(1, m)])


def make_fan(m):
    """Fan on m vertices: vertex 0 is the centre, 1..m-1 form a path.

    make_fan(1) is a single vertex, make_fan(2) a single edge.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    edges = [(0, i) for i in range(1, m)]
    edges += [(i, i + 1) for i in range(1, m - 1)]
    return Graph(m, edges)


def make_grid(rows, cols):
    """rows x cols grid; vertex (r, c) has index r*cols + c."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def make_ktree(m, k, seed=0):
    """Random k-tree on m vertices via iterative simplicial additions.

    Returns (graph, parent, bags): parent/bags describe the natural
    tree-decomposition of width k that the construction records (one bag
    per node, bag 0 is the initial (k+1)-clique, root has parent -1).
    Requires k < m.
    """
    if not (1 <= k < m):
        raise ValueError("need 1 <= k < m")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    bags = [frozenset(range(k + 1))]
    parent = [-1]
    for v in range(k + 1, m):
        host = rng.randrange(len(bags))
        clique = rng.sample(sorted(bags[host]), k)
        edges += [(u, v) for u in clique]
        bags.append(frozenset(clique) | {v})
        parent.append(host)
    return Graph(m, edges), parent, bags


# ---------------------------------------------------------------------------
# Power, quotient, products
# ---------------------------------------------------------------------------

def graph_power(g, d):
    """d-th power of g: edges between vertices at distance 1..d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    edges = []
    for s in range(g.n):
        # BFS truncated at depth d
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            if dist[u] == d:
                continue
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        edges += [(s, t) for t in dist if t > s]
    return Graph(g.n, edges)


def quotient(g, parts):
    """Quotient of g by an ordered partition.

    One vertex per part, in the given order; two parts are adjacent iff
    some edge of g joins them.  Empty parts are permitted and become
    isolated vertices.
    """
    part_of = [-1] * g.n
    for i, p in enumerate(parts):
        for v in p:
            if not (0 <= v < g.n):
                raise InvalidPartitionError(f"vertex {v} out of range")
            if part_of[v] != -1:
                raise InvalidPartitionError(f"vertex {v} in two parts")
            part_of[v] = i
    if any(i == -1 for i in part_of):
        missing = part_of.index(-1)
        raise InvalidPartitionError(f"vertex {missing} not covered")
    edges = set()
    for u, v in g.edges():
        pu, pv = part_of[u], part_of[v]
        if pu != pv:
            edges.add((min(pu, pv), max(pu, pv)))
    return Graph(len(list(parts)), sorted(edges))


def strong_product(g, h):
    """Strong product g ⊠ h; vertex (u, v) has index u*h.n + v."""
    n = g.n * h.n
    edges = []
    for u in range(g.n):
        for v in range(h.n):
            a = u * h.n + v
            for u2 in range(u, g.n):
                if u2 != u and not g.has_edge(u, u2):
                    continue
                for v2 in range(h.n):
                    b = u2 * h.n + v2
                    if b <= a:
                        continue
                    if (u2 == u or g.has_edge(u, u2)) and (v2 == v or h.has_edge(v, v2)):
                        edges.append((a, b))
    return Graph(n, edges)


def blowup(h, b):
    """b-blowup of h, i.e. h ⊠ K_b.  Vertex (x, j) has index x*b + j."""
    if b < 1:
        raise ValueError("b must be >= 1")
    return strong_product(h, make_complete(b))


def induced_subgraph(g, keep):
    """Induced subgraph on the vertex set `keep`, relabelled densely.

    Returns (graph, vmap) where vmap[i] is the original id of new vertex i
    (vmap is sorted ascending).
    """
    vmap = sorted(set(keep))
    idx = {v: i for i, v in enumerate(vmap)}
    for v in vmap:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range")
    edges = [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
    return Graph(len(vmap), edges), tuple(vmap)


def connected_components(g, within=None):
    """Connected components as sorted vertex lists, in discovery order
    (scanning start vertices ascending)."""
    if within is None:
        within = range(g.n)
    pool = set(within)
    comps = []
    for s in sorted(pool):
        if s not in pool:
            continue
        comp = {s}
        pool.discard(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in pool:
                    pool.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# Fan layout recognition
# ---------------------------------------------------------------------------

def is_subgraph_of_fan(g):
    """Witness that g is a subgraph of a fan, or None.

    Returns (centre, order): removing `centre` leaves a linear forest whose
    components are laid out end-to-end in `order`.  Components are ordered
    by smallest vertex, each oriented from its lower-indexed endpoint; the
    centre is the lowest-indexed vertex that works.
    """
    if g.n == 0:
        return None
    for c in range(g.n):
        rest = [v for v in range(g.n) if v != c]
        deg = {v: sum(1 for w in g.adj[v] if w != c) for v in rest}
        if any(d > 2 for d in deg.values()):
            continue
        comps = connected_components(g, within=rest)
        # linear forest: every component is a tree of max degree <= 2
        ok = True
        for comp in comps:
            inner_edges = sum(deg[v] for v in comp) // 2
            if inner_edges != len(comp) - 1:
                ok = False
                break
        if not ok:
            continue
        order = []
        for comp in comps:
            if len(comp) == 1:
                order.extend(comp)
                continue
            comp_set = set(comp)
            ends = [v for v in comp if deg[v] == 1]
            cur = min(ends)
            prev = c
            walk = [cur]
            while len(walk) < len(comp):
                nxt = next(w for w in g.adj[cur] if w != c and w != prev and w in comp_set)
                prev, cur = cur, nxt
                walk.append(cur)
            order.extend(walk)
        return c, order
    return None


# ---------------------------------------------------------------------------
# Exhaustive subgraph / minor oracles (size-guarded ground truth)
# ---------------------------------------------------------------------------

def contains_subgraph(g, host):
    """Injective adjacency-preserving map of g into host, or None.

    Exhaustive backtracking; guarded to g.n <= 8 and host.n <= 10.
    """
    if g.n > MAX_PATTERN or host.n > MAX_HOST:
        raise TooLargeError(f"guard: pattern n <= {MAX_PATTERN}, host n <= {MAX_HOST}")
    if g.n > host.n:
        return None
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    mapping = [-1] * g.n
    used = [False] * host.n

    def place(i):
        if i == len(order):
            return True
        v = order[i]
        mapped_nbrs = [(w, mapping[w]) for w in g.adj[v] if mapping[w] != -1]
        for cand in range(host.n):
            if used[cand] or host.degree(cand) < g.degree(v):
                continue
            if all(host.has_edge(cand, img) for _, img in mapped_nbrs):
                mapping[v] = cand
                used[cand] = True
                if place(i + 1):
                    return True
                mapping[v] = -1
                used[cand] = False
        return False

    if place(0):
        return tuple(mapping)
    return None


def has_minor(g, h):
    """Whether h is a minor of g, by exhaustive branch-set search.

    Guarded to g.n <= 10 (the searched graph) and h.n <= 8 (the pattern).
    """
    if g.n > MAX_HOST or h.n > MAX_PATTERN:
        raise TooLargeError(f"guard: searched n <= {MAX_HOST}, pattern n <= {MAX_PATTERN}")
    if h.n == 0:
        return True
    if h.n > g.n:
        return False
    nbr = [0] * g.n
    for u in range(g.n):
        for w in g.adj[u]:
            nbr[u] |= 1 << w
    full = (1 << g.n) - 1

    def connected_mask(mask):
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= nbr[b.bit_length() - 1]
                m ^= b
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    conn = [m for m in range(1, full + 1) if connected_mask(m)]
    nbr_of_mask = {}
    for m in conn:
        acc = 0
        mm = m
        while mm:
            b = mm & -mm
            acc |= nbr[b.bit_length() - 1]
            mm ^= b
        nbr_of_mask[m] = acc & ~m

    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    chosen = [0] * h.n

    def assign(i, used):
        if i == len(order):
            return True
        v = order[i]
        prior = [order[j] for j in range(i) if h.has_edge(order[j], order[i])]
        for m in conn:
            if m & used:
                continue
            if all(nbr_of_mask[m] & chosen[p] for p in prior):
                chosen[v] = m
                if assign(i + 1, used | m):
                    return True
                chosen[v] = 0
        return False

    return assign(0, 0)


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def write_edge_list(g):
    """Serialize: first line ``n m``, then one sorted ``u v`` line per edge."""
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(text):
    """Parse the edge-list format; rejects loops, duplicates and bad indices."""
    rows = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not rows:
        raise ValueError("empty edge-list input")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(rows) - 1}")
    seen = set()
    edges = []
    for ln in rows[1:]:
        fields = ln.split()
        if len(fields) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge ({u},{v})")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)
