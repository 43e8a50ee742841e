"""Tree-, path- and star-decompositions: validation, adhesion, torsos,
star splitting, weighted rooted trees, and exact width computations at
small scale (subset dynamic programs).

Decompositions are rooted from the start: the parent array has exactly one
-1 entry (the root).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import graphs
from .errors import InvalidDecompositionError, TooLargeError

MAX_EXACT = 12


def _check_tree(parent):
    """Validate a rooted-tree parent array; return the root index."""
    n = len(parent)
    if n == 0:
        raise InvalidDecompositionError("tree must have at least one node")
    roots = [i for i, p in enumerate(parent) if p == -1]
    if len(roots) != 1:
        raise InvalidDecompositionError(f"expected exactly one root, got {len(roots)}")
    for i, p in enumerate(parent):
        if p != -1 and not (0 <= p < n):
            raise InvalidDecompositionError(f"node {i}: parent {p} out of range")
    # every node must reach the root without cycling
    for i in range(n):
        seen = set()
        cur = i
        while cur != -1:
            if cur in seen:
                raise InvalidDecompositionError(f"parent cycle through node {cur}")
            seen.add(cur)
            cur = parent[cur]
    return roots[0]


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree (parent array, -1 marks the root), one bag per node, and
    an optional apex subset of each bag."""

    parent: tuple
    bags: tuple
    apex: tuple = ()

    def __post_init__(self):
        parent = tuple(self.parent)
        bags = tuple(frozenset(b) for b in self.bags)
        apex = tuple(frozenset(a) for a in self.apex) if self.apex else tuple(
            frozenset() for _ in bags
        )
        if len(bags) != len(parent) or len(apex) != len(parent):
            raise InvalidDecompositionError("parent/bags/apex lengths differ")
        root = _check_tree(parent)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "_root", root)

    @property
    def root(self):
        return self._root

    @property
    def size(self):
        return len(self.parent)

    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    def children(self):
        kids = [[] for _ in self.parent]
        for i, p in enumerate(self.parent):
            if p != -1:
                kids[p].append(i)
        return kids

    def adhesion_set(self, t):
        """Bag intersection with the parent bag; empty for the root."""
        if t == self.root:
            return frozenset()
        return self.bags[t] & self.bags[self.parent[t]]

    def to_json(self):
        return json.dumps(
            {
                "parent": list(self.parent),
                "bags": [sorted(b) for b in self.bags],
                "apex": [sorted(a) for a in self.apex],
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            parent = tuple(int(p) for p in data["parent"])
            bags = tuple(frozenset(b) for b in data["bags"])
        except KeyError as e:
            raise ValueError(f"treedecomp.v1: missing field {e}") from None
        apex = tuple(frozenset(a) for a in data.get("apex", []))
        return cls(parent, bags, apex)


def validate(g, td):
    """Check conditions (a) vertex traces are nonempty subtrees, (b) every
    edge is covered, and apex containment.  Returns (ok, first_violation)."""
    trace = [[] for _ in range(g.n)]
    for t, bag in enumerate(td.bags):
        for v in bag:
            if not (0 <= v < g.n):
                return False, f"bag {t} mentions unknown vertex {v}"
            trace[v].append(t)
    for t, a in enumerate(td.apex):
        if not a <= td.bags[t]:
            return False, f"apex set of node {t} not inside its bag"
    kids = td.children()
    for v in range(g.n):
        nodes = trace[v]
        if not nodes:
            return False, f"vertex {v} appears in no bag"
        node_set = set(nodes)
        # connectivity of the trace inside the tree
        stack = [nodes[0]]
        seen = {nodes[0]}
        while stack:
            t = stack.pop()
            nbrs = kids[t] + ([td.parent[t]] if td.parent[t] != -1 else [])
            for s in nbrs:
                if s in node_set and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != node_set:
            return False, f"trace of vertex {v} is not connected"
    bag_sets = td.bags
    for u, v in g.edges():
        if not any(u in b and v in b for b in bag_sets):
            return False, f"edge ({u},{v}) not covered by any bag"
    return True, None


def adhesion(td):
    """Maximum bag intersection over tree edges; 0 for a single node."""
    return max(
        (len(td.adhesion_set(t)) for t in range(td.size) if t != td.root),
        default=0,
    )


def torso(g, td, t):
    """Torso of g at node t: the bag subgraph plus a clique on each
    intersection with a neighbouring bag.  Vertices are relabelled by
    sorted order; returns (graph, vmap)."""
    if not (0 <= t < td.size):
        raise ValueError(f"unknown node {t}")
    bag = td.bags[t]
    vmap = tuple(sorted(bag))
    idx = {v: i for i, v in enumerate(vmap)}
    edges = {(idx[u], idx[v]) for u, v in g.edges() if u in bag and v in bag}
    nbrs = [s for s in range(td.size) if s != t and (td.parent[s] == t or td.parent[t] == s)]
    for s in nbrs:
        inter = sorted(bag & td.bags[s])
        for i, u in enumerate(inter):
            for v in inter[i + 1 :]:
                edges.add((idx[u], idx[v]))
    return graphs.Graph(len(vmap), sorted(edges)), vmap


@dataclass(frozen=True)
class StarDecomposition:
    """A tree-decomposition whose tree is a star: one centre bag plus leaf
    bags that interact only through the centre."""

    centre_bag: frozenset
    leaf_bags: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "centre_bag", frozenset(self.centre_bag))
        object.__setattr__(
            self, "leaf_bags", tuple(frozenset(b) for b in self.leaf_bags)
        )

    def to_treedecomp(self):
        parent = (-1,) + (0,) * len(self.leaf_bags)
        return TreeDecomposition(parent, (self.centre_bag, *self.leaf_bags))


def validate_star(g, sd):
    """Validate a star decomposition against g; returns (ok, violation)."""
    return validate(g, sd.to_treedecomp())


def split_to_stars(g, td, z_nodes):
    """Break (g, td) into per-chunk star decompositions at the nodes z_nodes.

    z_nodes must contain td.root.  All adhesion sets of the non-root chosen
    nodes are deleted from the graph; each chunk z then consists of the
    vertices introduced in z's piece of the cut forest.  Returns a list of
    (chunk graph, star decomposition, vmap) triples ordered by z, where
    vmap maps chunk-local vertex ids back to g's ids.  Chunk vertex sets
    partition V(g) minus the deleted adhesions.
    """
    ok, why = validate(g, td)
    if not ok:
        raise InvalidDecompositionError(why)
    zset = set(z_nodes)
    if td.root not in zset:
        raise InvalidDecompositionError("z_nodes must contain the root")
    deleted = set()
    for z in zset:
        if not (0 <= z < td.size):
            raise InvalidDecompositionError(f"unknown tree node {z}")
        if z != td.root:
            deleted |= td.adhesion_set(z)
    kids = td.children()
    out = []
    for z in sorted(zset):
        # nodes of the cut-forest component rooted at z
        comp_nodes = []
        stack = [z]
        while stack:
            t = stack.pop()
            comp_nodes.append(t)
            stack.extend(c for c in kids[t] if c not in zset)
        chunk_verts = set()
        for t in comp_nodes:
            chunk_verts |= td.bags[t]
        chunk_verts -= deleted
        sub, vmap = graphs.induced_subgraph(g, chunk_verts)
        inv = {v: i for i, v in enumerate(vmap)}
        centre = frozenset(inv[v] for v in td.bags[z] - deleted)
        leaves = []
        for c in sorted(kids[z]):
            if c in zset:
                continue
            q_nodes = [c]
            stack = [c]
            while stack:
                t = stack.pop()
                stack.extend(s for s in kids[t] if s not in zset)
                q_nodes.extend(s for s in kids[t] if s not in zset)
            q_verts = set()
            for t in set(q_nodes):
                q_verts |= td.bags[t]
            q_verts -= deleted
            leaves.append(frozenset(inv[v] for v in q_verts))
        sd = StarDecomposition(centre, tuple(leaves))
        ok, why = validate_star(sub, sd)
        if not ok:
            raise AssertionError(f"split_to_stars produced invalid star: {why}")
        out.append((sub, sd, vmap))
    return out


@dataclass(frozen=True)
class WeightedTree:
    """Rooted tree with a non-negative rational weight per node."""

    parent: tuple
    weight: tuple

    def __post_init__(self):
        parent = tuple(self.parent)
        weight = tuple(Fraction(w) for w in self.weight)
        if len(weight) != len(parent):
            raise ValueError("parent/weight lengths differ")
        root = _check_tree(parent)
        if any(w < 0 for w in weight):
            raise ValueError("weights must be >= 0")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "_root", root)

    @property
    def root(self):
        return self._root

    @property
    def size(self):
        return len(self.parent)

    def total(self):
        return sum(self.weight, Fraction(0))


# ---------------------------------------------------------------------------
# Exact widths (subset DP) and the min-fill heuristic
# ---------------------------------------------------------------------------

def _neighbor_masks(g):
    nbr = [0] * g.n
    for u in range(g.n):
        for v in g.adj[u]:
            nbr[u] |= 1 << v
    return nbr


def exact_pathwidth(g):
    """Exact pathwidth via the vertex-separation subset DP; n <= 12."""
    if g.n > MAX_EXACT:
        raise TooLargeError(f"guard: n <= {MAX_EXACT}")
    n = g.n
    if n == 0:
        return 0
    nbr = _neighbor_masks(g)
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    order = sorted(range(1, full + 1), key=lambda m: bin(m).count("1"))
    for mask in order:
        boundary = 0
        m = mask
        while m:
            b = m & -m
            if nbr[b.bit_length() - 1] & ~mask:
                boundary += 1
            m ^= b
        best = None
        m = mask
        while m:
            b = m & -m
            prev = dp[mask ^ b]
            if best is None or prev < best:
                best = prev
            m ^= b
        dp[mask] = max(boundary, best)
    return dp[full]


def exact_treewidth(g):
    """Exact treewidth via the elimination-order subset DP; n <= 12."""
    if g.n > MAX_EXACT:
        raise TooLargeError(f"guard: n <= {MAX_EXACT}")
    n = g.n
    if n == 0:
        return 0
    nbr = _neighbor_masks(g)
    full = (1 << n) - 1

    def updeg(through, v):
        # vertices outside `through`+v reachable from v via `through`
        seen = 1 << v
        frontier = 1 << v
        reached = 0
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= nbr[b.bit_length() - 1]
                m ^= b
            nxt &= ~seen
            seen |= nxt
            reached |= nxt & ~through
            frontier = nxt & through
        return bin(reached & ~(1 << v)).count("1")

    dp = [0] * (full + 1)
    order = sorted(range(1, full + 1), key=lambda m: bin(m).count("1"))
    for mask in order:
        best = None
        m = mask
        while m:
            b = m & -m
            v = b.bit_length() - 1
            rest = mask ^ b
            cand = max(dp[rest], updeg(rest, v))
            if best is None or cand < best:
                best = cand
            m ^= b
        dp[mask] = best
    return dp[full]


def heuristic_treedecomp(g):
    """Valid tree-decomposition from a min-fill elimination ordering.

    No width guarantee in general, but exact on chordal graphs (zero-fill
    vertices are simplicial), hence width 1 on trees and k on k-trees.
    Ties break on the lowest vertex index.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition((-1,), (frozenset(),))
    work = {v: set(g.adj[v]) for v in range(n)}
    elim_pos = {}
    bags = []
    for pos in range(n):
        best_v, best_fill = None, None
        for v in sorted(work):
            nbrs = sorted(work[v])
            fill = sum(
                1
                for i, a in enumerate(nbrs)
                for b in nbrs[i + 1 :]
                if b not in work[a]
            )
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
                if fill == 0:
                    break
        v = best_v
        bag = frozenset(work[v] | {v})
        bags.append(bag)
        elim_pos[v] = pos
        nbrs = sorted(work[v])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                work[a].add(b)
                work[b].add(a)
        for a in nbrs:
            work[a].discard(v)
        del work[v]
    parent = []
    for pos, bag in enumerate(bags):
        later = [elim_pos[u] for u in bag if elim_pos[u] > pos]
        if later:
            parent.append(min(later))
        elif pos + 1 < n:
            parent.append(pos + 1)
        else:
            parent.append(-1)
    td = TreeDecomposition(tuple(parent), tuple(bags))
    ok, why = validate(g, td)
    if not ok:
        raise AssertionError(f"min-fill produced invalid decomposition: {why}")
    return td
