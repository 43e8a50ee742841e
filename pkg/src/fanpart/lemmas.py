"""Executable constructive transformations and the end-to-end pipeline:
universal-fan contraction, pendant extension of product embeddings, apex
absorption, path-partition powers, weighted tree deletions, the
star-decomposition lift, and the minor-free pipeline with its flexibility
sweep.

All transformations are pure; outputs are re-validated before they are
returned, so an internal mistake surfaces as an exception rather than a
wrong certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import graphs
from .errors import (
    BoundExceededError,
    InvalidDecompositionError,
    InvalidPartitionError,
)
from .partitions import FanPartition, check_fan_partition, check_path_partition, width
from .treedecomp import (
    TreeDecomposition,
    WeightedTree,
    adhesion,
    torso,
    split_to_stars,
    validate,
    validate_star,
)


# ---------------------------------------------------------------------------
# Bound functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleBounds:
    """The symbolic bound pair (f, g) a flexible-fan oracle declares:

        f(n) = c1 * n * log2(n+1) + c2 * n
        g(n) = c3 * log2(n+1)**3  + c4

    Coefficients are rationals; evaluation stays exact (Fraction) whenever
    the log coefficient is zero, which holds for every oracle shipped here.
    f is superadditive and g is increasing for non-negative coefficients;
    g(1) >= 1 is required.
    """

    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(1)
    c3: Fraction = Fraction(0)
    c4: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c1 < 0 or self.c2 < 0 or self.c3 < 0:
            raise ValueError("coefficients must be >= 0")
        if self.c1 + self.c2 <= 0:
            raise ValueError("f must have strictly positive outputs")
        if self.g(1) < 1:
            raise ValueError("need g(1) >= 1")

    def f(self, n):
        val = self.c2 * n
        if self.c1:
            val = self.c1 * n * math.log2(n + 1) + val
        return val

    def g(self, n):
        val = self.c4
        if self.c3:
            val = self.c3 * math.log2(n + 1) ** 3 + val
        return val


def pipeline_bounds(bounds, n, k, a, d):
    """The central-size and path-width bounds the pipeline certifies at
    flexibility d: ((f(kn) + (2a+k)n) / d, 2d * g(kn))."""
    return (bounds.f(k * n) + (2 * a + k) * n) / d, 2 * d * bounds.g(k * n)


# ---------------------------------------------------------------------------
# Product embeddings (row-treewidth certificates)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductEmbedding:
    """Certificate that a graph sits inside host ⊠ P_path_len.

    coords[v] = (host node, path position) for each vertex v of the
    certified graph; host_td witnesses the row-treewidth bound.
    """

    host: graphs.Graph
    host_td: TreeDecomposition
    path_len: int
    coords: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple((int(h), int(p)) for h, p in self.coords)
        )

    @property
    def n(self):
        return len(self.coords)

    def width(self):
        return self.host_td.width()


def validate_product_embedding(g, pe):
    """Check pe against g; returns (ok, first violation)."""
    if pe.n != g.n:
        return False, f"certificate covers {pe.n} vertices, graph has {g.n}"
    if pe.path_len < 1 and g.n > 0:
        return False, "path length must be >= 1"
    seen = set()
    for v, (h, p) in enumerate(pe.coords):
        if not (0 <= h < pe.host.n):
            return False, f"vertex {v}: host node {h} out of range"
        if not (0 <= p < pe.path_len):
            return False, f"vertex {v}: path position {p} out of range"
        if (h, p) in seen:
            return False, f"coordinates {(h, p)} used twice"
        seen.add((h, p))
    for u, v in g.edges():
        hu, pu = pe.coords[u]
        hv, pv = pe.coords[v]
        if abs(pu - pv) > 1:
            return False, f"edge ({u},{v}) spans path distance {abs(pu - pv)}"
        if hu != hv and not pe.host.has_edge(hu, hv):
            return False, f"edge ({u},{v}) not adjacent-or-equal in the host"
    ok, why = validate(pe.host, pe.host_td)
    if not ok:
        return False, f"host decomposition invalid: {why}"
    return True, None


def extend_pendants(pe, pendant_edges):
    """Extend a certificate of G - Z to one of G, where Z are pendant
    (degree-1) vertices.

    pendant_edges lists (z, anchor) pairs: the z ids must be exactly the
    contiguous range following the certified vertices, each appearing once,
    and every anchor must be a certified vertex.  Each pendant is hung off
    the host at a new degree-1 host node placed next to its anchor's node,
    at the anchor's path position; the host decomposition gains one bag per
    pendant, so its width becomes at most max(old width, 1).
    """
    n0 = len(pe.coords)
    if not pendant_edges:
        return pe
    zs = [z for z, _ in pendant_edges]
    if sorted(zs) != list(range(n0, n0 + len(zs))):
        raise ValueError("pendant ids must be the contiguous range after the base, each exactly once")
    host_n = pe.host.n
    edges = list(pe.host.edges())
    coords = list(pe.coords)
    parent = list(pe.host_td.parent)
    bags = list(pe.host_td.bags)
    apex = list(pe.host_td.apex)
    new_coord = {}
    for j, (z, anchor) in enumerate(sorted(pendant_edges)):
        if not (0 <= anchor < n0):
            raise ValueError(f"anchor {anchor} is not a certified vertex")
        h, p = pe.coords[anchor]
        node = host_n + j
        edges.append((h, node))
        new_coord[z] = (node, p)
        hang = min(t for t, b in enumerate(bags) if h in b)
        parent.append(hang)
        bags.append(frozenset({h, node}))
        apex.append(frozenset())
    coords += [new_coord[z] for z in range(n0, n0 + len(zs))]
    host = graphs.Graph(host_n + len(zs), edges)
    host_td = TreeDecomposition(tuple(parent), tuple(bags), tuple(apex))
    return ProductEmbedding(host, host_td, pe.path_len, tuple(coords))


# ---------------------------------------------------------------------------
# Apex absorption and path-partition powers
# ---------------------------------------------------------------------------

def absorb_apices(g, apices, fp):
    """Fold apex vertices into the central part.

    fp must be a valid fan-partition of g - apices in that subgraph's dense
    labelling (vertices of g minus the apices, sorted ascending).  Returns
    the corresponding fan-partition of g with central grown by the apices;
    path parts are untouched, which stays valid because edges at the
    central part are unconstrained.
    """
    apices = frozenset(apices)
    for v in apices:
        if not (0 <= v < g.n):
            raise ValueError(f"apex {v} out of range")
    sub, vmap = graphs.induced_subgraph(g, set(range(g.n)) - apices)
    if fp.n != sub.n:
        raise InvalidPartitionError(
            f"partition is over {fp.n} vertices, g minus apices has {sub.n}"
        )
    check_fan_partition(sub, fp)
    central = apices | frozenset(vmap[i] for i in fp.central)
    parts = tuple(frozenset(vmap[i] for i in p) for p in fp.path_parts)
    out = FanPartition(g.n, central, parts)
    check_fan_partition(g, out)
    return out


def _group_runs(parts, d):
    """Union every run of d consecutive parts; ceil(m/d) groups."""
    m = len(parts)
    groups = []
    for i in range(0, m, d):
        acc = frozenset()
        for p in parts[i : i + d]:
            acc |= p
        groups.append(acc)
    return groups


def power_path_partition(g, parts, d):
    """Turn a path-partition of g into one of graph_power(g, d) by grouping
    each run of d consecutive parts.  Output has exactly ceil(m/d) parts and
    width at most d times the input width."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if not check_path_partition(g, parts):
        raise InvalidPartitionError("input is not a path-partition of g")
    return _group_runs([frozenset(p) for p in parts], d)


# ---------------------------------------------------------------------------
# Weighted tree deletions
# ---------------------------------------------------------------------------

def tree_deletion_set(wt, q, budget=None):
    """A set Z of at most q tree nodes such that every component of T - Z
    has weight at most budget/(q+1).

    Greedy: walk nodes deepest-first (lowest index on ties); whenever the
    residual weight of a node's subtree (ignoring already-cut subtrees)
    exceeds the threshold, cut that node.  budget defaults to the total
    weight and must be at least the total weight.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    total = wt.total()
    if budget is None:
        budget = total
    budget = Fraction(budget) if not isinstance(budget, float) else budget
    if total > budget:
        raise ValueError(f"total weight {total} exceeds budget {budget}")
    threshold = budget / (q + 1)
    n = wt.size
    depth = [0] * n
    for t in range(n):
        cur, dep = t, 0
        while wt.parent[cur] != -1:
            cur = wt.parent[cur]
            dep += 1
        depth[t] = dep
    order = sorted(range(n), key=lambda t: (-depth[t], t))
    kids = [[] for _ in range(n)]
    for t, p in enumerate(wt.parent):
        if p != -1:
            kids[p].append(t)
    residual = [Fraction(0)] * n
    z = set()
    for t in order:
        r = wt.weight[t] + sum((residual[c] for c in kids[t]), Fraction(0))
        if r > threshold:
            z.add(t)
            residual[t] = Fraction(0)
        else:
            residual[t] = r
    # Both lemma guarantees must hold; a violation is a bug.
    if len(z) > q:
        raise AssertionError(f"greedy used {len(z)} > q = {q} deletions")
    comp_weight = {}
    for t in range(n):
        if t in z:
            continue
        cur = t
        while wt.parent[cur] != -1 and wt.parent[cur] not in z:
            cur = wt.parent[cur]
        comp_weight[cur] = comp_weight.get(cur, Fraction(0)) + wt.weight[t]
    for root, wsum in comp_weight.items():
        if wsum > threshold:
            raise AssertionError(
                f"component at {root} has weight {wsum} > threshold {threshold}"
            )
    return frozenset(z)


# ---------------------------------------------------------------------------
# Universal-fan contraction
# ---------------------------------------------------------------------------

def contract_to_universal_fan(fp, w):
    """Coarsen a fan-partition of overall width <= w so the underlying fan
    has at most max(1, floor(4n/w)) vertices, still at width <= w.

    Repeatedly: drop empty path parts, merge disjoint adjacent pairs of
    path parts that both have size <= w/2 (left-to-right passes until no
    change), and absorb the leftmost small path part into the centre while
    the centre is small.  Contracting parts that are adjacent in the fan
    (the centre is adjacent to every part) keeps the quotient a subgraph of
    a fan, so validity is preserved unconditionally.
    """
    if width(fp.parts) > w:
        raise InvalidPartitionError(f"partition width {width(fp.parts)} exceeds w = {w}")
    central = fp.central
    parts = [p for p in fp.path_parts if p]

    def small(part):
        return 2 * len(part) <= w

    changed = True
    while changed:
        changed = False
        merged = []
        i = 0
        while i < len(parts):
            if i + 1 < len(parts) and small(parts[i]) and small(parts[i + 1]):
                merged.append(parts[i] | parts[i + 1])
                i += 2
                changed = True
            else:
                merged.append(parts[i])
                i += 1
        parts = merged
        if not changed and small(central):
            for j, p in enumerate(parts):
                if small(p):
                    central = central | p
                    parts.pop(j)
                    changed = True
                    break
    return FanPartition(fp.n, central, tuple(parts))


# ---------------------------------------------------------------------------
# Auxiliary graphs and the star-decomposition lift
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AuxiliaryGraph:
    """Torso of the star centre plus one degree-1 vertex v_x for each leaf
    vertex v and each adhesion vertex x of v's leaf.

    Base vertices are the sorted centre bag (base_ids[i] is the original id
    of auxiliary vertex i); pendant ids are the remaining suffix.
    """

    graph: graphs.Graph
    base_ids: tuple
    pendants: tuple  # (original leaf vertex, adhesion vertex, pendant id)

    def pendant_groups(self):
        """Map original leaf vertex v -> tuple of its pendant ids (M_v)."""
        groups = {}
        for v, _x, pid in self.pendants:
            groups.setdefault(v, []).append(pid)
        return {v: tuple(ids) for v, ids in groups.items()}


def build_auxiliary(g, sd):
    """Build the auxiliary graph of a star decomposition of g."""
    ok, why = validate_star(g, sd)
    if not ok:
        raise InvalidDecompositionError(why)
    td = sd.to_treedecomp()
    base, base_ids = torso(g, td, 0)
    inv = {v: i for i, v in enumerate(base_ids)}
    edges = list(base.edges())
    pendants = []
    nxt = base.n
    for leaf in sd.leaf_bags:
        ks = sorted(leaf & sd.centre_bag)
        for v in sorted(leaf - sd.centre_bag):
            for x in ks:
                edges.append((inv[x], nxt))
                pendants.append((v, x, nxt))
                nxt += 1
    aux = AuxiliaryGraph(graphs.Graph(nxt, edges), base_ids, tuple(pendants))
    k = max((len(leaf & sd.centre_bag) for leaf in sd.leaf_bags), default=0)
    outside = g.n - len(base_ids)
    if aux.graph.n > len(base_ids) + k * outside:
        raise AssertionError("auxiliary graph larger than |B_r| + k|V - B_r|")
    return aux


def lift_star_decomposition(g, sd, oracle, d, apices=()):
    """Lift an oracle fan-partition of the auxiliary graph to (X', parts):
    a vertex set X' and an ordered path-partition of g - X'.

    apices (a subset of the centre bag) are stripped before the oracle runs
    and are always part of X'.  The returned parts have width at most
    max(2 * oracle path width, largest leaf residual); |X'| never exceeds
    the size of the oracle's central part plus the apex count.
    """
    aux = build_auxiliary(g, sd)
    gp = aux.graph
    nb = len(aux.base_ids)
    inv = {v: i for i, v in enumerate(aux.base_ids)}
    apices = frozenset(apices)
    if not apices <= sd.centre_bag:
        raise ValueError("apices must lie in the centre bag")
    a_local = frozenset(inv[v] for v in apices)

    # direct decomposition of the auxiliary graph: the whole base as one
    # bag, one {x, pendant} bag per pendant
    parent = [-1] + [0] * len(aux.pendants)
    bags = [frozenset(range(nb))]
    bags += [frozenset({inv[x], pid}) for _v, x, pid in aux.pendants]
    hint = TreeDecomposition(tuple(parent), tuple(bags))

    if a_local:
        gsub, submap = graphs.induced_subgraph(gp, set(range(gp.n)) - a_local)
        subinv = {v: i for i, v in enumerate(submap)}
        hint = TreeDecomposition(
            hint.parent,
            tuple(frozenset(subinv[v] for v in b if v in subinv) for b in hint.bags),
        )
    else:
        gsub, submap = gp, tuple(range(gp.n))

    res = oracle.partition(gsub, d, td=hint)
    x_aux = set(a_local) | {submap[v] for v in res.fan_partition.central}
    parts0 = [frozenset(submap[v] for v in p) for p in res.fan_partition.path_parts]
    oracle_width = width(parts0)
    squared = _group_runs(parts0, 2)

    x1 = {aux.base_ids[i] for i in x_aux if i < nb}
    groups = aux.pendant_groups()
    x2 = {v for v, pids in groups.items() if any(p in x_aux for p in pids)}
    x_prime = frozenset(x1 | x2)

    pid_of = {(v, x): pid for v, x, pid in aux.pendants}
    anchor_of_pid = {}
    trailing = []
    residual_cap = 0
    for leaf in sd.leaf_bags:
        ks = sorted(leaf & sd.centre_bag)
        residual = leaf - sd.centre_bag
        residual_cap = max(residual_cap, len(residual))
        free = [x for x in ks if inv[x] not in x_aux]
        if not free:
            trailing.append(frozenset(residual - x_prime))
        else:
            xs = free[0]
            for v in sorted(residual):
                if v not in x_prime:
                    anchor_of_pid[pid_of[(v, xs)]] = v

    out = []
    for p in squared:
        part = {aux.base_ids[i] for i in p if i < nb}
        part |= {anchor_of_pid[i] for i in p if i in anchor_of_pid}
        out.append(frozenset(part))
    out.extend(trailing)

    if len(x_prime) > len(x_aux):
        raise AssertionError("|X'| exceeded the auxiliary central size")
    fp = FanPartition(g.n, x_prime, tuple(out))
    report = check_fan_partition(g, fp)
    cap = max(2 * oracle_width, residual_cap)
    if report.path_width > cap:
        raise AssertionError(f"lifted width {report.path_width} exceeds {cap}")
    return x_prime, tuple(out)


# ---------------------------------------------------------------------------
# The minor-free pipeline and its flexibility sweep
# ---------------------------------------------------------------------------

def minor_free_pipeline(g, td, oracle, k=None, a=None, d=1, enforce_bounds=True):
    """Fan-partition g from an adhesion-bounded, apex-annotated
    tree-decomposition, at flexibility d.

    Cuts the decomposition tree so every piece introduces at most d
    vertices, deletes the adhesion sets of the cut nodes, star-decomposes
    each chunk, strips its apices, lifts an oracle fan-partition of its
    auxiliary graph, and reassembles: central part = deleted adhesions +
    all chunk centrals + apices; path parts = chunk partitions concatenated
    (inter-chunk edges always land in the central part).

    With (f, g) the oracle's declared bounds, the output satisfies
    central <= (f(kn) + (2a+k)n)/d and path width <= 2d*g(kn); violations
    raise BoundExceededError when enforce_bounds is set.
    """
    ok, why = validate(g, td)
    if not ok:
        raise InvalidDecompositionError(why)
    if d < 1:
        raise ValueError("d must be >= 1")
    n = g.n
    adh = adhesion(td)
    if k is None:
        k = max(1, adh)
    if k < 1:
        raise ValueError("k must be >= 1")
    if adh > k:
        raise BoundExceededError("adhesion", adh, k)
    amax = max((len(ap) for ap in td.apex), default=0)
    if a is None:
        a = amax
    if amax > a:
        raise BoundExceededError("apex-size", amax, a)

    if n == 0:
        return FanPartition(0)
    if d > n:
        # a single path part of size n <= d with empty central part
        fp = FanPartition(n, frozenset(), (frozenset(range(n)),))
    else:
        ksets = [td.adhesion_set(t) for t in range(td.size)]
        weights = [len(td.bags[t] - ksets[t]) for t in range(td.size)]
        if sum(weights) != n:
            raise AssertionError("bag-introduction weights do not sum to n")
        q = math.ceil(Fraction(n) / d if not isinstance(d, float) else n / d) - 1
        z = tree_deletion_set(WeightedTree(td.parent, weights), q, budget=n)
        z_nodes = sorted(set(z) | {td.root})
        deleted = set()
        for t in z_nodes:
            if t != td.root:
                deleted |= ksets[t]
        central = set(deleted)
        parts = []
        for (sub, sd, vmap), t in zip(split_to_stars(g, td, z_nodes), z_nodes):
            inv = {v: i for i, v in enumerate(vmap)}
            a_local = frozenset(inv[v] for v in td.apex[t] if v in inv)
            xz, pz = lift_star_decomposition(sub, sd, oracle, d, apices=a_local)
            central |= {vmap[i] for i in xz}
            parts += [frozenset(vmap[i] for i in p) for p in pz]
        fp = FanPartition(n, frozenset(central), tuple(parts))

    if enforce_bounds:
        kb, wb = pipeline_bounds(oracle.bounds, n, k, a, d)
        check_fan_partition(g, fp, kb, wb)
    else:
        check_fan_partition(g, fp)
    return fp


def canonical_flexibility(n):
    """The headline trade-off point sqrt(n)/log2(n+1), clamped to >= 1."""
    return max(1.0, math.sqrt(n) / math.log2(n + 1))


@dataclass(frozen=True)
class SweepRow:
    d: object
    n: int
    central_size: int
    bound_k: object
    path_width: int
    bound_w: object
    passed: bool


def sweep_flexibility(g, td, oracle, k=None, a=None, d_values=None):
    """Run the pipeline for each d and report measured sizes against the
    certified bounds.  Always includes the canonical d = sqrt(n)/log2(n+1)
    row at the end (clamped to 1 from below).  Returns a list of SweepRow.
    """
    n = g.n
    if d_values is None:
        d_values = []
        step = 1
        while step <= max(1, n):
            d_values.append(step)
            step *= 2
    ds = list(d_values) + [canonical_flexibility(n)]
    adh = adhesion(td)
    k_eff = max(1, adh) if k is None else k
    a_eff = max((len(ap) for ap in td.apex), default=0) if a is None else a
    rows = []
    for d in ds:
        kb, wb = pipeline_bounds(oracle.bounds, n, k_eff, a_eff, d)
        fp = minor_free_pipeline(g, td, oracle, k=k_eff, a=a_eff, d=d, enforce_bounds=False)
        report = check_fan_partition(g, fp)
        passed = report.central_size <= kb and report.path_width <= wb
        rows.append(
            SweepRow(d, n, report.central_size, kb, report.path_width, wb, passed)
        )
    return rows


def sweep_to_csv(rows):
    """Serialize sweep rows to the sweep.v1 CSV format."""
    def num(x):
        if isinstance(x, Fraction):
            return str(x) if x.denominator != 1 else str(x.numerator)
        if isinstance(x, float):
            return f"{x:.6g}"
        return str(x)

    lines = ["d,n,central_size,bound_k,path_width,bound_w,pass"]
    for r in rows:
        lines.append(
            ",".join(
                [
                    num(r.d),
                    str(r.n),
                    str(r.central_size),
                    num(r.bound_k),
                    str(r.path_width),
                    num(r.bound_w),
                    "true" if r.passed else "false",
                ]
            )
        )
    return "\n".join(lines) + "\n"
