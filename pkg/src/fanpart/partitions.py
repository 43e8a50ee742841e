"""Partition containers and validity checkers: path-partitions,
fan-partitions, (k,w)-fan-partitions, blowup-embedding conversion, and the
exhaustive minimum-fan-width oracle for tiny graphs.

A fan-partition always materializes its central part, possibly empty.  Path
parts carry the caller's order; checkers never search for an order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import graphs
from .errors import BoundExceededError, InvalidPartitionError, TooLargeError


def _normalize_parts(parts, n, what="partition"):
    """Validate that `parts` is an ordered partition of 0..n-1; return it as
    a tuple of frozensets (empty parts allowed)."""
    out = []
    seen = [False] * n
    for p in parts:
        fs = frozenset(p)
        for v in fs:
            if not (0 <= v < n):
                raise InvalidPartitionError(f"{what}: vertex {v} out of range")
            if seen[v]:
                raise InvalidPartitionError(f"{what}: vertex {v} in two parts")
            seen[v] = True
        out.append(fs)
    if not all(seen):
        missing = seen.index(False)
        raise InvalidPartitionError(f"{what}: vertex {missing} not covered")
    return tuple(out)


def width(parts):
    """Maximum part size; 0 for an empty collection."""
    return max((len(p) for p in parts), default=0)


def check_path_partition(g, parts):
    """True iff every edge of g stays within a part or joins consecutive
    parts of the given order.  Raises InvalidPartitionError if `parts` is
    not a partition of V(g)."""
    parts = _normalize_parts(parts, g.n, "path-partition")
    idx = {}
    for i, p in enumerate(parts):
        for v in p:
            idx[v] = i
    for u, v in g.edges():
        if abs(idx[u] - idx[v]) > 1:
            return False
    return True


@dataclass(frozen=True)
class WidthReport:
    """Measured sizes of a checked fan-partition."""

    central_size: int
    path_width: int

    @property
    def overall_width(self):
        return max(self.central_size, self.path_width)


@dataclass(frozen=True)
class FanPartition:
    """Central part plus ordered path parts over a graph on n vertices.

    Construction validates partition-ness only; whether the path parts
    actually form a path-partition of g - central is a property of a graph
    and is checked by check_fan_partition.
    """

    n: int
    central: frozenset = field(default_factory=frozenset)
    path_parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "central", frozenset(self.central))
        parts = _normalize_parts(
            [self.central, *self.path_parts], self.n, "fan-partition"
        )
        object.__setattr__(self, "path_parts", parts[1:])

    @property
    def parts(self):
        return (self.central, *self.path_parts)

    def to_json(self):
        """Serialize to the fanpartition.v1 schema (sorted within parts)."""
        return json.dumps(
            {
                "n": self.n,
                "central": sorted(self.central),
                "path_parts": [sorted(p) for p in self.path_parts],
            },
            indent=None,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        try:
            return cls(
                int(data["n"]),
                frozenset(data["central"]),
                tuple(frozenset(p) for p in data["path_parts"]),
            )
        except KeyError as e:
            raise ValueError(f"fanpartition.v1: missing field {e}") from None


def check_fan_partition(g, fp, k=None, w=None):
    """Check fp against g and the bounds k (central size) and w (path width).

    Returns the measured WidthReport on success.  Structural violations
    (including an edge that skips path parts) raise InvalidPartitionError;
    bound violations raise BoundExceededError naming the bound.  Bounds may
    be ints, Fractions or floats; None means unbounded.
    """
    if fp.n != g.n:
        raise InvalidPartitionError(f"partition is over {fp.n} vertices, graph has {g.n}")
    idx = {}
    for i, p in enumerate(fp.path_parts):
        for v in p:
            idx[v] = i
    for u, v in g.edges():
        if u in fp.central or v in fp.central:
            continue
        if abs(idx[u] - idx[v]) > 1:
            raise InvalidPartitionError(
                f"edge ({u},{v}) skips path parts {idx[u]} and {idx[v]}"
            )
    report = WidthReport(len(fp.central), width(fp.path_parts))
    if k is not None and report.central_size > k:
        raise BoundExceededError("central-size", report.central_size, k)
    if w is not None and report.path_width > w:
        raise BoundExceededError("path-width", report.path_width, w)
    return report


def fan_partition_to_embedding(g, fp):
    """Injective map of V(g) into blowup(fan, overall width) induced by fp.

    Fan vertex 0 hosts the central part, fan vertex i hosts path part i-1.
    Every edge of g is verified to land on an edge of the blowup directly
    (no search).  Returns a dict vertex -> blowup index.
    """
    check_fan_partition(g, fp)  # structural validity
    if g.n == 0:
        return {}
    b = max(1, len(fp.central), width(fp.path_parts))
    fan_m = 1 + len(fp.path_parts)
    mapping = {}
    for fan_v, part in enumerate(fp.parts):
        for slot, v in enumerate(sorted(part)):
            mapping[v] = fan_v * b + slot
    host = graphs.blowup(graphs.make_fan(fan_m), b)
    for u, v in g.edges():
        if not host.has_edge(mapping[u], mapping[v]):
            raise InvalidPartitionError(
                f"edge ({u},{v}) does not map into the fan blowup"
            )
    return mapping


# ---------------------------------------------------------------------------
# Exhaustive minimum fan width (ground-truth oracle, n <= 7)
# ---------------------------------------------------------------------------

MAX_BRUTE = 7


def _path_partition_parts(nbr, rest_mask, w_cap):
    """Parts of some width-<=w_cap path-partition of the graph induced on
    rest_mask (bitmask), or None.  First-found under ascending submask order;
    memoized on (placed, last)."""
    memo = {}

    def solve(placed, last):
        if placed == rest_mask:
            return []
        key = (placed, last)
        if key in memo:
            return memo[key]
        free = rest_mask & ~placed
        # neighbours of `last` outside placed must all land in the next part
        forced = 0
        m = last
        while m:
            b = m & -m
            forced |= nbr[b.bit_length() - 1]
            m ^= b
        forced &= free
        result = None
        if bin(forced).count("1") <= w_cap:
            sub = free
            while True:
                if sub & forced == forced and sub and bin(sub).count("1") <= w_cap:
                    tail = solve(placed | sub, sub)
                    if tail is not None:
                        result = [sub] + tail
                        break
                if sub == 0:
                    break
                sub = (sub - 1) & free
        memo[key] = result
        return result

    return solve(0, 0)


def _brute_force_search(g):
    """(width, FanPartition) minimizing overall width, then central size;
    exhaustive over central choices and part layouts, deterministic."""
    n = g.n
    if n == 0:
        return 0, FanPartition(0)
    nbr = [0] * n
    for u in range(n):
        for v in g.adj[u]:
            nbr[u] |= 1 << v
    full = (1 << n) - 1
    for w_cap in range(1, n + 1):
        best = None
        for central in range(full + 1):
            csize = bin(central).count("1")
            if csize > w_cap:
                continue
            if best is not None and csize >= best[0]:
                continue
            parts = _path_partition_parts(nbr, full & ~central, w_cap)
            if parts is not None:
                best = (csize, central, parts)
        if best is not None:
            _, central, parts = best
            fp = FanPartition(
                n,
                frozenset(i for i in range(n) if central >> i & 1),
                tuple(frozenset(i for i in range(n) if p >> i & 1) for p in parts),
            )
            return w_cap, fp
    raise AssertionError("singleton partition is always feasible")


def brute_force_min_fan_width(g):
    """Minimum overall width over all valid fan-partitions of g; exhaustive,
    guarded to n <= 7."""
    if g.n > MAX_BRUTE:
        raise TooLargeError(f"guard: n <= {MAX_BRUTE}")
    return _brute_force_search(g)[0]


def brute_force_fan_partition(g):
    """A width-minimal fan-partition witness (same search as
    brute_force_min_fan_width; deterministic tie-breaks)."""
    if g.n > MAX_BRUTE:
        raise TooLargeError(f"guard: n <= {MAX_BRUTE}")
    return _brute_force_search(g)[1]
