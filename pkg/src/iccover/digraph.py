"""Directed side-information graphs with canonical JSON I/O.

A digraph on receivers 1..n records, as an arc (u, v), that receiver u
already holds message v, so the out-neighborhood of a vertex is exactly
its side-information set.  Digraph values are immutable after
construction and safe to share; every function in this module is pure.

The bitmask helpers at the bottom (``out_masks``, ``shortest_cycle_mask``
and friends) are the traversal workhorses used by the covering and
oracle modules.  Vertex v corresponds to bit v-1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx

from .errors import FormatError, InvalidDigraph

DEFAULT_CYCLE_CAP = 10**6


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph with 1-indexed vertices and no self-arcs."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def out_neighbors(self, u: int) -> set[int]:
        _check_vertex(self.n, u)
        return {v for a, v in self.arcs if a == u}

    def in_neighbors(self, v: int) -> set[int]:
        _check_vertex(self.n, v)
        return {u for u, b in self.arcs if b == v}


@dataclass(frozen=True)
class Cycle:
    """Elementary directed cycle; the closing arc back to vertices[0] is implied."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 2:
            raise InvalidDigraph(f"a cycle needs at least 2 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise InvalidDigraph(f"cycle repeats a vertex: {vs}")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)


def _check_vertex(n: int, v) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= n:
        raise InvalidDigraph(f"vertex id {v!r} out of range 1..{n}")


def new_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph, rejecting bad endpoints and self-arcs; duplicates collapse."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidDigraph(f"vertex count must be a non-negative integer, got {n!r}")
    clean = set()
    for arc in arcs:
        try:
            u, v = arc
        except (TypeError, ValueError):
            raise InvalidDigraph(f"arc {arc!r} is not a pair") from None
        _check_vertex(n, u)
        _check_vertex(n, v)
        if u == v:
            raise InvalidDigraph(f"self-arc ({u},{v}) is not allowed")
        clean.add((u, v))
    return Digraph(n, frozenset(clean))


def side_info(D: Digraph, i: int) -> set[int]:
    """Message ids receiver i already holds (its out-neighborhood)."""
    return D.out_neighbors(i)


def enumerate_cycles(D: Digraph, max_count: int = DEFAULT_CYCLE_CAP) -> tuple[tuple[Cycle, ...], bool]:
    """List elementary cycles of D, each rotated to start at its smallest vertex.

    Returns (cycles, truncated).  When the full set fits under max_count the
    cycles come back sorted by (length, vertex tuple); a truncated listing
    keeps discovery order and sets the flag.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(1, D.n + 1))
    g.add_edges_from(sorted(D.arcs))
    found: list[Cycle] = []
    truncated = False
    for nodes in nx.simple_cycles(g):
        if len(found) >= max_count:
            truncated = True
            break
        pivot = nodes.index(min(nodes))
        rot = tuple(nodes[pivot:]) + tuple(nodes[:pivot])
        for a, b in zip(rot, rot[1:] + rot[:1]):
            assert (a, b) in D.arcs, f"cycle {rot} uses missing arc ({a},{b})"
        found.append(Cycle(rot))
    if not truncated:
        found.sort(key=lambda c: (len(c.vertices), c.vertices))
    return tuple(found), truncated


def induced_subdigraph(D: Digraph, vertices: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
    """Restrict D to a vertex set, relabeling to 1..|S| in sorted order.

    Returns (subgraph, mapping) where mapping[new_id] = original id.
    """
    vs = sorted(set(vertices))
    for v in vs:
        _check_vertex(D.n, v)
    new_id = {old: idx for idx, old in enumerate(vs, start=1)}
    arcs = {
        (new_id[u], new_id[v])
        for (u, v) in D.arcs
        if u in new_id and v in new_id
    }
    mapping = {idx: old for idx, old in enumerate(vs, start=1)}
    return Digraph(len(vs), frozenset(arcs)), mapping


def serialize_digraph(D: Digraph) -> str:
    """Canonical JSON: arcs sorted lexicographically, no whitespace variation."""
    obj = {"n": D.n, "arcs": [[u, v] for (u, v) in sorted(D.arcs)]}
    return json.dumps(obj, separators=(",", ":"))


def parse_digraph(text: str) -> Digraph:
    """Parse the JSON digraph format, reporting the offending field on error."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise FormatError("top-level value must be an object")
    extra = set(obj) - {"n", "arcs"}
    if extra:
        raise FormatError(f"unknown field {sorted(extra)[0]!r}")
    if "n" not in obj or "arcs" not in obj:
        raise FormatError("object must carry fields 'n' and 'arcs'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError(f"field 'n': expected a non-negative integer, got {n!r}")
    raw = obj["arcs"]
    if not isinstance(raw, list):
        raise FormatError("field 'arcs': expected a list")
    arcs = []
    for idx, entry in enumerate(raw):
        if not isinstance(entry, list) or len(entry) != 2:
            raise FormatError(f"arcs[{idx}]: expected a pair [u,v], got {entry!r}")
        u, v = entry
        for end in (u, v):
            if not isinstance(end, int) or isinstance(end, bool) or not 1 <= end <= n:
                raise FormatError(f"arcs[{idx}]: endpoint {end!r} out of range 1..{n}")
        if u == v:
            raise FormatError(f"arcs[{idx}]: self-arc ({u},{v}) is not allowed")
        arcs.append((u, v))
    return new_digraph(n, arcs)


# ---------- bitmask traversal utilities ----------


def full_mask(n: int) -> int:
    return (1 << n) - 1


def out_masks(D: Digraph) -> list[int]:
    """out_masks(D)[u] has bit v-1 set iff (u,v) is an arc; index 0 unused."""
    masks = [0] * (D.n + 1)
    for u, v in D.arcs:
        masks[u] |= 1 << (v - 1)
    return masks


def in_masks(D: Digraph) -> list[int]:
    masks = [0] * (D.n + 1)
    for u, v in D.arcs:
        masks[v] |= 1 << (u - 1)
    return masks


def iter_mask_vertices(mask: int) -> Iterator[int]:
    """Vertices of a bitmask in ascending order."""
    while mask:
        b = mask & -mask
        mask ^= b
        yield b.bit_length()


def is_acyclic_mask(in_m: list[int], mask: int) -> bool:
    """True iff the subgraph induced on the bitmask has no directed cycle."""
    remaining = mask
    while remaining:
        progressed = False
        m = remaining
        while m:
            b = m & -m
            m ^= b
            if in_m[b.bit_length()] & remaining == 0:
                remaining ^= b
                progressed = True
        if not progressed:
            return False
    return True


def shortest_cycle_mask(out_m: list[int], mask: int) -> tuple[int, ...] | None:
    """Deterministic shortest directed cycle inside the induced bitmask, or None."""
    best: tuple[int, tuple[int, ...]] | None = None
    for s in iter_mask_vertices(mask):
        sbit = 1 << (s - 1)
        dist = {s: 0}
        parent: dict[int, int] = {}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for v in iter_mask_vertices(out_m[u] & mask):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
        closing = [u for u in dist if out_m[u] & sbit]
        if not closing:
            continue
        u = min(closing, key=lambda x: (dist[x], x))
        path = [u]
        while path[-1] != s:
            path.append(parent[path[-1]])
        cyc = tuple(reversed(path))
        key = (len(cyc), cyc)
        if best is None or key < best:
            best = key
    return None if best is None else best[1]


def _reach_mask(masks: list[int], mask: int, start_bit: int) -> int:
    seen = start_bit
    frontier = start_bit
    while frontier:
        nxt = 0
        m = frontier
        while m:
            b = m & -m
            m ^= b
            nxt |= masks[b.bit_length()] & mask
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def strongly_connected_mask(out_m: list[int], in_m: list[int], mask: int) -> bool:
    """True iff the subgraph induced on the bitmask is strongly connected (and nonempty)."""
    if mask == 0:
        return False
    start = mask & -mask
    return _reach_mask(out_m, mask, start) == mask and _reach_mask(in_m, mask, start) == mask
