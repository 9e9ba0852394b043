"""Whole-digraph covering schemes and code assembly.

Three interchangeable planners produce CoverPlans: cycle packing (every
cycle viewed as a two-path piece), clique partition (every clique a
piece of single-vertex paths), and the general template search.
assemble_code turns any plan into one broadcast code: per-piece symbols
first, then an uncoded symbol per leftover vertex, for n - savings
symbols total.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .codec import TAG_UNCODED, CodedSymbol, IndexCode, PacketVector, encode
from .digraph import (
    Cycle,
    Digraph,
    full_mask,
    in_masks,
    iter_mask_vertices,
    new_digraph,
    out_masks,
    shortest_cycle_mask,
)
from .errors import EmbeddingError, InvalidCode, InvalidDigraph, SizeRefusal
from .finder import DEFAULT_EXACT_BOUND, CoverPlan, find_icc_subgraphs, make_plan
from .oracles import mais
from .template import check_embedding, clique_to_template, cycle_to_template


@dataclass(frozen=True)
class SchemeReport:
    """Per-scheme code lengths plus the acyclic-set lower bound."""

    n: int
    l_cyc: int | None
    l_cc: int | None
    l_icc: int | None
    mais: int | None
    optimal: bool


def serialize_report(report: SchemeReport) -> str:
    obj = {
        "n": report.n,
        "l_cyc": report.l_cyc,
        "l_cc": report.l_cc,
        "l_icc": report.l_icc,
        "mais": report.mais,
        "optimal": report.optimal,
    }
    return json.dumps(obj, separators=(",", ":"))


def plan_length(D: Digraph, plan: CoverPlan) -> int:
    """Broadcast symbols the assembled code for this plan uses."""
    return D.n - plan.savings


def _refuse(what: str, n: int, bound: int) -> SizeRefusal:
    return SizeRefusal(f"exact {what} is limited to {bound} vertices (digraph has {n}); use greedy mode or raise the bound")


# ---------- cycle packing ----------


def _path_ends(D: Digraph, out_m: list[int]) -> list[int]:
    """ends[mask]: possible last vertices (as bits) of a simple path that
    starts at mask's smallest vertex and visits exactly mask."""
    full = full_mask(D.n)
    ends = [0] * (full + 1)
    for v in range(1, D.n + 1):
        ends[1 << (v - 1)] = 1 << (v - 1)
    for mask in range(1, full + 1):
        e = ends[mask]
        if not e:
            continue
        anchor = mask & -mask
        above = ~((anchor << 1) - 1)  # keep the anchor the smallest vertex
        for u in iter_mask_vertices(e):
            grow = out_m[u] & ~mask & above
            while grow:
                w = grow & -grow
                ends[mask | w] |= w
                grow ^= w
    return ends


def _ham_cycle(in_m: list[int], ends: list[int], mask: int) -> tuple[int, ...]:
    """Recover one cycle visiting exactly mask, smallest vertex first."""
    anchor = mask & -mask
    opts = ends[mask] & in_m[anchor.bit_length()]
    w = (opts & -opts).bit_length()
    seq = [w]
    cur = mask & ~(1 << (w - 1))
    while cur != anchor:
        opts = ends[cur] & in_m[seq[0]]
        u = (opts & -opts).bit_length()
        seq.insert(0, u)
        cur &= ~(1 << (u - 1))
    seq.insert(0, anchor.bit_length())
    return tuple(seq)


def _exact_cycle_packing(D: Digraph) -> list[tuple[int, ...]]:
    out_m, in_m = out_masks(D), in_masks(D)
    full = full_mask(D.n)
    ends = _path_ends(D, out_m)
    by_low: dict[int, list[int]] = {}
    for mask in range(1, full + 1):
        anchor = mask & -mask
        if mask != anchor and ends[mask] & in_m[anchor.bit_length()]:
            by_low.setdefault(anchor, []).append(mask)
    best = [0] * (full + 1)
    take = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        b, t = best[mask ^ low], 0
        for p in by_low.get(low, ()):
            if p & ~mask:
                continue
            c = 1 + best[mask ^ p]
            if c > b:
                b, t = c, p
        best[mask], take[mask] = b, t
    cycles: list[tuple[int, ...]] = []
    mask = full
    while mask:
        p = take[mask]
        if p:
            cycles.append(_ham_cycle(in_m, ends, p))
            mask ^= p
        else:
            mask ^= mask & -mask
    return cycles


def _greedy_cycle_packing(D: Digraph) -> list[tuple[int, ...]]:
    out_m = out_masks(D)
    pool = full_mask(D.n)
    cycles: list[tuple[int, ...]] = []
    while True:
        cyc = shortest_cycle_mask(out_m, pool)
        if cyc is None:
            return cycles
        cycles.append(cyc)
        for v in cyc:
            pool &= ~(1 << (v - 1))


def cycle_cover(D: Digraph, mode: str = "exact", exact_bound: int = DEFAULT_EXACT_BOUND) -> CoverPlan:
    """Vertex-disjoint cycles, each cast as a k=2 piece (one saved symbol).

    Exact mode maximizes the number of disjoint cycles; greedy repeatedly
    removes a shortest cycle.
    """
    if mode == "exact":
        if D.n > exact_bound:
            raise _refuse("cycle packing", D.n, exact_bound)
        cycles = _exact_cycle_packing(D)
    elif mode == "greedy":
        cycles = _greedy_cycle_packing(D)
    else:
        raise ValueError(f"mode must be 'exact' or 'greedy', got {mode!r}")
    pieces = [cycle_to_template(Cycle(c), (len(c) + 1) // 2) for c in cycles]
    return make_plan(D, pieces)


# ---------- clique partition ----------


def _mutual_masks(D: Digraph) -> list[int]:
    out_m, in_m = out_masks(D), in_masks(D)
    return [out_m[v] & in_m[v] if v else 0 for v in range(D.n + 1)]


def _exact_clique_partition(D: Digraph) -> list[list[int]]:
    mut = _mutual_masks(D)
    full = full_mask(D.n)
    is_clique = bytearray(full + 1)
    is_clique[0] = 1
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        if is_clique[rest] and (mut[low.bit_length()] & rest) == rest:
            is_clique[mask] = 1
    # fewest parts = most saved symbols
    parts = [0] * (full + 1)
    take = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        b, t = None, 0
        sub = rest
        while True:
            p = sub | low
            if is_clique[p]:
                c = 1 + parts[mask ^ p]
                if b is None or c < b:
                    b, t = c, p
            if sub == 0:
                break
            sub = (sub - 1) & rest
        parts[mask], take[mask] = b, t
    groups: list[list[int]] = []
    mask = full
    while mask:
        p = take[mask]
        groups.append(list(iter_mask_vertices(p)))
        mask ^= p
    return groups


def _greedy_clique_partition(D: Digraph) -> list[list[int]]:
    mut = _mutual_masks(D)
    remaining = full_mask(D.n)
    groups: list[list[int]] = []
    while remaining:
        verts = list(iter_mask_vertices(remaining))
        deg = {v: bin(mut[v] & remaining).count("1") for v in verts}
        seed = min(verts, key=lambda v: (-deg[v], v))
        cmask = 1 << (seed - 1)
        cands = sorted(
            (v for v in verts if v != seed and mut[v] >> (seed - 1) & 1),
            key=lambda v: (-deg[v], v),
        )
        for u in cands:
            if (mut[u] & cmask) == cmask:
                cmask |= 1 << (u - 1)
        groups.append(list(iter_mask_vertices(cmask)))
        remaining &= ~cmask
    return groups


def clique_cover(D: Digraph, mode: str = "exact", exact_bound: int = DEFAULT_EXACT_BOUND) -> CoverPlan:
    """Partition into bidirectionally complete groups, singletons included.

    Every group becomes a piece of single-vertex paths, so the plan covers
    all of D and saves group size minus one symbols per group.  Exact mode
    minimizes the number of groups; greedy extracts maximal groups seeded
    by highest mutual degree.
    """
    if mode == "exact":
        if D.n > exact_bound:
            raise _refuse("clique partition", D.n, exact_bound)
        groups = _exact_clique_partition(D)
    elif mode == "greedy":
        groups = _greedy_clique_partition(D)
    else:
        raise ValueError(f"mode must be 'exact' or 'greedy', got {mode!r}")
    pieces = [clique_to_template(D, g) for g in groups]
    return make_plan(D, pieces)


# ---------- general cover and assembly ----------


def icc_cover(D: Digraph, mode: str = "exact", exact_bound: int = DEFAULT_EXACT_BOUND) -> CoverPlan:
    """Best disjoint family of template embeddings; see find_icc_subgraphs."""
    return find_icc_subgraphs(D, mode, exact_bound)


def assemble_code(D: Digraph, plan: CoverPlan, packets: PacketVector | None = None) -> IndexCode:
    """Concatenate per-piece codes, then uncoded symbols for leftovers.

    Re-checks that the plan's pieces embed in D and partition 1..n with
    the uncovered set before emitting anything.
    """
    if packets is not None and len(packets.packets) != D.n:
        raise InvalidCode(f"expected {D.n} packets, got {len(packets.packets)}")
    seen: set[int] = set()
    for T, lab in plan.pieces:
        if not check_embedding(D, T, lab):
            raise EmbeddingError("plan piece does not embed into the host digraph")
        vs = set(lab.values())
        if vs & seen:
            raise EmbeddingError("plan pieces share vertices")
        seen |= vs
    leftover = set(plan.uncovered)
    if seen & leftover or len(seen) + len(leftover) != D.n or not (seen | leftover) <= set(range(1, D.n + 1)):
        raise EmbeddingError("plan does not partition the vertex set")
    symbols: list[CodedSymbol] = []
    ops = 0
    for T, lab in plan.pieces:
        piece_code = encode(T, lab, packets)
        symbols.extend(piece_code.symbols)
        if packets is not None:
            ops += piece_code.xor_bit_ops
    for v in plan.uncovered:
        payload = packets.packet(v) if packets is not None else None
        symbols.append(CodedSymbol(frozenset({v}), payload, TAG_UNCODED))
    return IndexCode(tuple(symbols), xor_bit_ops=ops if packets is not None else None)


def compare(D: Digraph, exact_bound: int = DEFAULT_EXACT_BOUND) -> SchemeReport:
    """Run all three planners (exact within the bound, greedy beyond) and
    the acyclic-set bound; flag optimality only when the bound is met."""
    mode = "exact" if D.n <= exact_bound else "greedy"
    l_cyc = plan_length(D, cycle_cover(D, mode, exact_bound))
    l_cc = plan_length(D, clique_cover(D, mode, exact_bound))
    l_icc = plan_length(D, icc_cover(D, mode, exact_bound))
    try:
        lower = mais(D)
    except SizeRefusal:
        lower = None
    return SchemeReport(D.n, l_cyc, l_cc, l_icc, lower, lower is not None and l_icc == lower)


def gap_family(k: int) -> Digraph:
    """Two-block digraph on 2k vertices where coded side information pays.

    Vertex k+i holds message i; vertex i holds every upper message except
    k+i.  The best cycle packing saves only floor(k/2) symbols here while
    a single spanning k-path piece saves k-1.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidDigraph(f"family parameter must be a positive integer, got {k!r}")
    arcs = [(k + i, i) for i in range(1, k + 1)]
    arcs += [(i, k + j) for i in range(1, k + 1) for j in range(1, k + 1) if j != i]
    return new_digraph(2 * k, arcs)
