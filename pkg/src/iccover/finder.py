"""Search for vertex-disjoint interlinked-cycle subgraphs of a host digraph.

A spanning k-path template on a vertex subset saves k - 1 broadcast
symbols, so exact mode scores every strongly connected subset by the
largest k any spanning embedding realizes, then picks a disjoint family
maximizing total savings by dynamic programming over bitmasks.  Greedy
mode packs shortest cycles first (each a k = 2 piece) and then tries to
merge pieces pairwise into higher-k templates.

Host arcs beyond the template's own are allowed inside a piece; extra
side information never hurts decodability.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .digraph import (
    Cycle,
    Digraph,
    _reach_mask,
    full_mask,
    in_masks,
    is_acyclic_mask,
    iter_mask_vertices,
    out_masks,
    shortest_cycle_mask,
    strongly_connected_mask,
)
from .errors import EmbeddingError, SizeRefusal
from .template import IccTemplate, Labeling, check_embedding, cycle_to_template

DEFAULT_EXACT_BOUND = 12

Piece = tuple[IccTemplate, Labeling]
# internal: (k, template, labeling) for one spanning embedding
Embedding = tuple[int, IccTemplate, Labeling]


@dataclass(frozen=True)
class CoverPlan:
    """Vertex-disjoint template embeddings plus the vertices left uncoded."""

    pieces: tuple[Piece, ...]
    uncovered: tuple[int, ...]

    @property
    def savings(self) -> int:
        return sum(T.k - 1 for T, _ in self.pieces)


def make_plan(D: Digraph, pieces: list[Piece]) -> CoverPlan:
    """Wrap disjoint embedded pieces as a CoverPlan, uncovered = complement.

    Raises EmbeddingError when a piece does not embed in D or two pieces
    share a vertex.
    """
    covered: set[int] = set()
    for idx, (T, lab) in enumerate(pieces, start=1):
        if not check_embedding(D, T, lab):
            raise EmbeddingError(f"piece {idx} does not embed in the digraph")
        vs = set(lab.values())
        if vs & covered:
            raise EmbeddingError(f"piece {idx} overlaps an earlier piece at {sorted(vs & covered)}")
        covered |= vs
    ordered = sorted(pieces, key=lambda piece: min(piece[1].values()))
    uncovered = tuple(v for v in range(1, D.n + 1) if v not in covered)
    return CoverPlan(tuple(ordered), uncovered)


def _labeling_mask(lab: Labeling) -> int:
    m = 0
    for v in lab.values():
        m |= 1 << (v - 1)
    return m


class _EmbeddingSearch:
    """Backtracking search for a maximum-k spanning template on one subset.

    Terminals are tried as ascending combinations (path indices are
    interchangeable, so sorted terminals lose nothing), main paths grow
    backward from their terminals with "stop" tried before "extend", and
    leftover vertices are assigned to connector paths pivot-first.  The
    first embedding found under this order is the canonical one.
    """

    def __init__(self, D: Digraph, out_m: list[int], in_m: list[int]):
        self.D = D
        self.out_m = out_m
        self.in_m = in_m

    def max_piece(self, mask: int) -> Embedding | None:
        out_m, in_m = self.out_m, self.in_m
        verts = list(iter_mask_vertices(mask))
        if len(verts) < 2 or not strongly_connected_mask(out_m, in_m, mask):
            return None
        # a terminal needs k-1 outgoing arcs inside the subset
        deg = {v: bin(out_m[v] & mask).count("1") for v in verts}
        degs = sorted(deg.values(), reverse=True)
        kmax = 0
        for k in range(len(verts), 1, -1):
            if degs[k - 1] >= k - 1:
                kmax = k
                break
        for k in range(kmax, 1, -1):
            cands = [v for v in verts if deg[v] >= k - 1]
            for terms in combinations(cands, k):
                found = self._embed(mask, terms)
                if found is not None:
                    T, lab = found
                    assert check_embedding(self.D, T, lab)
                    return (k, T, lab)
        return None

    def _embed(self, mask: int, terms: tuple[int, ...]) -> tuple[IccTemplate, Labeling] | None:
        out_m, in_m = self.out_m, self.in_m
        k = len(terms)
        paths: list[list[int]] = [[t] for t in terms]
        pool0 = mask
        for t in terms:
            pool0 &= ~(1 << (t - 1))
        allpairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]

        def finalize(conn: dict[tuple[int, int], list[int]]):
            type_ii: dict[tuple[int, int], int] = {}
            attach: dict[tuple[int, int], int] = {}
            for (i, j) in allpairs:
                vs = conn.get((i, j))
                src = vs[-1] if vs else terms[i - 1]
                opts = [a for a, v in enumerate(paths[j - 1], start=1) if out_m[src] >> (v - 1) & 1]
                if not opts:
                    return None
                attach[(i, j)] = opts[0]
                if vs:
                    type_ii[(i, j)] = len(vs)
            for j in range(1, k + 1):
                # some connection must land on path j's first vertex
                if not any(attach[(i, j)] == 1 for i in range(1, k + 1) if i != j):
                    return None
            T = IccTemplate(k, tuple(len(p) for p in paths), type_ii, attach)
            lab: Labeling = {}
            for i, p in enumerate(paths, start=1):
                for a, v in enumerate(p, start=1):
                    lab[(i, a)] = v
            for (i, j), vs in conn.items():
                for a, v in enumerate(vs, start=1):
                    lab[(i, j, a)] = v
            return (T, lab)

        def pivot_paths(pivot: int, pool: int, starts: int, targets: int):
            # directed paths inside pool|{pivot} through pivot, starting at a
            # start vertex and ending with an arc into the target set
            def forward(chain: list[int], left: int):
                if out_m[chain[-1]] & targets:
                    yield list(chain)
                for w in iter_mask_vertices(out_m[chain[-1]] & left):
                    chain.append(w)
                    yield from forward(chain, left & ~(1 << (w - 1)))
                    chain.pop()

            def backward(chain: list[int], left: int):
                if starts >> (chain[0] - 1) & 1:
                    yield from forward(list(chain), left)
                for u in iter_mask_vertices(in_m[chain[0]] & left):
                    chain.insert(0, u)
                    yield from backward(chain, left & ~(1 << (u - 1)))
                    chain.pop(0)

            yield from backward([pivot], pool)

        def place(conn, pool: int, path_sets: list[int], enter: list[int]):
            if pool == 0:
                return finalize(conn)
            pivot_bit = pool & -pool
            pivot = pivot_bit.bit_length()
            rest = pool & ~pivot_bit
            # cheap necessary conditions: the pivot's connector path must
            # start at some terminal's out-neighbor and end next to its pair's
            # target path, all within the remaining pool
            back = _reach_mask(in_m, pool, pivot_bit)
            fwd = _reach_mask(out_m, pool, pivot_bit)
            for (i, j) in allpairs:
                if (i, j) in conn:
                    continue
                if not back & out_m[terms[i - 1]] or not fwd & enter[j - 1]:
                    continue
                for vs in pivot_paths(pivot, rest, out_m[terms[i - 1]], path_sets[j - 1]):
                    left = pool
                    for v in vs:
                        left &= ~(1 << (v - 1))
                    conn[(i, j)] = vs
                    got = place(conn, left, path_sets, enter)
                    if got is not None:
                        return got
                    del conn[(i, j)]
            return None

        def connectors(pool: int):
            path_sets = []
            allp = 0
            for p in paths:
                m = 0
                for v in p:
                    m |= 1 << (v - 1)
                path_sets.append(m)
                allp |= m
            term_mask = 0
            for t in terms:
                term_mask |= 1 << (t - 1)
            # every leftover vertex must be enterable (from the pool or a
            # terminal) and exitable (into the pool or onto a main path)
            m = pool
            while m:
                b = m & -m
                v = b.bit_length()
                if not in_m[v] & (pool | term_mask) or not out_m[v] & (pool | allp):
                    return None
                m ^= b
            enter = []
            for ps in path_sets:
                e = 0
                s = pool
                while s:
                    b = s & -s
                    if out_m[b.bit_length()] & ps:
                        e |= b
                    s ^= b
                enter.append(e)
            # every ordered pair needs a possible attach source, and every
            # path's first vertex needs one landing on it exactly
            for jdx in range(k):
                if not enter[jdx]:
                    for idx in range(k):
                        if idx != jdx and not out_m[terms[idx]] & path_sets[jdx]:
                            return None
                tj = 1 << (terms[jdx] - 1)
                if not in_m[paths[jdx][0]] & ((term_mask ^ tj) | pool):
                    return None
            return place({}, pool, path_sets, enter)

        def grow(i: int, pool: int):
            if i == k:
                return connectors(pool)
            got = grow(i + 1, pool)
            if got is not None:
                return got
            for u in iter_mask_vertices(in_m[paths[i][0]] & pool):
                paths[i].insert(0, u)
                got = grow(i, pool & ~(1 << (u - 1)))
                if got is not None:
                    return got
                paths[i].pop(0)
            return None

        return grow(0, pool0)


def _exact_cover(D: Digraph) -> list[Piece]:
    out_m, in_m = out_masks(D), in_masks(D)
    full = full_mask(D.n)
    if is_acyclic_mask(in_m, full):
        return []
    search = _EmbeddingSearch(D, out_m, in_m)
    emb: dict[int, Embedding] = {}
    sav = [0] * (full + 1)
    by_low: dict[int, list[int]] = {}
    for mask in range(1, full + 1):
        got = search.max_piece(mask)
        if got is not None:
            emb[mask] = got
            sav[mask] = got[0] - 1
            by_low.setdefault(mask & -mask, []).append(mask)
    best = [0] * (full + 1)
    take = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        b, t = best[mask ^ low], 0
        for p in by_low.get(low, ()):
            if p & ~mask:
                continue
            c = sav[p] + best[mask ^ p]
            if c > b:
                b, t = c, p
        best[mask], take[mask] = b, t
    pieces: list[Piece] = []
    mask = full
    while mask:
        p = take[mask]
        if p:
            _, T, lab = emb[p]
            pieces.append((T, lab))
            mask ^= p
        else:
            mask ^= mask & -mask
    return pieces


def _greedy_cover(D: Digraph, merge_bound: int) -> list[Piece]:
    out_m, in_m = out_masks(D), in_masks(D)
    pool = full_mask(D.n)
    found: list[Embedding] = []
    while True:
        cyc = shortest_cycle_mask(out_m, pool)
        if cyc is None:
            break
        T, lab = cycle_to_template(Cycle(cyc), (len(cyc) + 1) // 2)
        found.append((2, T, lab))
        for v in cyc:
            pool &= ~(1 << (v - 1))
    search = _EmbeddingSearch(D, out_m, in_m)
    merged = True
    while merged:
        merged = False
        for a in range(len(found)):
            for b in range(a + 1, len(found)):
                union = _labeling_mask(found[a][2]) | _labeling_mask(found[b][2])
                if bin(union).count("1") > merge_bound:
                    continue
                got = search.max_piece(union)
                if got is not None and got[0] >= found[a][0] + found[b][0]:
                    found[a] = got
                    del found[b]
                    merged = True
                    break
            if merged:
                break
    return [(T, lab) for _, T, lab in found]


def find_icc_subgraphs(D: Digraph, mode: str = "exact", exact_bound: int = DEFAULT_EXACT_BOUND) -> CoverPlan:
    """Best disjoint family of template embeddings found under the given mode.

    Exact mode maximizes total savings and refuses digraphs larger than
    exact_bound vertices; greedy mode handles any size and reuses the
    bound as its piece-merge size cap.  Both are deterministic.
    """
    if mode == "exact":
        if D.n > exact_bound:
            raise SizeRefusal(
                f"exact subgraph search is limited to {exact_bound} vertices (digraph has {D.n}); "
                "use greedy mode or raise the bound"
            )
        pieces = _exact_cover(D)
    elif mode == "greedy":
        pieces = _greedy_cover(D, exact_bound)
    else:
        raise ValueError(f"mode must be 'exact' or 'greedy', got {mode!r}")
    return make_plan(D, pieces)
