"""Independent certification: GF(2) decodability, exact acyclic bounds,
and structural cycle checks.

Everything here re-derives properties from first principles so the codec
and the planners can be cross-checked rather than trusted: decodability
by rank over GF(2) instead of the structural chains, the broadcast lower
bound by brute force over induced subgraphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .codec import IndexCode, code_length
from .digraph import (
    DEFAULT_CYCLE_CAP,
    Digraph,
    enumerate_cycles,
    full_mask,
    in_masks,
    is_acyclic_mask,
    out_masks,
    shortest_cycle_mask,
    side_info,
)
from .errors import InvalidCode, SizeRefusal
from .template import IccTemplate, build_digraph

DEFAULT_MAIS_BOUND = 20
EXHAUSTIVE_MAIS_BOUND = 12


@dataclass(frozen=True)
class Gf2Matrix:
    """Support vectors as int bitsets; bit i-1 stands for message id i."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            if row < 0 or row >> self.ncols:
                raise InvalidCode(f"matrix row {row:#x} does not fit in {self.ncols} columns")


def gf2_rank(rows: list[int], ncols: int) -> int:
    """Rank over GF(2) by Gaussian elimination on int bitsets."""
    work = [r for r in rows if r]
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def gf2_in_span(rows: list[int], vec: int, ncols: int) -> bool:
    """True iff vec lies in the GF(2) row span of rows."""
    return gf2_rank(list(rows) + [vec], ncols) == gf2_rank(list(rows), ncols)


def code_matrix(code: IndexCode, n: int) -> Gf2Matrix:
    """Support rows of a code over messages 1..n, in symbol order."""
    rows = []
    for s in code.symbols:
        row = 0
        for m in s.support:
            if not isinstance(m, int) or isinstance(m, bool) or not 1 <= m <= n:
                raise InvalidCode(f"coded symbol references message {m!r} outside 1..{n}")
            row |= 1 << (m - 1)
        rows.append(row)
    return Gf2Matrix(tuple(rows), n)


def gf2_decodable(M: Gf2Matrix, side: set[int], target: int) -> bool:
    """Can a receiver holding the side messages recover the target from M?

    True iff the target's unit vector lies in the span of M's rows joined
    with the side messages' unit vectors.
    """
    if any(not isinstance(j, int) or isinstance(j, bool) or not 1 <= j <= M.ncols for j in side):
        raise InvalidCode(f"side message ids must lie in 1..{M.ncols}")
    if not isinstance(target, int) or isinstance(target, bool) or not 1 <= target <= M.ncols:
        raise InvalidCode(f"target message must lie in 1..{M.ncols}, got {target!r}")
    if target in side:
        raise ValueError(f"target message {target} is already side information")
    rows = list(M.rows) + [1 << (j - 1) for j in sorted(side)]
    return gf2_in_span(rows, 1 << (target - 1), M.ncols)


@dataclass(frozen=True)
class VerifyResult:
    """Overall validity plus one verdict per receiver (index i-1 is receiver i)."""

    valid: bool
    verdicts: tuple[bool, ...]

    def __bool__(self) -> bool:
        return self.valid

    def failing(self) -> tuple[int, ...]:
        return tuple(i for i, ok in enumerate(self.verdicts, start=1) if not ok)


def verify_code(D: Digraph, code: IndexCode) -> VerifyResult:
    """Rank-certify that every receiver can decode its message from the code."""
    M = code_matrix(code, D.n)
    verdicts = tuple(gf2_decodable(M, side_info(D, i), i) for i in range(1, D.n + 1))
    return VerifyResult(all(verdicts), verdicts)


def mais(D: Digraph, bound: int = DEFAULT_MAIS_BOUND) -> int:
    """Order of a largest acyclic induced subgraph, exact.

    Branch and bound on the complement problem (fewest vertices whose
    removal kills every cycle): branch over the vertices of a shortest
    cycle, prune with a greedy disjoint-cycle lower bound.
    """
    if D.n > bound:
        raise SizeRefusal(f"exact acyclic-set search is limited to {bound} vertices (digraph has {D.n})")
    out_m = out_masks(D)
    full = full_mask(D.n)

    def disjoint_cycles(mask: int) -> tuple[int, tuple[int, ...] | None]:
        count, first = 0, None
        m = mask
        while True:
            cyc = shortest_cycle_mask(out_m, m)
            if cyc is None:
                return count, first
            if first is None:
                first = cyc
            count += 1
            for v in cyc:
                m &= ~(1 << (v - 1))

    # greedy feasible start: delete the first vertex of each shortest cycle
    m, removed = full, 0
    while True:
        cyc = shortest_cycle_mask(out_m, m)
        if cyc is None:
            break
        m &= ~(1 << (cyc[0] - 1))
        removed += 1
    best = removed

    def search(mask: int, removed: int) -> None:
        nonlocal best
        lb, first = disjoint_cycles(mask)
        if removed + lb >= best:
            return
        if first is None:
            best = removed
            return
        for v in first:
            search(mask & ~(1 << (v - 1)), removed + 1)

    search(full, 0)
    return D.n - best


def mais_exhaustive(D: Digraph, bound: int = EXHAUSTIVE_MAIS_BOUND) -> int:
    """Same value as mais, re-derived by scanning every vertex subset."""
    if D.n > bound:
        raise SizeRefusal(f"subset scan is limited to {bound} vertices (digraph has {D.n})")
    in_m = in_masks(D)
    best = 0
    for mask in range(full_mask(D.n) + 1):
        size = bin(mask).count("1")
        if size > best and is_acyclic_mask(in_m, mask):
            best = size
    return best


@dataclass(frozen=True)
class OptimalityReport:
    """Certificate comparing a template's code length to the acyclic bound.

    No valid code can use fewer symbols than the bound, so equality pins
    the best achievable broadcast rate at every packet width.
    """

    n: int
    k: int
    length: int
    mais_value: int

    @property
    def optimal(self) -> bool:
        return self.length == self.mais_value

    @property
    def rate(self) -> int | None:
        """Certified best rate (any packet width, and in the limit), or None."""
        return self.length if self.optimal else None

    def to_json(self) -> str:
        obj = {
            "n": self.n,
            "l_cyc": None,
            "l_cc": None,
            "l_icc": self.length,
            "mais": self.mais_value,
            "optimal": self.optimal,
        }
        return json.dumps(obj, separators=(",", ":"))


def certify_optimality(T: IccTemplate, bound: int = DEFAULT_MAIS_BOUND) -> OptimalityReport:
    """Build the template's digraph and test its code length against mais.

    The two always agree for sound inputs; a mismatch in the report would
    point at an implementation bug, which is why the check exists.
    """
    D, _ = build_digraph(T)
    return OptimalityReport(D.n, T.k, code_length(T), mais(D, bound))


@dataclass(frozen=True)
class Lemma2Result:
    """holds: no counterexample found; conclusive: enumeration was complete."""

    holds: bool
    conclusive: bool

    def __bool__(self) -> bool:
        return self.holds and self.conclusive


def check_lemma2(T: IccTemplate, max_count: int = DEFAULT_CYCLE_CAP) -> Lemma2Result:
    """Check that every cycle through a path vertex contains the right terminal.

    Main-path vertices pin their own path's terminal; connector vertices
    pin the terminal of the path their pair attaches to.  A truncated
    cycle enumeration makes the verdict inconclusive.
    """
    D, lab = build_digraph(T)
    cycles, truncated = enumerate_cycles(D, max_count)
    coord = {v: c for c, v in lab.items()}
    terminal_id = {i: lab[(i, T.n_i(i))] for i in range(1, T.k + 1)}
    holds = True
    for cyc in cycles:
        members = set(cyc.vertices)
        for v in cyc.vertices:
            c = coord[v]
            need = terminal_id[c[0]] if len(c) == 2 else terminal_id[c[1]]
            if need not in members:
                holds = False
                break
        if not holds:
            break
    return Lemma2Result(holds, not truncated)
