"""Interlinked-cycle structures described parametrically.

A template lists k terminal-anchored main paths (Type-I), an optional
connector path (Type-II) for every ordered pair of main paths, and an
attachment map saying at which position each pair's connection re-enters
the target path.  Building the template yields a digraph in which every
main-path terminal fans out to all other main paths, either directly or
through its connector, which is what makes the single combined parity
symbol decodable everywhere.

Template coordinates name vertices structurally: ``(i, a)`` is position a
of main path i, ``(i, j, a)`` is position a of the connector for the
ordered pair (i, j).  A labeling maps coordinates to host vertex ids.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable

from .digraph import Cycle, Digraph, new_digraph
from .errors import EmbeddingError, FormatError, InvalidDigraph, InvalidTemplate

Coord = tuple  # (i, a) for Type-I, (i, j, a) for Type-II
Labeling = dict


def _is_count(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


@dataclass(frozen=True)
class IccTemplate:
    """Parametric description of an interlinked-cycle digraph.

    type_i[i-1] is the length of main path i (at least 1).  type_ii maps
    an ordered pair (i, j) to its connector length; missing pairs mean no
    connector.  attach maps (i, j) to the 1-based position on path j where
    the pair's connection lands.
    """

    k: int
    type_i: tuple[int, ...]
    type_ii: dict[tuple[int, int], int] = field(default_factory=dict)
    attach: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "type_i", tuple(self.type_i))
        object.__setattr__(self, "type_ii", dict(self.type_ii))
        object.__setattr__(self, "attach", dict(self.attach))

    @property
    def n(self) -> int:
        """Total vertex count: main-path lengths plus connector lengths."""
        return sum(self.type_i) + sum(self.type_ii.values())

    def n_i(self, i: int) -> int:
        return self.type_i[i - 1]

    def n_ij(self, i: int, j: int) -> int:
        return self.type_ii.get((i, j), 0)

    def q(self, i: int, j: int) -> int:
        return self.attach[(i, j)]

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.k + 1) for j in range(1, self.k + 1) if i != j]

    def terminal(self, i: int) -> Coord:
        return (i, self.n_i(i))

    def coords(self) -> list[Coord]:
        """All vertex coordinates: main paths by index, then connectors by pair."""
        out: list[Coord] = []
        for i in range(1, self.k + 1):
            out.extend((i, a) for a in range(1, self.n_i(i) + 1))
        for (i, j) in self.pairs():
            out.extend((i, j, a) for a in range(1, self.n_ij(i, j) + 1))
        return out


def validate_template(T: IccTemplate) -> list[str]:
    """Return all structural violations, empty when the template is sound.

    For k >= 2 every ordered pair needs an attachment point in range, and
    every main path's first vertex must be targeted by some attachment so
    that it has an incoming arc in the built digraph.  A single-path
    template (k = 1) has no pairs and is exempt from those checks.
    """
    if not _is_count(T.k) or T.k < 1:
        return [f"k must be a positive integer, got {T.k!r}"]
    problems: list[str] = []
    if len(T.type_i) != T.k:
        problems.append(f"expected {T.k} main-path lengths, got {len(T.type_i)}")
    else:
        for idx, ln in enumerate(T.type_i, start=1):
            if not _is_count(ln) or ln < 1:
                problems.append(f"main path {idx}: length must be >= 1, got {ln!r}")
    if problems:
        return problems
    valid_pairs = set(T.pairs())
    for key in sorted(T.type_ii, key=repr):
        val = T.type_ii[key]
        if key not in valid_pairs:
            problems.append(f"connector for nonexistent pair {key!r}")
        elif not _is_count(val) or val < 0:
            problems.append(f"connector {key}: length must be >= 0, got {val!r}")
    for key in sorted(T.attach, key=repr):
        if key not in valid_pairs:
            problems.append(f"attachment for nonexistent pair {key!r}")
    for (i, j) in T.pairs():
        if (i, j) not in T.attach:
            problems.append(f"pair ({i},{j}): no attachment point")
            continue
        q = T.attach[(i, j)]
        if not _is_count(q) or not 1 <= q <= T.n_i(j):
            problems.append(f"pair ({i},{j}): attachment {q!r} out of range 1..{T.n_i(j)}")
    if problems:
        return problems
    if T.k >= 2:
        for j in range(1, T.k + 1):
            if not any(T.attach[(i, j)] == 1 for i in range(1, T.k + 1) if i != j):
                problems.append(f"main path {j}: first vertex never targeted by an attachment")
    return problems


def template_arcs(T: IccTemplate) -> list[tuple[Coord, Coord]]:
    """Arcs of the built digraph in coordinate form (assumes a valid template)."""
    arcs: list[tuple[Coord, Coord]] = []
    for i in range(1, T.k + 1):
        for a in range(1, T.n_i(i)):
            arcs.append(((i, a), (i, a + 1)))
    for (i, j) in T.pairs():
        for a in range(1, T.n_ij(i, j)):
            arcs.append(((i, j, a), (i, j, a + 1)))
    for (i, j) in T.pairs():
        nij = T.n_ij(i, j)
        q = T.q(i, j)
        if nij >= 1:
            arcs.append((T.terminal(i), (i, j, 1)))
            arcs.append(((i, j, nij), (j, q)))
        else:
            arcs.append((T.terminal(i), (j, q)))
    return arcs


def canonical_labeling(T: IccTemplate) -> Labeling:
    """Number coordinates 1..n in their canonical order."""
    return {coord: idx for idx, coord in enumerate(T.coords(), start=1)}


def build_digraph(T: IccTemplate) -> tuple[Digraph, Labeling]:
    """Materialize the template as a standalone digraph on vertices 1..n.

    The returned digraph carries exactly the template's arcs; the labeling
    records which vertex realizes which coordinate.
    """
    problems = validate_template(T)
    if problems:
        raise InvalidTemplate(problems)
    lab = canonical_labeling(T)
    arcs = [(lab[a], lab[b]) for a, b in template_arcs(T)]
    return new_digraph(T.n, arcs), lab


def check_embedding(D: Digraph, T: IccTemplate, labeling: Labeling) -> bool:
    """True iff the labeling maps every template arc onto an arc of D.

    Extra arcs of D between labeled vertices are tolerated; the labeling
    must be injective and cover every coordinate.
    """
    problems = validate_template(T)
    if problems:
        raise InvalidTemplate(problems)
    coords = T.coords()
    try:
        ids = [labeling[c] for c in coords]
    except KeyError:
        return False
    if len(set(ids)) != len(ids):
        return False
    for v in ids:
        if not _is_count(v) or not 1 <= v <= D.n:
            return False
    return all((labeling[a], labeling[b]) in D.arcs for a, b in template_arcs(T))


def cycle_to_template(cycle: Cycle, split: int) -> tuple[IccTemplate, Labeling]:
    """View a directed cycle as two main paths closed by their terminals.

    The first `split` vertices form path 1 and the rest path 2; both
    attachments land on position 1, which reproduces the cycle's arcs.
    """
    L = len(cycle.vertices)
    if L < 2:
        raise InvalidTemplate(f"cycle must have at least 2 vertices, got {L}")
    if not 1 <= split < L:
        raise InvalidTemplate(f"split must lie in 1..{L - 1}, got {split}")
    T = IccTemplate(k=2, type_i=(split, L - split), attach={(1, 2): 1, (2, 1): 1})
    lab: Labeling = {}
    for a in range(1, split + 1):
        lab[(1, a)] = cycle.vertices[a - 1]
    for a in range(1, L - split + 1):
        lab[(2, a)] = cycle.vertices[split + a - 1]
    return T, lab


def clique_to_template(D: Digraph, vertices: Iterable[int]) -> tuple[IccTemplate, Labeling]:
    """View a bidirectionally complete vertex set as single-vertex main paths."""
    vs = sorted(set(vertices))
    if not vs:
        raise EmbeddingError("clique must contain at least one vertex")
    for v in vs:
        if not _is_count(v) or not 1 <= v <= D.n:
            raise InvalidDigraph(f"vertex id {v!r} out of range 1..{D.n}")
    for u in vs:
        for v in vs:
            if u != v and (u, v) not in D.arcs:
                raise EmbeddingError(f"vertices {vs} are not a clique: missing arc ({u},{v})")
    L = len(vs)
    attach = {(i, j): 1 for i in range(1, L + 1) for j in range(1, L + 1) if i != j}
    T = IccTemplate(k=L, type_i=(1,) * L, attach=attach)
    lab = {(i, 1): vs[i - 1] for i in range(1, L + 1)}
    return T, lab


def random_template(k: int, max_path_len: int = 4, density: float = 0.3, seed: int = 0) -> IccTemplate:
    """Draw a valid template; density is the chance a pair gets a connector."""
    if not _is_count(k) or k < 1:
        raise InvalidTemplate(f"k must be a positive integer, got {k!r}")
    if not _is_count(max_path_len) or max_path_len < 1:
        raise InvalidTemplate(f"max_path_len must be >= 1, got {max_path_len!r}")
    rng = random.Random(seed)
    type_i = tuple(rng.randint(1, max_path_len) for _ in range(k))
    pairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    type_ii: dict[tuple[int, int], int] = {}
    for pair in pairs:
        if rng.random() < density:
            type_ii[pair] = rng.randint(1, max_path_len)
    attach = {(i, j): rng.randint(1, type_i[j - 1]) for (i, j) in pairs}
    # every main path needs some attachment on its first vertex (k >= 2 only)
    for j in range(1, k + 1) if k >= 2 else ():
        others = [i for i in range(1, k + 1) if i != j]
        if not any(attach[(i, j)] == 1 for i in others):
            attach[(rng.choice(others), j)] = 1
    return IccTemplate(k=k, type_i=type_i, type_ii=type_ii, attach=attach)


def serialize_template(T: IccTemplate) -> str:
    """Canonical JSON with "i,j" pair keys; zero-length connectors are omitted."""
    type_ii = {f"{i},{j}": T.type_ii[(i, j)] for (i, j) in sorted(T.type_ii) if T.type_ii[(i, j)] > 0}
    attach = {f"{i},{j}": T.attach[(i, j)] for (i, j) in sorted(T.attach)}
    obj = {"k": T.k, "typeI": list(T.type_i), "typeII": type_ii, "attach": attach}
    return json.dumps(obj, separators=(",", ":"))


def _parse_pair_key(field_name: str, key: str) -> tuple[int, int]:
    parts = key.split(",")
    if len(parts) != 2:
        raise FormatError(f"field {field_name!r}: key {key!r} is not of the form \"i,j\"")
    try:
        i, j = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"field {field_name!r}: key {key!r} is not of the form \"i,j\"") from None
    return i, j


def parse_template(text: str) -> IccTemplate:
    """Parse the JSON template format; missing typeII entries default to 0."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise FormatError("top-level value must be an object")
    extra = set(obj) - {"k", "typeI", "typeII", "attach"}
    if extra:
        raise FormatError(f"unknown field {sorted(extra)[0]!r}")
    if "k" not in obj or "typeI" not in obj:
        raise FormatError("object must carry fields 'k' and 'typeI'")
    k = obj["k"]
    if not _is_count(k):
        raise FormatError(f"field 'k': expected an integer, got {k!r}")
    type_i = obj["typeI"]
    if not isinstance(type_i, list) or not all(_is_count(x) for x in type_i):
        raise FormatError("field 'typeI': expected a list of integers")
    type_ii: dict[tuple[int, int], int] = {}
    for key, val in obj.get("typeII", {}).items():
        if not _is_count(val):
            raise FormatError(f"field 'typeII': length for {key!r} must be an integer, got {val!r}")
        type_ii[_parse_pair_key("typeII", key)] = val
    attach: dict[tuple[int, int], int] = {}
    for key, val in obj.get("attach", {}).items():
        if not _is_count(val):
            raise FormatError(f"field 'attach': position for {key!r} must be an integer, got {val!r}")
        attach[_parse_pair_key("attach", key)] = val
    return IccTemplate(k=k, type_i=tuple(type_i), type_ii=type_ii, attach=attach)
