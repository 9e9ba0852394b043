import itertools

import pytest

from iccover.digraph import (
    Cycle,
    enumerate_cycles,
    full_mask,
    in_masks,
    induced_subdigraph,
    is_acyclic_mask,
    iter_mask_vertices,
    new_digraph,
    out_masks,
    parse_digraph,
    serialize_digraph,
    shortest_cycle_mask,
    side_info,
    strongly_connected_mask,
)
from iccover.errors import FormatError, InvalidDigraph


def test_new_digraph_basics():
    D = new_digraph(3, [(1, 2), (2, 3), (3, 1)])
    assert D.n == 3
    assert D.has_arc(1, 2) and not D.has_arc(2, 1)
    assert D.out_neighbors(1) == {2}
    assert D.in_neighbors(1) == {3}
    assert side_info(D, 2) == {3}


def test_new_digraph_deduplicates():
    D = new_digraph(2, [(1, 2), (1, 2)])
    assert len(D.arcs) == 1


@pytest.mark.parametrize(
    "n,arcs",
    [
        (-1, []),
        (2, [(1, 1)]),
        (2, [(0, 1)]),
        (2, [(1, 3)]),
        (2, [(1, "a")]),
    ],
)
def test_new_digraph_rejects(n, arcs):
    with pytest.raises(InvalidDigraph):
        new_digraph(n, arcs)


def test_empty_digraph_allowed():
    D = new_digraph(0, [])
    assert D.n == 0 and D.arcs == frozenset()


def test_cycle_too_short():
    with pytest.raises(InvalidDigraph):
        Cycle((1,))


def test_enumerate_cycles_triangle_with_chord():
    D = new_digraph(3, [(1, 2), (2, 3), (3, 1), (2, 1)])
    cycles, truncated = enumerate_cycles(D)
    assert not truncated
    found = {tuple(c.vertices) for c in cycles}
    assert found == {(1, 2), (1, 2, 3)}


def test_enumerate_cycles_truncates():
    # K4 has 20 simple cycles of length >= 2
    D = new_digraph(4, [(u, v) for u in range(1, 5) for v in range(1, 5) if u != v])
    cycles, truncated = enumerate_cycles(D, max_count=5)
    assert truncated and len(cycles) == 5
    full, truncated = enumerate_cycles(D)
    assert not truncated and len(full) == 20


def test_induced_subdigraph_relabels():
    D = new_digraph(5, [(1, 3), (3, 5), (5, 1), (2, 4)])
    sub, old_of_new = induced_subdigraph(D, [1, 3, 5])
    assert sub.n == 3
    assert sorted(old_of_new.values()) == [1, 3, 5]
    back = {old: new for new, old in old_of_new.items()}
    assert sub.arcs == frozenset({(back[1], back[3]), (back[3], back[5]), (back[5], back[1])})


def test_serialize_digraph_roundtrip_and_order():
    D = new_digraph(4, [(3, 1), (1, 2), (2, 3)])
    s = serialize_digraph(D)
    assert s == '{"n":4,"arcs":[[1,2],[2,3],[3,1]]}'
    assert parse_digraph(s) == D


@pytest.mark.parametrize(
    "text",
    [
        "",
        "[]",
        '{"n":2}',
        '{"arcs":[]}',
        '{"n":2,"arcs":[[1,2]],"extra":1}',
        '{"n":2,"arcs":[[1,2,3]]}',
        '{"n":2,"arcs":[[1,1]]}',
        '{"n":"2","arcs":[]}',
    ],
)
def test_parse_digraph_rejects(text):
    with pytest.raises((FormatError, InvalidDigraph)):
        parse_digraph(text)


def brute_acyclic(D, vertices):
    for order in itertools.permutations(vertices):
        pos = {v: i for i, v in enumerate(order)}
        if all(pos[u] < pos[v] for (u, v) in D.arcs if u in pos and v in pos):
            return True
    return False


def test_mask_helpers_against_brute_force():
    import random

    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 6)
        arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < 0.4]
        D = new_digraph(n, arcs)
        out_m, in_m = out_masks(D), in_masks(D)
        for mask in range(1, full_mask(n) + 1):
            verts = list(iter_mask_vertices(mask))
            assert verts == sorted(verts)
            assert is_acyclic_mask(in_m, mask) == brute_acyclic(D, verts)
            cyc = shortest_cycle_mask(out_m, mask)
            if cyc is None:
                assert is_acyclic_mask(in_m, mask)
            else:
                assert not is_acyclic_mask(in_m, mask)
                assert set(cyc) <= set(verts)
                # it really is a cycle, and no strictly shorter one exists
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    assert D.has_arc(a, b)
                for size in range(2, len(cyc)):
                    for sub in itertools.permutations(verts, size):
                        assert not all(
                            D.has_arc(a, b) for a, b in zip(sub, sub[1:] + sub[:1])
                        )


def test_strongly_connected_mask():
    D = new_digraph(4, [(1, 2), (2, 1), (3, 4)])
    out_m, in_m = out_masks(D), in_masks(D)
    assert strongly_connected_mask(out_m, in_m, 0b0011)
    assert not strongly_connected_mask(out_m, in_m, 0b1100)
    assert not strongly_connected_mask(out_m, in_m, 0b0111)
    assert strongly_connected_mask(out_m, in_m, 0b0001)
