import random

import pytest

from iccover.digraph import new_digraph
from iccover.errors import EmbeddingError, SizeRefusal
from iccover.finder import DEFAULT_EXACT_BOUND, find_icc_subgraphs, make_plan
from iccover.schemes import gap_family
from iccover.template import build_digraph, check_embedding


def assert_plan_shape(D, plan):
    seen = set()
    for T, lab in plan.pieces:
        assert check_embedding(D, T, lab)
        vs = set(lab.values())
        assert not vs & seen
        seen |= vs
    assert seen | set(plan.uncovered) == set(range(1, D.n + 1))
    assert not seen & set(plan.uncovered)


def test_d1_single_piece(d1):
    plan = find_icc_subgraphs(d1)
    assert_plan_shape(d1, plan)
    assert len(plan.pieces) == 1 and plan.uncovered == ()
    T, lab = plan.pieces[0]
    assert T.k == 3 and plan.savings == 2


def test_d2_single_piece(d2):
    plan = find_icc_subgraphs(d2)
    assert_plan_shape(d2, plan)
    assert plan.savings == 2 and plan.pieces[0][0].k == 3


def test_two_disjoint_cycles():
    D = new_digraph(8, [(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 8), (8, 5)])
    plan = find_icc_subgraphs(D)
    assert_plan_shape(D, plan)
    assert plan.savings == 2 and len(plan.pieces) == 2
    assert all(T.k == 2 for T, _ in plan.pieces)


def test_acyclic_leaves_everything_uncovered():
    D = new_digraph(5, [(1, 2), (2, 3), (3, 4), (1, 5)])
    plan = find_icc_subgraphs(D)
    assert plan.pieces == () and plan.uncovered == (1, 2, 3, 4, 5)
    assert plan.savings == 0


def test_empty_digraph():
    plan = find_icc_subgraphs(new_digraph(0, []))
    assert plan.pieces == () and plan.uncovered == () and plan.savings == 0


def test_corpus_recovers_planned_savings(corpus):
    # a spanning k-path piece exists by construction, so the exact cover
    # must save at least k-1
    for T in corpus:
        D, _ = build_digraph(T)
        plan = find_icc_subgraphs(D)
        assert_plan_shape(D, plan)
        assert plan.savings >= T.k - 1


def test_exact_refuses_oversized():
    D = gap_family(8)
    assert D.n == 16 > DEFAULT_EXACT_BOUND
    with pytest.raises(SizeRefusal) as exc:
        find_icc_subgraphs(D)
    assert "greedy" in str(exc.value)
    g = find_icc_subgraphs(D, mode="greedy")
    assert 0 < g.savings <= 7
    # a raised bound restores the exact search
    D7 = gap_family(7)
    assert find_icc_subgraphs(D7, exact_bound=14).savings == 6


def test_bad_mode():
    with pytest.raises(ValueError):
        find_icc_subgraphs(new_digraph(1, []), mode="fast")


def test_greedy_never_beats_exact():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(1, 8)
        arcs = [
            (u, v)
            for u in range(1, n + 1)
            for v in range(1, n + 1)
            if u != v and rng.random() < 0.3
        ]
        D = new_digraph(n, arcs)
        exact = find_icc_subgraphs(D)
        greedy = find_icc_subgraphs(D, mode="greedy")
        assert_plan_shape(D, exact)
        assert_plan_shape(D, greedy)
        assert greedy.savings <= exact.savings


def test_make_plan_rejects_overlap(d1, d1_template):
    T, lab = d1_template
    with pytest.raises(EmbeddingError):
        make_plan(d1, [(T, lab), (T, lab)])


def test_make_plan_orders_pieces():
    D = new_digraph(8, [(5, 6), (6, 7), (7, 8), (8, 5), (1, 2), (2, 3), (3, 4), (4, 1)])
    from iccover.template import cycle_to_template
    from iccover.digraph import Cycle

    hi = cycle_to_template(Cycle((5, 6, 7, 8)), 2)
    lo = cycle_to_template(Cycle((1, 2, 3, 4)), 2)
    plan = make_plan(D, [hi, lo])
    firsts = [min(lab.values()) for _, lab in plan.pieces]
    assert firsts == sorted(firsts)
