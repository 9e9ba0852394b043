import pytest

from iccover.digraph import Cycle, new_digraph, side_info
from iccover.errors import EmbeddingError, FormatError, InvalidDigraph, InvalidTemplate
from iccover.template import (
    IccTemplate,
    build_digraph,
    canonical_labeling,
    check_embedding,
    clique_to_template,
    cycle_to_template,
    parse_template,
    random_template,
    serialize_template,
    template_arcs,
    validate_template,
)

GOOD = IccTemplate(
    2,
    (2, 1),
    {(1, 2): 1},
    {(1, 2): 1, (2, 1): 1},
)


def test_good_template_properties():
    assert validate_template(GOOD) == []
    assert GOOD.n == 4
    assert GOOD.n_i(1) == 2 and GOOD.n_ij(1, 2) == 1 and GOOD.n_ij(2, 1) == 0
    assert GOOD.q(1, 2) == 1
    assert GOOD.pairs() == [(1, 2), (2, 1)]
    assert GOOD.terminal(1) == (1, 2) and GOOD.terminal(2) == (2, 1)
    assert len(GOOD.coords()) == 4


def test_single_path_template():
    # k=1 has no pairs and no landing condition
    T = IccTemplate(1, (3,))
    assert validate_template(T) == []
    D, lab = build_digraph(T)
    assert D.n == 3 and D.arcs == frozenset({(1, 2), (2, 3)})


@pytest.mark.parametrize(
    "T",
    [
        IccTemplate(0, ()),
        IccTemplate(2, (1,)),
        IccTemplate(2, (0, 1), {}, {(1, 2): 1, (2, 1): 1}),
        # missing attach entry
        IccTemplate(2, (1, 1), {}, {(1, 2): 1}),
        # attach position beyond the target path
        IccTemplate(2, (1, 1), {}, {(1, 2): 2, (2, 1): 1}),
        # nobody lands on path 2's first vertex
        IccTemplate(3, (1, 2, 1), {}, {(1, 2): 2, (1, 3): 1, (2, 1): 1, (2, 3): 1, (3, 1): 1, (3, 2): 2}),
        # negative connector length
        IccTemplate(2, (1, 1), {(1, 2): -1}, {(1, 2): 1, (2, 1): 1}),
        # stray connector key
        IccTemplate(2, (1, 1), {(1, 1): 1}, {(1, 2): 1, (2, 1): 1}),
        # stray attach key
        IccTemplate(2, (1, 1), {}, {(1, 2): 1, (2, 1): 1, (3, 1): 1}),
    ],
)
def test_validate_rejects(T):
    assert validate_template(T) != []


def test_template_arcs_counts():
    # one internal path arc, entry + landing for the (1,2) connector,
    # and the direct (2,1) attachment
    assert len(template_arcs(GOOD)) == 4


def test_build_digraph_canonical():
    D, lab = build_digraph(GOOD)
    assert lab == canonical_labeling(GOOD)
    assert D.n == GOOD.n
    assert sorted(lab.values()) == list(range(1, GOOD.n + 1))
    assert check_embedding(D, GOOD, lab)
    # the terminal of each main path sees the first vertex of every other
    assert lab[(2, 1)] in side_info(D, lab[GOOD.terminal(1)]) or GOOD.n_ij(1, 2) > 0


def test_check_embedding_rejects():
    D, lab = build_digraph(GOOD)
    bad = dict(lab)
    v = bad.pop(GOOD.terminal(1))
    assert not check_embedding(D, GOOD, bad)  # misses a coordinate
    bad[GOOD.terminal(1)] = bad[(1, 1)]
    assert not check_embedding(D, GOOD, bad)  # not injective
    # break an arc: swap two labels
    swapped = dict(lab)
    swapped[(1, 1)], swapped[GOOD.terminal(1)] = swapped[GOOD.terminal(1)], swapped[(1, 1)]
    assert not check_embedding(D, GOOD, swapped)
    # extra host arcs are fine
    bigger = new_digraph(D.n, set(D.arcs) | {(lab[(1, 1)], lab[(2, 1)])})
    assert check_embedding(bigger, GOOD, lab)


@pytest.mark.parametrize("L", range(2, 8))
def test_cycle_to_template(L):
    cyc = Cycle(tuple(range(1, L + 1)))
    for split in range(1, L):
        T, lab = cycle_to_template(cyc, split)
        assert validate_template(T) == []
        assert T.k == 2 and T.n == L
        D = new_digraph(L, [(i, i % L + 1) for i in range(1, L + 1)])
        assert check_embedding(D, T, lab)


def test_cycle_to_template_bad_split():
    cyc = Cycle((1, 2, 3))
    with pytest.raises(InvalidTemplate):
        cycle_to_template(cyc, 0)
    with pytest.raises(InvalidTemplate):
        cycle_to_template(cyc, 3)


@pytest.mark.parametrize("L", range(1, 7))
def test_clique_to_template(L):
    D = new_digraph(L, [(u, v) for u in range(1, L + 1) for v in range(1, L + 1) if u != v])
    T, lab = clique_to_template(D, range(1, L + 1))
    assert validate_template(T) == []
    assert T.k == L and T.n == L
    assert all(ni == 1 for ni in T.type_i)
    assert check_embedding(D, T, lab)


def test_clique_to_template_rejects():
    D = new_digraph(3, [(1, 2), (2, 1), (2, 3)])
    with pytest.raises(EmbeddingError):
        clique_to_template(D, [1, 2, 3])
    with pytest.raises(InvalidDigraph):
        clique_to_template(D, [1, 7])


def test_random_template_valid_and_deterministic(corpus):
    for T in corpus:
        assert validate_template(T) == []
    ks = {T.k for T in corpus}
    assert ks == {1, 2, 3, 4, 5}
    a = random_template(3, 3, 0.2, seed=17)
    b = random_template(3, 3, 0.2, seed=17)
    assert a == b


def test_serialize_template_roundtrip(corpus):
    for T in corpus[:25]:
        s = serialize_template(T)
        back = parse_template(s)
        assert back == T
        assert serialize_template(back) == s


@pytest.mark.parametrize(
    "text",
    [
        "",
        "[1,2]",
        '{"k":1}',
        '{"k":1,"typeI":[1],"typeII":{"bogus":1},"attach":{}}',
        '{"k":1,"typeI":[1],"typeII":{"1,2":"x"},"attach":{}}',
        '{"k":2,"typeI":[1,1],"attach":{"1,2":1,"2,1":1},"x":0}',
    ],
)
def test_parse_template_rejects(text):
    with pytest.raises(FormatError):
        parse_template(text)


def test_parse_template_defers_semantic_checks():
    # shape-valid JSON parses even when the template itself is broken
    T = parse_template('{"k":2,"typeI":[1,1],"attach":{"1,2":1}}')
    assert validate_template(T) != []
