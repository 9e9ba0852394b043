"""Shared fixtures: the two reference digraphs with their hand-checked
templates, plus a deterministic corpus of random templates.
"""

import random
from pathlib import Path

import pytest

from iccover import IccTemplate, new_digraph, random_template
from iccover.codec import new_packet_vector, packet_bytes

DATA = Path(__file__).parent / "data"

# per-k (max_path_len, density) pairs tuned so n stays small without
# collapsing every draw to the same shape
CORPUS_PARAMS = {1: (8, 0.0), 2: (4, 0.35), 3: (3, 0.2), 4: (2, 0.1), 5: (2, 0.05)}
CORPUS_SIZE = 100
CORPUS_MAX_N = 12


def build_corpus(size=CORPUS_SIZE):
    templates = []
    seed = 0
    while len(templates) < size:
        k = (seed % 5) + 1
        T = random_template(k, *CORPUS_PARAMS[k], seed=seed)
        seed += 1
        if T.n <= CORPUS_MAX_N:
            templates.append(T)
    return templates


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def d1():
    return new_digraph(6, [(4, 1), (5, 2), (6, 3), (1, 5), (1, 6), (2, 4), (2, 6), (3, 4), (3, 5)])


@pytest.fixture(scope="session")
def d1_template():
    T = IccTemplate(
        3,
        (2, 2, 2),
        {},
        {(1, 2): 1, (1, 3): 1, (2, 1): 1, (2, 3): 1, (3, 1): 1, (3, 2): 1},
    )
    labeling = {(1, 1): 4, (1, 2): 1, (2, 1): 5, (2, 2): 2, (3, 1): 6, (3, 2): 3}
    return T, labeling


@pytest.fixture(scope="session")
def d2():
    return new_digraph(5, [(4, 2), (5, 3), (1, 4), (1, 5), (2, 1), (2, 5), (3, 1), (3, 4)])


@pytest.fixture(scope="session")
def d2_template():
    T = IccTemplate(
        3,
        (1, 2, 2),
        {},
        {(1, 2): 1, (1, 3): 1, (2, 1): 1, (2, 3): 1, (3, 1): 1, (3, 2): 1},
    )
    labeling = {(1, 1): 1, (2, 1): 4, (2, 2): 2, (3, 1): 5, (3, 2): 3}
    return T, labeling


def rand_packets(t, n, rng=None):
    """n packets of t random bits each, padding bits held at zero."""
    rng = rng or random.Random(0)
    width = packet_bytes(t)
    pad = 8 * width - t
    out = []
    for _ in range(n):
        raw = bytearray(rng.randbytes(width))
        if pad:
            raw[-1] &= 0xFF >> pad
        out.append(bytes(raw))
    return new_packet_vector(t, out)
