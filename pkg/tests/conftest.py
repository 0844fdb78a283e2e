import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from tihany_kit.harness.families import multicycle, petersen, random_multigraph, shannon_triangle
from tihany_kit.multigraph import Multigraph


@st.composite
def multigraphs(draw, max_n=6, max_mult=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = []
    for u, v in itertools.combinations(range(n), 2):
        m = draw(st.integers(0, max_mult))
        if m:
            pairs.append((u, v, m))
    return Multigraph.from_edge_list(pairs, vertex_count=n)


def random_graphs(count, seed, n_range=(2, 7), max_mult=3, prob=0.6):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(*n_range))
        out.append(random_multigraph(n, max_mult, prob, rng))
    return out


@pytest.fixture
def c5x2():
    return multicycle(5, 2)


@pytest.fixture
def c5x3():
    return multicycle(5, 3)


@pytest.fixture
def triangle():
    return shannon_triangle(1)


@pytest.fixture
def pete():
    return petersen()


def class_two_graphs(seed, lengths=(5, 7), chord_prob=0.15):
    """Endless stream of odd multicycles with sparse chords and χ' > ω'."""
    from tihany_kit.chromatic import chromatic_index

    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.choice(lengths))
        pairs = [(i, (i + 1) % n, int(rng.integers(1, 5))) for i in range(n)]
        for u, v in itertools.combinations(range(n), 2):
            if (v - u) % n not in (1, n - 1) and rng.random() < chord_prob:
                pairs.append((u, v, int(rng.integers(1, 3))))
        g = Multigraph.from_edge_list(pairs, vertex_count=n)
        chi = chromatic_index(g)
        if chi > g.stats().omega_prime:
            yield g, chi
