from __future__ import annotations

import random

from hypothesis import strategies as st

from enumkernel.graph import MultiGraph, RandomSpec, random_graph


def G(n: int, *edges) -> MultiGraph:
    """Graph on 1..n; edges are (u, v) or (u, v, mult)."""
    return MultiGraph(range(1, n + 1), edges)


def path(n: int) -> MultiGraph:
    return G(n, *[(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> MultiGraph:
    return G(n, *[(i, i % n + 1) for i in range(1, n + 1)])


def complete(n: int) -> MultiGraph:
    return G(n, *[(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def sets(*groups) -> set[frozenset]:
    return {frozenset(s) for s in groups}


def seeded_simple(seed: int, n_max: int = 10) -> MultiGraph:
    r = random.Random(seed)
    return random_graph(RandomSpec(r.randint(0, n_max), r.choice([0.1, 0.2, 0.3, 0.5, 0.7]), seed=seed))


def seeded_multi(seed: int, n_max: int = 8) -> MultiGraph:
    r = random.Random(seed)
    spec = RandomSpec(
        r.randint(1, n_max),
        r.choice([0.2, 0.35, 0.5, 0.7]),
        multi_prob=r.choice([0.0, 0.15, 0.3]),
        loop_prob=r.choice([0.0, 0.05, 0.15]),
        seed=seed,
    )
    return random_graph(spec)


@st.composite
def simple_graphs(draw, max_n: int = 8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return G(n, *chosen)


@st.composite
def multigraphs(draw, max_n: int = 7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n))
    g = G(n)
    for u, v in chosen:
        g.add_edge(u, v, 1 if u == v else draw(st.sampled_from([1, 1, 1, 2, 3])))
    return g


def random_crowned(seed: int, max_head: int = 6, small: bool = True):
    """Random crowned instance: head 1..h, crown h+1..h+c, matching i -> h+i."""
    from enumkernel.crownenum import CrownedInstance

    r = random.Random(seed)
    h = r.randint(1, max_head)
    c = h if small else h + r.randint(0, 3)
    head = range(1, h + 1)
    crown = range(h + 1, h + c + 1)
    g = MultiGraph(range(1, h + c + 1))
    for i in head:
        g.add_edge(i, h + i)
    p_hh, p_hc = r.choice([0.0, 0.2, 0.5]), r.choice([0.1, 0.3, 0.5])
    for u in head:
        for v in head:
            if u < v and r.random() < p_hh:
                g.add_edge(u, v)
        for c_ in crown:
            if c_ != h + u and r.random() < p_hc:
                g.add_edge(u, c_)
    slack = 0 if small else r.randint(0, c)
    return CrownedInstance(g, frozenset(head), frozenset(crown), {i: h + i for i in head}, slack)


def covers_of_size(g: MultiGraph, size: int) -> set[frozenset]:
    from itertools import combinations

    edges = [(u, v) for u, v, _ in g.edges()]
    return {frozenset(s) for s in combinations(g.vertices, size) if all(u in s or v in s for u, v in edges)}
