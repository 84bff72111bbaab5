import pytest

from conftest import G, complete, cycle, path, seeded_simple, sets
from enumkernel.crown import CrownDecomposition, NoHalfIntegralCover, nt_decompose
from enumkernel.graph import MultiGraph
from enumkernel.oracle import brute_vc, compare, iter_vc
from enumkernel.vc import (
    CrownApplied,
    IsolatedRemoved,
    NoInstance,
    VcKernel,
    enumerate_kernel_stream,
    enumerate_kernel_vc,
    vc_compress,
    vc_enumerate,
    vc_lift,
    vc_lift_crown,
    vc_lift_isolated,
    vc_rule_crown,
    vc_rule_isolated,
)


def test_rule_isolated_examples():
    g, k, e = vc_rule_isolated(G(3, (2, 3)), 1)
    assert g == MultiGraph([2, 3], [(2, 3)]) and k == 1 and e == IsolatedRemoved(1, 1)
    assert vc_rule_isolated(path(3), 2) is None
    h, k = G(3), 0
    while (step := vc_rule_isolated(h, k)) is not None:
        h, k, _ = step
    assert len(h) == 0


def test_rule_crown_examples():
    star = G(4, (1, 2), (1, 3), (1, 4))
    d = CrownDecomposition(frozenset({2, 3, 4}), frozenset({1}), frozenset(), {1: 2})
    g, k, _ = vc_rule_crown(star, 2, d)
    assert len(g) == 0 and k == 1

    g, k, _ = vc_rule_crown(path(3), 1, nt_decompose(path(3), 1))
    assert len(g) == 0 and k == 0

    d = CrownDecomposition(frozenset({1}), frozenset({2}), frozenset({3, 4, 5}), {2: 1})
    g, k, e = vc_rule_crown(path(5), 2, d)
    assert g == MultiGraph([3, 4, 5], [(3, 4), (4, 5)]) and k == 1
    assert e.head_body_edges == {(2, 3)}


def test_rule_crown_rejects_invalid():
    d = CrownDecomposition(frozenset({1}), frozenset({2}), frozenset({3}), {})
    with pytest.raises(ValueError):
        vc_rule_crown(path(3), 1, d)


def test_compress_examples():
    k = vc_compress(path(3), 1)
    assert isinstance(k, VcKernel) and len(k.graph) == 0 and k.k == 0
    assert [type(e) for e in k.trace] == [CrownApplied]
    assert isinstance(vc_compress(complete(5), 2), NoInstance)
    k = vc_compress(cycle(4), 2)
    assert k.graph == cycle(4) and k.trace == []
    assert isinstance(vc_compress(path(2), -1), NoInstance)


def test_compress_rejects_multigraph():
    with pytest.raises(ValueError):
        vc_compress(G(2, (1, 2, 2)), 1)


def test_lift_crown_examples():
    _, _, e = vc_rule_crown(path(3), 1, nt_decompose(path(3), 1))
    assert set(vc_lift_crown(e, frozenset())) == sets({2})

    d = CrownDecomposition(frozenset({1}), frozenset({2}), frozenset({3, 4, 5}), {2: 1})
    _, _, e = vc_rule_crown(path(5), 2, d)
    assert set(vc_lift_crown(e, frozenset({4}))) == sets({2, 4})


def test_lift_crown_sizes_separate_slack_levels():
    star = G(4, (1, 2), (1, 3), (1, 4))
    d = CrownDecomposition(frozenset({2, 3, 4}), frozenset({1}), frozenset(), {1: 2})
    _, _, e = vc_rule_crown(star, 3, d)
    out = list(vc_lift_crown(e, frozenset()))
    assert len(out) == len(set(out))
    assert set(out) == {frozenset(s) for s in iter_vc(star, 3)}


def test_lift_isolated():
    e = IsolatedRemoved(5, 2)
    assert list(vc_lift_isolated(e, frozenset({1}))) == [{1}, {1, 5}]
    assert list(vc_lift_isolated(e, frozenset({1, 2}))) == [{1, 2}]


def test_enumerate_examples():
    out = list(vc_enumerate(path(3), 2))
    assert set(out) == sets({2}, {1, 2}, {2, 3}, {1, 3}) and len(out) == 4
    assert list(vc_enumerate(cycle(3), 1)) == []
    out = list(vc_enumerate(G(3), 2))
    assert len(out) == len(set(out)) == 7


@pytest.mark.parametrize("seed", range(120))
def test_enumerate_matches_oracle(seed):
    g = seeded_simple(seed, 10)
    for k in range(len(g) + 1):
        assert compare(list(vc_enumerate(g, k)), brute_vc(g, k)), (seed, k)


@pytest.mark.parametrize("seed", range(60))
def test_kernel_enumerator_matches_oracle(seed):
    g = seeded_simple(seed, 10)
    for k in range(len(g) + 1):
        assert compare(list(enumerate_kernel_vc(g, k)), brute_vc(g, k))


def _crown_instances(limit):
    seed = 0
    while limit:
        seed += 1
        g = seeded_simple(seed, 12)
        g = g.subgraph([v for v in g.vertices if g.adj[v]])
        for k in range(1, len(g) // 2 + 1):
            if len(g) < 2 * k + 1:
                continue
            d = nt_decompose(g, k)
            if isinstance(d, NoHalfIntegralCover):
                continue
            yield g, k, d
            limit -= 1
            break


@pytest.mark.parametrize("g, k, d", list(_crown_instances(40)))
def test_crown_rule_compose_and_compare(g, k, d):
    g2, k2, e = vc_rule_crown(g, k, d)
    lifted = [t for s in iter_vc(g2, k2) for t in vc_lift_crown(e, frozenset(s))]
    assert compare(lifted, brute_vc(g, k))


@pytest.mark.parametrize("seed", range(60))
def test_extension_only(seed):
    g = seeded_simple(seed, 10)
    for k in range(len(g) + 1):
        kern = vc_compress(g, k)
        if isinstance(kern, NoInstance):
            assert brute_vc(g, k).count == 0
            continue
        ks = set(enumerate_kernel_vc(kern.graph, kern.k))
        verts = set(kern.graph.adj)
        for s in ks:
            for t in vc_lift(kern.trace, s):
                assert t & verts == s


@pytest.mark.parametrize("seed", range(200))
def test_kernel_size_bound(seed):
    import random

    from enumkernel.graph import RandomSpec, random_graph

    r = random.Random(seed)
    g = random_graph(RandomSpec(r.randint(5, 40), r.choice([0.05, 0.1, 0.3]), seed=seed))
    k = r.randint(1, 8)
    kern = vc_compress(g, k)
    if isinstance(kern, VcKernel):
        assert len(kern.graph) <= 2 * kern.k and kern.k <= k


def test_stream_is_lazy_on_huge_solution_space():
    m = 24
    g = G(2 * m, *[(i, m + i) for i in range(1, m + 1)])
    first = next(vc_enumerate(g, m))
    assert len(first) == m
    kern = vc_compress(g, m, decide=False)
    assert next(enumerate_kernel_stream(kern)) == first
