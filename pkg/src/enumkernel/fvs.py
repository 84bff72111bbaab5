"""Polynomial-delay enumeration kernel for feedback vertex set.

Compression exhausts the basic rules (1-5), then for every vertex of too high
degree runs the flower / hitting-set machinery and the auxiliary-graph rules
(6-8). Each application is logged with what its lifting needs; lifting
replays the log backwards, depth first.

Rule numbering::

    1.i   cap multiplicities at two               identity lifting
    1.ii  drop a vertex of degree <= 1            optionally re-add it
    1.iii k+2 common neighbours -> double edge    identity lifting
    1.iv  loop or k+1 double edges -> mandatory   add the vertex
    2     contract an induced degree-2 vertex     swap / extend
    3     twin degree-2 triangle vertices         swap / extend
    4     pending double edges                    centre or its petals
    5     multi-flag a-b with common degree-2 set several shapes
    6     flower of order k+1 -> mandatory        add the vertex
    7     hub adjacent to k+2 components          identity lifting
    8     component only sees double-edge heads   identity lifting
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Union

from .flower import (
    AuxBipartite,
    Flower,
    FlowerNoInstance,
    build_aux,
    flower_or_hitting,
    two_approx_fvs,
)
from .graph import MultiGraph, is_forest
from .lifting import compose
from .steps import StepCounter
from .vc import NoInstance, _subsets_within

log = logging.getLogger(__name__)


def degree_bound(k: int) -> int:
    return 3 * k * (k + 1) + 5 * k


def size_bound(k: int) -> int:
    return 3 * k**3 + 8 * k**2


# trace entries


@dataclass(frozen=True)
class Basic1:
    case: str  # "i", "ii", "iii" or "iv"
    vertices: tuple[int, ...]
    k_before: int
    k_after: int


@dataclass(frozen=True)
class ShortPath:
    a: int
    x: int
    b: int
    k: int
    graph: MultiGraph = field(hash=False, compare=False)  # pre-rule graph


@dataclass(frozen=True)
class TwinTriangle:
    u: int
    x: int
    y: int
    k: int


@dataclass(frozen=True)
class PendingDoubles:
    u: int
    petals: tuple[int, ...]
    k_before: int
    graph: MultiGraph = field(hash=False, compare=False)  # pre-rule graph


@dataclass(frozen=True)
class MultiFlag:
    a: int
    b: int
    flags: tuple[int, ...]
    double_ab: bool
    k_before: int
    graph: MultiGraph = field(hash=False, compare=False)  # pre-rule graph


@dataclass(frozen=True)
class FlowerRemoved:
    v: int
    k_before: int


@dataclass(frozen=True)
class AuxDouble:
    u: int
    v: int
    k: int


@dataclass(frozen=True)
class EdgeDelete:
    v: int
    w: int
    k: int


FvsEntry = Union[Basic1, ShortPath, TwinTriangle, PendingDoubles, MultiFlag, FlowerRemoved, AuxDouble, EdgeDelete]


@dataclass
class FvsKernel:
    graph: MultiGraph
    k: int
    trace: list[FvsEntry]


# rule detection and application (in place on a working graph)


def _find_basic(g: MultiGraph, k: int):
    for u, v, m in g.edges():
        if u != v and m >= 3:
            return "i", (u, v)
    for v in sorted(g.adj):
        if g.degree(v) <= 1:
            return "ii", (v,)
    hit = next(_common_neighbour_pairs(g, k + 2), None)
    if hit is not None:
        return "iii", hit
    for v in sorted(g.adj):
        if g.has_loop(v) or sum(1 for w, m in g.adj[v].items() if w != v and m >= 2) >= k + 1:
            return "iv", (v,)
    return None


def _common_neighbour_pairs(g: MultiGraph, need: int) -> Iterator[tuple[int, int]]:
    """Pairs with at least ``need`` common neighbours and multiplicity below two, in order."""
    big = [v for v in sorted(g.adj) if len(g.adj[v]) - (v in g.adj[v]) >= need]
    if len(big) < 2:
        return
    bit = {v: 1 << i for i, v in enumerate(sorted(g.adj))}
    mask = {v: sum(bit[w] for w in g.adj[v] if w != v) for v in big}
    for i, u in enumerate(big):
        mu = mask[u]
        for v in big[i + 1:]:
            if (mu & mask[v]).bit_count() >= need and g.mul(u, v) < 2:
                yield u, v


def _apply_basic(g: MultiGraph, k: int, case: str, verts: tuple[int, ...]) -> tuple[int, Basic1]:
    if case == "i":
        g.set_multiplicity(*verts, 2)
        return k, Basic1(case, verts, k, k)
    if case == "ii":
        g.remove_vertex(verts[0])
        return k, Basic1(case, verts, k, k)
    if case == "iii":
        g.set_multiplicity(*verts, 2)
        return k, Basic1(case, verts, k, k)
    g.remove_vertex(verts[0])
    return k - 1, Basic1(case, verts, k, k - 1)


def _find_short_path(g: MultiGraph):
    for x in sorted(g.adj):
        if g.degree(x) != 2:
            continue
        nb = g.neighbors(x)
        if len(nb) != 2:
            continue
        a, b = sorted(nb)
        if not g.has_edge(a, b):
            return a, x, b
    return None


def _find_twin_triangle(g: MultiGraph):
    for x in sorted(g.adj):
        if g.degree(x) != 2:
            continue
        nb = g.neighbors(x)
        if len(nb) != 2:
            continue
        for y in sorted(nb):
            if y <= x or g.degree(y) != 2:
                continue
            (u,) = nb - {y}
            if g.neighbors(y) == {u, x}:
                return u, x, y
    return None


def _find_pending_doubles(g: MultiGraph):
    for u in sorted(g.adj):
        petals = tuple(sorted(w for w, m in g.adj[u].items() if w != u and m == 2 and g.degree(w) == 2))
        if petals:
            return u, petals
    return None


def _find_multiflag(g: MultiGraph):
    for b in sorted(g.adj):
        if g.has_loop(b):
            continue
        nb = g.neighbors(b)
        for a in sorted(nb):
            flags = nb - {a}
            if not flags:
                continue
            if all(g.degree(x) == 2 and g.neighbors(x) == {a, b} for x in flags):
                return a, b, tuple(sorted(flags))
    return None


def _apply_short_path(g, k, hit):
    a, x, b = hit
    entry = ShortPath(a, x, b, k, g.copy())
    g.contract(x, a)
    return k, entry


def _apply_twin(g, k, hit):
    u, x, y = hit
    g.remove_vertex(y)
    g.set_multiplicity(u, x, 2)
    return k, TwinTriangle(u, x, y, k)


def _apply_pending(g, k, hit):
    u, petals = hit
    entry = PendingDoubles(u, petals, k, g.copy())
    g.remove_vertices((u, *petals))
    return k - 1, entry


def _apply_multiflag(g, k, hit):
    a, b, flags = hit
    entry = MultiFlag(a, b, flags, g.mul(a, b) >= 2, k, g.copy())
    g.remove_vertices((a, b, *flags))
    return k - 1, entry


_STRUCTURAL = (
    (_find_short_path, _apply_short_path),
    (_find_twin_triangle, _apply_twin),
    (_find_pending_doubles, _apply_pending),
    (_find_multiflag, _apply_multiflag),
)


def apply_basic_rules(g: MultiGraph, k: int) -> list[tuple[int, FvsEntry]]:
    """Apply the first applicable rule among 1-5 in place.

    Doubling an edge under 1.iii changes no common-neighbour count and cannot
    enable 1.i or 1.ii, so all pending 1.iii pairs are applied as one batch,
    in the order single applications would pick them. Empty when nothing applies.
    """
    hit = _find_basic(g, k)
    if hit is not None:
        if hit[0] == "iii":
            pairs = list(_common_neighbour_pairs(g, k + 2))
            return [_apply_basic(g, k, "iii", p) for p in pairs]
        return [_apply_basic(g, k, *hit)]
    for find, apply in _STRUCTURAL:
        hit = find(g)
        if hit is not None:
            return [apply(g, k, hit)]
    return []


# single-rule entry points; each works on a copy and returns (graph, k, entry) or None


def _on_copy(find, apply):
    def rule(g: MultiGraph, k: int):
        h = g.copy()
        hit = find(h)
        if hit is None:
            return None
        k2, entry = apply(h, k, hit)
        return h, k2, entry
    return rule


def fvs_rule_basic(g: MultiGraph, k: int):
    h = g.copy()
    hit = _find_basic(h, k)
    if hit is None:
        return None
    k2, entry = _apply_basic(h, k, *hit)
    return h, k2, entry


fvs_rule_short_path = _on_copy(_find_short_path, _apply_short_path)
fvs_rule_twin_triangle = _on_copy(_find_twin_triangle, _apply_twin)
fvs_rule_pending_doubles = _on_copy(_find_pending_doubles, _apply_pending)
fvs_rule_multiflag = _on_copy(_find_multiflag, _apply_multiflag)


def fvs_rule_flower(g: MultiGraph, k: int, v: int, flower: Flower | None = None):
    if flower is not None and (flower.center != v or flower.order < k + 1):
        raise ValueError("flower certificate does not match")
    h = g.copy()
    h.remove_vertex(v)
    return h, k - 1, FlowerRemoved(v, k)


def _aux_double_candidate(g: MultiGraph, k: int, aux: AuxBipartite) -> int | None:
    for u in sorted(aux.head):
        if g.mul(u, aux.center) < 2 and len(aux.adjacency[u]) >= k + 2:
            return u
    return None


def _edge_delete_candidate(g: MultiGraph, aux: AuxBipartite) -> int | None:
    for i in range(len(aux.components)):
        if aux.component_neighbors(g, i) - {aux.center} <= aux.double_heads:
            return i
    return None


def fvs_rule_aux_double(g: MultiGraph, k: int, aux: AuxBipartite, v: int):
    u = _aux_double_candidate(g, k, aux)
    if u is None:
        return None
    h = g.copy()
    h.set_multiplicity(u, v, 2)
    return h, k, AuxDouble(u, v, k)


def fvs_rule_edge_delete(g: MultiGraph, k: int, aux: AuxBipartite, v: int):
    i = _edge_delete_candidate(g, aux)
    if i is None:
        return None
    h = g.copy()
    w = aux.attach[i]
    h.remove_edge(v, w)
    return h, k, EdgeDelete(v, w, k)


# compression


def _degree_phase(g: MultiGraph, k: int, v: int, trace: list[FvsEntry]) -> int | NoInstance:
    """Rules 6-8 for one high-degree vertex ``v``; returns the new budget."""
    X = two_approx_fvs(g)
    if len(X) > 2 * k:
        return NoInstance(f"2-approximate solution has {len(X)} > 2k vertices")
    res = flower_or_hitting(g, X, v, k)
    if isinstance(res, FlowerNoInstance):
        return NoInstance(res.reason)
    if isinstance(res, Flower):
        g.remove_vertex(v)
        trace.append(FlowerRemoved(v, k))
        return k - 1
    hv = res.hitting
    aux = build_aux(g, v, hv, k)
    if not aux.meets_bound(k):
        log.warning("aux structure at %d has only %d components", v, len(aux.components))
    applied = 0
    while (u := _aux_double_candidate(g, k, aux)) is not None:
        g.set_multiplicity(u, v, 2)
        trace.append(AuxDouble(u, v, k))
        applied += 1
        aux = build_aux(g, v, hv, k)
    while (i := _edge_delete_candidate(g, aux)) is not None:
        w = aux.attach[i]
        g.remove_edge(v, w)
        trace.append(EdgeDelete(v, w, k))
        applied += 1
        aux = build_aux(g, v, hv, k)
    if not applied:
        raise RuntimeError(f"no rule reduces vertex {v} of degree {g.degree(v)} > {degree_bound(k)}")
    return k


@dataclass
class CompressStats:
    applications: dict[str, int] = field(default_factory=dict)
    exact_checks: int = 0
    bound_violation: bool = False


def _tag(entry: FvsEntry) -> str:
    if isinstance(entry, Basic1):
        return "1." + entry.case
    return {
        ShortPath: "2", TwinTriangle: "3", PendingDoubles: "4", MultiFlag: "5",
        FlowerRemoved: "6", AuxDouble: "7", EdgeDelete: "8",
    }[type(entry)]


def fvs_compress(g: MultiGraph, k: int, decide: bool = True, stats: CompressStats | None = None) -> NoInstance | FvsKernel:
    """Kernelize ``(g, k)``.

    At quiescence the instance is rejected when ``n > k(3*maxdeg - 3)``,
    which the minimum-degree counting argument justifies. A kernel that still
    exceeds ``3k^3 + 8k^2`` vertices, or any kernel when ``decide`` is set, is
    probed for a solution and rejected when none exists.
    """
    g = g.copy()
    trace: list[FvsEntry] = []
    guard = 0
    limit = 50 * (len(g) + g.total_multiplicity() + 10) ** 2
    while True:
        guard += 1
        if guard > limit:
            raise RuntimeError("reduction loop failed to terminate")
        if k < 0:
            return NoInstance("negative budget")
        steps = apply_basic_rules(g, k)
        if steps:
            for k, entry in steps:
                trace.append(entry)
            continue
        bound = degree_bound(k)
        high = next((v for v in sorted(g.adj) if g.degree(v) > bound), None)
        if high is None:
            break
        before = len(trace)
        res = _degree_phase(g, k, high, trace)
        if isinstance(res, NoInstance):
            return res
        k = res
        assert len(trace) > before
    if stats is not None:
        for e in trace:
            t = _tag(e)
            stats.applications[t] = stats.applications.get(t, 0) + 1
    if k < 0:
        return NoInstance("negative budget")
    n = len(g)
    if n and n > k * (3 * g.max_degree() - 3):
        return NoInstance(f"{n} vertices exceed k(3*maxdeg-3) at minimum degree two")
    if decide or n > size_bound(k):
        if stats is not None:
            stats.exact_checks += 1
        if next(enumerate_kernel_fvs(g, k), None) is None:
            return NoInstance("kernel has no feedback vertex set within budget")
        if n > size_bound(k):
            log.warning("kernel with %d vertices exceeds 3k^3+8k^2 at k=%d but is a YES-instance", n, k)
            if stats is not None:
                stats.bound_violation = True
    return FvsKernel(g, k, trace)


# lifting


def _subsets(items: tuple[int, ...], lo: int, hi: int) -> Iterator[frozenset]:
    for size in range(lo, min(hi, len(items)) + 1):
        for z in combinations(items, size):
            yield frozenset(z)


def lift_entry(entry: FvsEntry, s: frozenset, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """Solutions of the pre-rule instance generated by ``s``."""
    if counter is not None:
        counter.tick()
    if isinstance(entry, Basic1):
        if entry.case in ("i", "iii"):
            yield s
        elif entry.case == "ii":
            yield s
            if len(s) < entry.k_before:
                yield s | {entry.vertices[0]}
        else:
            yield s | {entry.vertices[0]}
    elif isinstance(entry, ShortPath):
        yield s
        if entry.a in s:
            if counter is not None:
                counter.tick(len(entry.graph))
            if is_forest(entry.graph, (s - {entry.a}) | {entry.x}):
                yield (s - {entry.a}) | {entry.x}
            if len(s) <= entry.k - 1:
                yield s | {entry.x}
    elif isinstance(entry, TwinTriangle):
        yield s
        if entry.x in s:
            yield (s - {entry.x}) | {entry.y}
            if entry.k - len(s) > 0:
                yield s | {entry.y}
    elif isinstance(entry, PendingDoubles):
        room = entry.k_before - len(s)
        yield s | {entry.u}
        if len(entry.petals) <= room:
            # u survives here, so it must not close a cycle with what is left
            if counter is not None:
                counter.tick(len(entry.graph))
            if is_forest(entry.graph, s | set(entry.petals)):
                yield s | set(entry.petals)
        for z in _subsets(entry.petals, 1, room - 1):
            yield s | {entry.u} | z
    elif isinstance(entry, MultiFlag):
        room = entry.k_before - len(s)
        with_a = s | {entry.a}
        yield with_a
        for z in _subsets(tuple(sorted((*entry.flags, entry.b))), 1, room - 1):
            yield with_a | z
        removed = s | {entry.b, *entry.flags}
        if counter is not None:
            counter.tick(len(entry.graph))
        if is_forest(entry.graph, removed):
            with_b = s | {entry.b}
            for z in _subsets(entry.flags, 0, room - 1):
                yield with_b | z
            if not entry.double_ab and len(entry.flags) <= room:
                yield s | set(entry.flags)
    elif isinstance(entry, FlowerRemoved):
        yield s | {entry.v}
    elif isinstance(entry, (AuxDouble, EdgeDelete)):
        yield s
    else:
        raise TypeError(f"unknown trace entry {entry!r}")


def fvs_lift(trace: list[FvsEntry], s: frozenset, counter: StepCounter | None = None) -> Iterator[frozenset]:
    return compose(trace, frozenset(s), lambda e, t: lift_entry(e, t, counter))


# kernel enumeration


def shortest_cycle(g: MultiGraph, removed: set[int] = frozenset()) -> list[int] | None:
    """Vertices of a shortest cycle of ``g - removed`` (loops and double edges included)."""
    alive = [v for v in sorted(g.adj) if v not in removed]
    for v in alive:
        if g.has_loop(v):
            return [v]
    for u in alive:
        for w, m in g.adj[u].items():
            if m >= 2 and w not in removed and w != u:
                return sorted((u, w))
    best = None
    for s in alive:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        found = None
        while queue and found is None:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= len(best):
                break
            for w in g.adj[u]:
                if w in removed or w == u:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    found = (u, w)
                    break
        if found is None:
            continue
        u, w = found
        left, right = [], []
        while u is not None:
            left.append(u)
            u = parent[u]
        while w is not None:
            right.append(w)
            w = parent[w]
        cyc = set(left) | set(right)
        if len(cyc) == len(left) + len(right) - 1 and (best is None or len(cyc) < len(best)):
            best = sorted(cyc)
    if best is None and not is_forest(g, removed):
        raise RuntimeError("cycle search missed a cycle")
    return best


def enumerate_kernel_fvs(g: MultiGraph, k: int, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """All feedback vertex sets with at most ``k`` vertices, each once.

    Branches over the vertices ``v1 < ... < vt`` of a shortest cycle: branch
    ``j`` takes ``vj`` and excludes ``v1..v(j-1)``. A branch dies when the
    excluded vertices already contain a cycle. Acyclic leaves are completed
    with every subset of the remaining free vertices that fits the budget.
    """
    if k < 0:
        return
    verts = set(g.adj)

    def tick(n: int) -> None:
        if counter is not None:
            counter.count += n

    def rec(inc: set[int], exc: set[int]) -> Iterator[frozenset]:
        tick(len(verts))
        cyc = shortest_cycle(g, inc)
        if cyc is None:
            free = sorted(verts - inc - exc)
            yield from _subsets_within(frozenset(inc), free, k - len(inc))
            return
        if len(inc) >= k:
            return
        cand = [v for v in cyc if v not in exc]
        for j, v in enumerate(cand):
            newly = cand[:j]
            exc.update(newly)
            if is_forest(g, verts - exc):
                inc.add(v)
                yield from rec(inc, exc)
                inc.discard(v)
            exc.difference_update(newly)

    yield from rec(set(), set())


def fvs_enumerate(g: MultiGraph, k: int, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """Stream every feedback vertex set of ``g`` with at most ``k`` vertices exactly once."""
    kern = fvs_compress(g, k, decide=False)
    if isinstance(kern, NoInstance):
        return
    yield from enumerate_fvs_kernel_stream(kern, counter)


def enumerate_fvs_kernel_stream(kern: FvsKernel, counter: StepCounter | None = None) -> Iterator[frozenset]:
    for s in enumerate_kernel_fvs(kern.graph, kern.k, counter):
        yield from fvs_lift(kern.trace, s, counter)
