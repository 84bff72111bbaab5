"""Feedback-vertex-set helpers used by the degree-reduction phase.

* :func:`two_approx_fvs` -- local-ratio 2-approximation (Bafna, Berman, Fujito).
* :func:`flower_or_hitting` -- either a large flower centred at a vertex or a
  small set hitting every cycle through it.
* :func:`build_aux` -- the components hanging off a high-degree vertex and
  their attachments to the hitting set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import MultiGraph, connected_components, is_forest


def _cleanup(h: MultiGraph) -> None:
    low = [v for v in h.adj if h.degree(v) <= 1]
    while low:
        v = low.pop()
        if v not in h.adj or h.degree(v) > 1:
            continue
        nbrs = h.neighbors(v)
        h.remove_vertex(v)
        low.extend(w for w in nbrs if h.degree(w) <= 1)


def semidisjoint_cycle(h: MultiGraph) -> list[int] | None:
    """A cycle in which every vertex but at most one has degree 2.

    Expects minimum degree at least 2. Loops count as cycles of length one.
    """
    for v in sorted(h.adj):
        if h.has_loop(v):
            return [v]
    deg2 = {v for v in h.adj if h.degree(v) == 2}
    seen: set[int] = set()
    for start in sorted(deg2):
        if start in seen:
            continue
        chain = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in h.adj[u]:
                if w in deg2 and w not in chain:
                    chain.add(w)
                    stack.append(w)
        seen |= chain
        exits = []
        for u in chain:
            for w, m in h.adj[u].items():
                if w not in chain:
                    exits.extend([w] * m)
        if not exits:
            return sorted(chain)
        if len(exits) == 2 and exits[0] == exits[1]:
            return sorted(chain | {exits[0]})
    return None


def two_approx_fvs(g: MultiGraph) -> set[int]:
    """Feedback vertex set of size at most twice the optimum."""
    h = g.copy()
    weight = {v: Fraction(1) for v in h.adj}
    order: list[int] = []
    _cleanup(h)
    while h.adj:
        cyc = semidisjoint_cycle(h)
        if cyc is not None:
            gamma = min(weight[v] for v in cyc)
            for v in cyc:
                weight[v] -= gamma
        else:
            gamma = min(weight[v] / (h.degree(v) - 1) for v in h.adj)
            for v in h.adj:
                weight[v] -= gamma * (h.degree(v) - 1)
        for v in sorted(v for v in h.adj if weight[v] == 0):
            order.append(v)
            h.remove_vertex(v)
        _cleanup(h)
    sol = set(order)
    for v in reversed(order):
        if is_forest(g, sol - {v}):
            sol.discard(v)
    return sol


@dataclass(frozen=True)
class FlowerNoInstance:
    reason: str = ""


@dataclass(frozen=True)
class Flower:
    center: int
    cycles: tuple[tuple[int, ...], ...]  # each starts at the centre

    @property
    def order(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class HittingSet:
    center: int
    hitting: frozenset[int]


FlowerResult = FlowerNoInstance | Flower | HittingSet


def _a_paths(forest: MultiGraph, ends: set[int], singles: set[int]) -> tuple[list[list[int]], set[int]]:
    """Greedy maximum packing of vertex-disjoint paths with both ends in ``ends``.

    Vertices in ``singles`` form a path on their own. Each tree is processed
    leaves-up and a path is closed at the lowest vertex that can close one;
    the closing vertices form a hitting set of the same size, which certifies
    optimality.
    """
    paths: list[list[int]] = []
    closers: set[int] = set()
    seen: set[int] = set()
    for root in sorted(forest.adj):
        if root in seen:
            continue
        order, parent = [], {root: None}
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            order.append(v)
            for w in sorted(forest.adj[v]):
                if w not in seen:
                    seen.add(w)
                    parent[w] = v
                    stack.append(w)
        children: dict[int, list[int]] = {v: [] for v in order}
        for v in order[1:]:
            children[parent[v]].append(v)
        dangling: dict[int, list[int]] = {}
        for v in reversed(order):
            if v in singles:
                paths.append([v])
                closers.add(v)
                continue
            opens = [dangling[c] for c in sorted(children[v]) if c in dangling]
            if v in ends:
                if opens:
                    paths.append(opens[0] + [v])
                    closers.add(v)
                else:
                    dangling[v] = [v]
            elif len(opens) >= 2:
                paths.append(opens[0] + [v] + opens[1][::-1])
                closers.add(v)
            elif opens:
                dangling[v] = opens[0] + [v]
    return paths, closers


def flower_or_hitting(g: MultiGraph, X: Iterable[int], x: int, k: int) -> FlowerResult:
    """Find an ``x``-flower of order ``k+1`` or a set of at most ``3k`` vertices,
    avoiding ``x`` and containing ``X - {x}``, that hits every cycle.
    """
    X = set(X)
    if k < 0:
        return FlowerNoInstance("negative budget")
    if len(X) > 2 * k:
        raise ValueError(f"|X| = {len(X)} exceeds 2k = {2 * k}")
    if g.has_loop(x):
        raise ValueError(f"{x} carries a loop; no set avoiding it hits every cycle")
    rest = X - {x}
    forest = g.subgraph(set(g.adj) - rest - {x})
    ends = {w for w in g.neighbors(x) if w not in rest}
    singles = {w for w in ends if g.mul(x, w) >= 2}
    paths, closers = _a_paths(forest, ends, singles)
    if len(paths) >= k + 1:
        return Flower(x, tuple((x, *p) for p in paths))
    hitting = frozenset(rest | closers)
    if len(hitting) > 3 * k:
        raise RuntimeError("hitting set exceeds 3k; A-path duality violated")
    return HittingSet(x, hitting)


def has_cycle_through(g: MultiGraph, x: int, removed: Iterable[int] = ()) -> bool:
    """Whether ``g - removed`` has a cycle containing ``x``."""
    removed = set(removed)
    if x in removed:
        return False
    if g.has_loop(x):
        return True
    rest = g.subgraph(set(g.adj) - removed - {x})
    comp_of = {}
    for i, comp in enumerate(connected_components(rest)):
        for v in comp:
            comp_of[v] = i
    hits: set[int] = set()
    for w, m in g.adj[x].items():
        if w in removed:
            continue
        if m >= 2 or comp_of[w] in hits:
            return True
        hits.add(comp_of[w])
    return False


@dataclass
class AuxBipartite:
    center: int
    head: frozenset[int]
    components: list[frozenset[int]]  # D_v, ordered by least member
    attach: list[int]  # the unique neighbour of the centre in each component
    adjacency: dict[int, set[int]] = field(default_factory=dict)  # head vertex -> component indices
    double_heads: frozenset[int] = frozenset()  # head vertices joined to the centre by a double edge

    def meets_bound(self, k: int) -> bool:
        return len(self.components) > 3 * k * (k + 1)

    def component_neighbors(self, g: MultiGraph, i: int) -> set[int]:
        comp = self.components[i]
        out = set()
        for u in comp:
            out.update(w for w in g.adj[u] if w not in comp)
        return out


def build_aux(g: MultiGraph, v: int, hv: Iterable[int], k: int | None = None) -> AuxBipartite:
    """Components of ``g - (hv + v)`` that ``v`` reaches by a simple edge.

    ``hv`` must hit every cycle through ``v``; a component touched twice by
    ``v`` contradicts that and raises ``RuntimeError``.
    """
    hv = frozenset(hv)
    comps, attach = [], []
    for comp in connected_components(g, hv | {v}):
        touch = [(w, g.mul(v, w)) for w in comp if w in g.adj[v]]
        if not touch:
            continue
        if len(touch) > 1 or touch[0][1] > 1:
            raise RuntimeError(f"component {comp} closes a cycle through {v} avoiding the hitting set")
        comps.append(frozenset(comp))
        attach.append(touch[0][0])
    adjacency = {u: set() for u in hv}
    for u in hv:
        nb = g.adj[u]
        for i, comp in enumerate(comps):
            if any(w in comp for w in nb):
                adjacency[u].add(i)
    doubles = frozenset(u for u in hv if g.mul(u, v) >= 2)
    return AuxBipartite(v, hv, comps, attach, adjacency, doubles)
