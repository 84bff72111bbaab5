"""Bipartite matching, Koenig covers and crown decompositions via the
Nemhauser-Trotter half-integral relaxation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .graph import MultiGraph

INF = float("inf")


class StructureError(ValueError):
    pass


def hopcroft_karp(adj: Mapping[Hashable, Iterable[Hashable]]) -> dict:
    """Maximum matching of a bipartite graph given as ``left -> rights``.

    Returns the matching as a ``left -> right`` dict. Left vertices are
    processed in the mapping's iteration order, so the result is deterministic
    for a deterministic input.
    """
    adj = {u: list(vs) for u, vs in adj.items()}
    pair_l: dict = {}
    pair_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for u in adj:
            if u in pair_l:
                dist[u] = INF
            else:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                mate = pair_r.get(w)
                if mate is None:
                    found = True
                elif dist[mate] == INF:
                    dist[mate] = dist[u] + 1
                    queue.append(mate)
        return found

    def dfs(root) -> bool:
        # iterative augmenting-path search along the BFS layering
        stack = [(root, iter(adj[root]))]
        path = []
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                mate = pair_r.get(w)
                if mate is None:
                    path.append((u, w))
                    for a, b in path:
                        pair_l[a] = b
                        pair_r[b] = a
                    return True
                if dist[mate] == dist[u] + 1:
                    path.append((u, w))
                    stack.append((mate, iter(adj[mate])))
                    advanced = True
                    break
            if not advanced:
                dist[u] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in adj:
            if u not in pair_l:
                dfs(u)
    return pair_l


def _bipartite_adjacency(g: MultiGraph, left: Iterable[int], right: Iterable[int]) -> dict:
    left, right = set(left), set(right)
    if left & right:
        raise StructureError("sides of the bipartition overlap")
    adj = {}
    for u in sorted(left):
        nbrs = []
        for w in sorted(g.adj[u]):
            if w not in right:
                raise StructureError(f"edge {u}-{w} does not cross the bipartition")
            nbrs.append(w)
        adj[u] = nbrs
    for v in right:
        for w in g.adj[v]:
            if w not in left:
                raise StructureError(f"edge {v}-{w} does not cross the bipartition")
    return adj


def max_bipartite_matching(g: MultiGraph, left: Iterable[int], right: Iterable[int]) -> dict[int, int]:
    """Maximum matching of bipartite ``g`` as a ``left -> right`` dict."""
    return hopcroft_karp(_bipartite_adjacency(g, left, right))


def _koenig(adj: Mapping, right: Iterable, matching: Mapping) -> set:
    match_r = {w: u for u, w in matching.items()}
    reached_l = {u for u in adj if u not in matching}
    reached_r = set()
    queue = deque(reached_l)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in reached_r or matching.get(u) == w:
                continue
            reached_r.add(w)
            mate = match_r.get(w)
            if mate is not None and mate not in reached_l:
                reached_l.add(mate)
                queue.append(mate)
    cover = {u for u in adj if u not in reached_l} | reached_r
    if len(cover) != len(matching):
        raise RuntimeError("matching is not maximum: Koenig cover size differs")
    return cover


def konig_cover(g: MultiGraph, left: Iterable[int], right: Iterable[int], m: Mapping[int, int]) -> set[int]:
    """Minimum vertex cover of bipartite ``g`` from a maximum matching ``m``."""
    right = set(right)
    return _koenig(_bipartite_adjacency(g, left, right), right, m)


@dataclass(frozen=True)
class HalfIntegralSolution:
    assignment: dict[int, Fraction]

    @property
    def weight(self) -> Fraction:
        return sum(self.assignment.values(), Fraction(0))


@dataclass(frozen=True)
class NoHalfIntegralCover:
    """Certificate that every half-integral vertex cover weighs more than ``k``."""
    weight: Fraction
    k: int


@dataclass(frozen=True)
class CrownDecomposition:
    crown: frozenset[int]
    head: frozenset[int]
    body: frozenset[int]
    matching: dict[int, int] = field(hash=False)  # head -> crown

    @property
    def width(self) -> int:
        return len(self.head)


def half_integral_cover(g: MultiGraph) -> HalfIntegralSolution:
    """Optimal {0, 1/2, 1} vertex cover from the bipartite double cover.

    Each vertex ``v`` gets copies ``(v, 0)`` and ``(v, 1)``; edge ``uv``
    becomes ``(u,0)-(v,1)`` and ``(v,0)-(u,1)``. A minimum Koenig cover of the
    double cover, halved, is an optimal half-integral solution.
    """
    adj = {(v, 0): [(w, 1) for w in sorted(g.adj[v])] for v in sorted(g.adj)}
    m = hopcroft_karp(adj)
    cover = _koenig(adj, [(v, 1) for v in g.adj], m)
    half = Fraction(1, 2)
    assignment = {v: half * (((v, 0) in cover) + ((v, 1) in cover)) for v in g.adj}
    return HalfIntegralSolution(assignment)


def nt_decompose(g: MultiGraph, k: int) -> NoHalfIntegralCover | CrownDecomposition:
    if not g.is_simple():
        raise ValueError("nt_decompose needs a simple graph")
    if any(not g.adj[v] for v in g.adj):
        raise ValueError("nt_decompose needs a graph without isolated vertices")
    if len(g) < 2 * k + 1:
        raise ValueError(f"nt_decompose needs at least 2k+1 = {2 * k + 1} vertices")
    sol = half_integral_cover(g)
    if sol.weight > k:
        return NoHalfIntegralCover(sol.weight, k)
    head = frozenset(v for v, x in sol.assignment.items() if x == 1)
    crown = frozenset(v for v, x in sol.assignment.items() if x == 0)
    # weight <= k < n/2 rules out the all-1/2 solution
    assert crown, "no zero-valued vertex although weight <= k < n/2"
    body = frozenset(g.adj) - head - crown
    sub = MultiGraph()
    for h in head:
        sub.add_vertex(h)
        for w in g.adj[h]:
            if w in crown:
                sub.add_edge(h, w)
    for c in crown:
        sub.add_vertex(c)
    matching = max_bipartite_matching(sub, head, crown)
    d = CrownDecomposition(crown, head, body, matching)
    if not verify_crown(g, d):
        raise RuntimeError("half-integral optimum did not yield a valid crown")
    return d


def verify_crown(g: MultiGraph, d: CrownDecomposition) -> bool:
    C, H, B = set(d.crown), set(d.head), set(d.body)
    V = set(g.adj)
    if C & H or C & B or H & B or (C | H | B) != V:
        return False
    for c in C:
        if any(w in C for w in g.adj[c]):
            return False
    nc = set()
    for c in C:
        nc.update(w for w in g.adj[c] if w != c)
    if nc != H:
        return False
    if len(d.matching) != len(H) or set(d.matching) != H:
        return False
    used = set()
    for h, c in d.matching.items():
        if c not in C or c in used or not g.has_edge(h, c):
            return False
        used.add(c)
    return True
