"""Undirected multigraphs with loops, the edge-list format, and a seeded generator.

Vertex ids are positive integers and are never reused once deleted, so the
ascending id order doubles as the fixed tie-breaking order used by the
reduction rules.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class ContractError(ValueError):
    pass


class MultiGraph:
    """Multigraph stored as ``adj[u][v] = multiplicity``.

    A loop at ``v`` is stored as ``adj[v][v]`` and contributes twice its
    multiplicity to ``degree(v)``.
    """

    __slots__ = ("adj",)

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple] = ()):
        self.adj: dict[int, dict[int, int]] = {}
        for v in vertices:
            self.add_vertex(v)
        for e in edges:
            if len(e) == 2:
                self.add_edge(e[0], e[1])
            else:
                self.add_edge(e[0], e[1], e[2])

    # construction / mutation

    def add_vertex(self, v: int) -> None:
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"vertex ids are positive integers, got {v!r}")
        self.adj.setdefault(v, {})

    def add_edge(self, u: int, v: int, mult: int = 1) -> None:
        if mult < 1:
            raise ValueError("multiplicity must be >= 1")
        self.add_vertex(u)
        self.add_vertex(v)
        m = self.adj[u].get(v, 0) + mult
        self.adj[u][v] = m
        self.adj[v][u] = m

    def set_multiplicity(self, u: int, v: int, mult: int) -> None:
        if mult <= 0:
            self.remove_edge(u, v)
            return
        self.adj[u][v] = mult
        self.adj[v][u] = mult

    def remove_edge(self, u: int, v: int) -> None:
        self.adj[u].pop(v, None)
        self.adj[v].pop(u, None)

    def remove_vertex(self, v: int) -> None:
        for w in self.adj.pop(v):
            if w != v:
                del self.adj[w][v]

    def remove_vertices(self, vs: Iterable[int]) -> None:
        for v in vs:
            self.remove_vertex(v)

    def contract(self, x: int, a: int) -> None:
        """Contract ``x`` into ``a`` in place (see :func:`contract`)."""
        if x == a or a not in self.adj.get(x, {}):
            raise ContractError(f"{x} is not adjacent to {a}")
        for w, m in list(self.adj[x].items()):
            if w in (a, x):
                continue
            self.add_edge(a, w, m)
        self.remove_vertex(x)

    def copy(self) -> "MultiGraph":
        g = MultiGraph()
        g.adj = {v: dict(nb) for v, nb in self.adj.items()}
        return g

    def subgraph(self, keep: Iterable[int]) -> "MultiGraph":
        keep = set(keep)
        g = MultiGraph()
        g.adj = {v: {w: m for w, m in self.adj[v].items() if w in keep} for v in keep}
        return g

    # queries

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def __len__(self) -> int:
        return len(self.adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiGraph) and self.adj == other.adj

    def __repr__(self) -> str:
        return f"MultiGraph(n={len(self.adj)}, m={self.num_edges()})"

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def neighbors(self, v: int) -> set[int]:
        """Distinct neighbours of ``v``, excluding ``v`` itself."""
        return {w for w in self.adj[v] if w != v}

    def mul(self, u: int, v: int) -> int:
        return self.adj[u].get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def has_loop(self, v: int) -> bool:
        return v in self.adj[v]

    def degree(self, v: int) -> int:
        nb = self.adj[v]
        return sum(nb.values()) + nb.get(v, 0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.adj), default=0)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, mult)`` with ``u <= v`` in canonical order."""
        for u in sorted(self.adj):
            for v in sorted(w for w in self.adj[u] if w >= u):
                yield u, v, self.adj[u][v]

    def num_edges(self) -> int:
        """Number of distinct vertex pairs joined by an edge (loops included)."""
        return sum(1 for _ in self.edges())

    def total_multiplicity(self) -> int:
        return sum(m for _, _, m in self.edges())

    def is_simple(self) -> bool:
        return all(u != v and m == 1 for u, v, m in self.edges())


def contract(g: MultiGraph, x: int, a: int) -> MultiGraph:
    """Return a copy of ``g`` with ``x`` contracted into ``a``.

    Every other neighbour ``w`` of ``x`` gets an edge ``aw`` whose
    multiplicity is added to any existing one; the ``xa`` edge itself does not
    become a loop.
    """
    h = g.copy()
    h.contract(x, a)
    return h


def is_forest(g: MultiGraph, removed: Iterable[int] = ()) -> bool:
    """True iff ``g - removed`` has no loop, no multi-edge and no cycle."""
    removed = set(removed)
    seen: set[int] = set()
    for root in g.adj:
        if root in removed or root in seen:
            continue
        seen.add(root)
        stack = [(root, 0)]
        while stack:
            v, parent = stack.pop()
            for w, m in g.adj[v].items():
                if w in removed:
                    continue
                if w == v or m >= 2:
                    return False
                if w == parent:
                    continue
                if w in seen:
                    return False
                seen.add(w)
                stack.append((w, v))
    return True


def connected_components(g: MultiGraph, excluded: Iterable[int] = ()) -> list[list[int]]:
    excluded = set(excluded)
    seen: set[int] = set()
    comps = []
    for root in sorted(g.adj):
        if root in excluded or root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if w not in excluded and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


# edge-list format


def parse_graph(text: str) -> MultiGraph:
    """Parse the ``p``/``e`` edge-list format.

    ``v <id>`` lines are an extension emitted by :func:`serialize_graph` when
    the vertex set is not ``{1..n}`` (kernels keep their original ids). When
    any ``v`` line is present the vertex set is exactly the declared ids.
    """
    header = None
    declared: list[int] = []
    edges: list[tuple[int, int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            nums = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {line!r}") from None
        if tag == "p":
            if header is not None:
                raise ParseError(lineno, "duplicate header")
            if len(nums) != 2 or nums[0] < 0 or nums[1] < 0:
                raise ParseError(lineno, "header must be 'p <n> <m>'")
            header = (nums[0], nums[1], lineno)
            continue
        if header is None:
            raise ParseError(lineno, "body line before 'p' header")
        n = header[0]
        if tag == "e":
            if len(nums) not in (2, 3):
                raise ParseError(lineno, "edge line must be 'e <u> <v> [mult]'")
            u, v = nums[0], nums[1]
            mult = nums[2] if len(nums) == 3 else 1
            for w in (u, v):
                if not 1 <= w <= n:
                    raise ParseError(lineno, f"vertex {w} out of range 1..{n}")
            if mult < 1:
                raise ParseError(lineno, f"multiplicity {mult} < 1")
            edges.append((u, v, mult, lineno))
        elif tag == "v":
            if len(nums) != 1 or not 1 <= nums[0] <= n:
                raise ParseError(lineno, "vertex line must be 'v <id>' with id in range")
            declared.append(nums[0])
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    if header is None:
        raise ParseError(0, "missing 'p' header")
    n, m, hline = header
    # m may count edge lines or total multiplicity; both conventions occur
    if m not in (len(edges), sum(e[2] for e in edges)):
        raise ParseError(hline, f"header announces {m} edges, found {len(edges)} edge lines")
    g = MultiGraph(declared if declared else range(1, n + 1))
    for u, v, mult, lineno in edges:
        if declared and (u not in g or v not in g):
            raise ParseError(lineno, "edge endpoint not declared by a 'v' line")
        g.add_edge(u, v, mult)
    return g


def serialize_graph(g: MultiGraph) -> str:
    verts = g.vertices
    n = verts[-1] if verts else 0
    edges = list(g.edges())
    lines = [f"p {n} {sum(m for _, _, m in edges)}"]
    if verts != list(range(1, n + 1)):
        lines.extend(f"v {v}" for v in verts)
    for u, v, m in edges:
        lines.append(f"e {u} {v}" if m == 1 else f"e {u} {v} {m}")
    return "\n".join(lines)


# random instances


@dataclass(frozen=True)
class RandomSpec:
    n: int
    p: float
    multi_prob: float = 0.0
    loop_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        for name in ("p", "multi_prob", "loop_prob"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


def random_graph(spec: RandomSpec) -> MultiGraph:
    rng = random.Random(spec.seed)
    g = MultiGraph(range(1, spec.n + 1))
    for u in range(1, spec.n + 1):
        for v in range(u + 1, spec.n + 1):
            if rng.random() < spec.p:
                g.add_edge(u, v, 2 if rng.random() < spec.multi_prob else 1)
    for v in range(1, spec.n + 1):
        if rng.random() < spec.loop_prob:
            g.add_edge(v, v)
    return g
