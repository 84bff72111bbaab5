"""Polynomial-delay enumeration kernel with at most 2k vertices for vertex cover.

Compression removes isolated vertices and applies crown reductions found by
the half-integral relaxation; every rule application is logged so that
kernel solutions can be lifted back by replaying the log in reverse.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .crown import CrownDecomposition, NoHalfIntegralCover, nt_decompose, verify_crown
from .crownenum import CrownedInstance, enum_crown
from .graph import MultiGraph
from .lifting import compose
from .steps import StepCounter


@dataclass(frozen=True)
class NoInstance:
    reason: str = ""


@dataclass(frozen=True)
class IsolatedRemoved:
    v: int
    k: int


@dataclass(frozen=True)
class CrownApplied:
    subgraph: MultiGraph = field(hash=False)  # G[H ∪ C]
    head: frozenset[int]
    crown: frozenset[int]
    matching: dict[int, int] = field(hash=False)
    head_body_edges: frozenset[tuple[int, int]]  # (h, b) pairs
    k_before: int
    k_after: int


VcEntry = Union[IsolatedRemoved, CrownApplied]


@dataclass
class VcKernel:
    graph: MultiGraph
    k: int
    trace: list[VcEntry]


def _require_simple(g: MultiGraph) -> None:
    if not g.is_simple():
        raise ValueError("vertex cover kernel expects a simple graph (no loops or multi-edges)")


def vc_rule_isolated(g: MultiGraph, k: int) -> tuple[MultiGraph, int, IsolatedRemoved] | None:
    """Remove the least isolated vertex; ``None`` when there is none."""
    for v in sorted(g.adj):
        if not g.adj[v]:
            h = g.copy()
            h.remove_vertex(v)
            return h, k, IsolatedRemoved(v, k)
    return None


def vc_rule_crown(g: MultiGraph, k: int, d: CrownDecomposition) -> tuple[MultiGraph, int, CrownApplied]:
    if not verify_crown(g, d):
        raise ValueError("invalid crown decomposition")
    if d.width > k:
        raise ValueError("crown width exceeds k")
    hc = d.head | d.crown
    edges = frozenset((h, w) for h in d.head for w in g.adj[h] if w in d.body)
    entry = CrownApplied(g.subgraph(hc), d.head, d.crown, dict(d.matching), edges, k, k - d.width)
    h = g.copy()
    h.remove_vertices(hc)
    return h, k - d.width, entry


def vc_compress(g: MultiGraph, k: int, decide: bool = True) -> NoInstance | VcKernel:
    """Kernelize ``(g, k)``.

    With ``decide`` the (at most 2k-vertex) kernel is additionally probed for a
    solution, so a NO-instance is always reported as :class:`NoInstance`.
    """
    _require_simple(g)
    if k < 0:
        return NoInstance("negative budget")
    g = g.copy()
    trace: list[VcEntry] = []
    while True:
        for v in sorted(v for v in g.adj if not g.adj[v]):
            g.remove_vertex(v)
            trace.append(IsolatedRemoved(v, k))
        if len(g) <= 2 * k:
            break
        d = nt_decompose(g, k)
        if isinstance(d, NoHalfIntegralCover):
            return NoInstance(f"half-integral optimum {d.weight} exceeds k={k}")
        g, k, entry = vc_rule_crown(g, k, d)
        trace.append(entry)
    if decide and next(enumerate_kernel_vc(g, k), None) is None:
        return NoInstance("kernel has no vertex cover within budget")
    return VcKernel(g, k, trace)


def vc_lift_isolated(entry: IsolatedRemoved, s: frozenset) -> Iterator[frozenset]:
    yield s
    if len(s) < entry.k:
        yield s | {entry.v}


def vc_lift_crown(entry: CrownApplied, s: frozenset, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """All covers of the pre-rule graph within ``k_before`` restricting to ``s``."""
    slack = entry.k_after - len(s)
    forced = frozenset(h for h, b in entry.head_body_edges if b not in s)
    if counter is not None:
        counter.tick(len(entry.head_body_edges))
    head = entry.head - forced
    sub = entry.subgraph.subgraph(head | entry.crown)
    matching = {h: entry.matching[h] for h in head}
    base = s | forced
    for ell in range(0, min(len(entry.crown), slack) + 1):
        inst = CrownedInstance(sub, head, entry.crown, matching, ell)
        for part in enum_crown(inst, counter):
            yield base | part


def vc_lift_entry(entry: VcEntry, s: frozenset, counter: StepCounter | None = None) -> Iterator[frozenset]:
    if isinstance(entry, IsolatedRemoved):
        return vc_lift_isolated(entry, s)
    return vc_lift_crown(entry, s, counter)


def vc_lift(trace: list[VcEntry], s: frozenset, counter: StepCounter | None = None) -> Iterator[frozenset]:
    return compose(trace, s, lambda e, t: vc_lift_entry(e, t, counter))


def _maximal_matching_size(g: MultiGraph, skip: set[int]) -> int:
    used: set[int] = set()
    size = 0
    for u in sorted(g.adj):
        if u in skip or u in used:
            continue
        for w in sorted(g.adj[u]):
            if w not in skip and w not in used:
                used.update((u, w))
                size += 1
                break
    return size


def enumerate_kernel_vc(g: MultiGraph, k: int, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """All vertex covers of ``g`` with at most ``k`` vertices, each once.

    Branches on the least uncovered edge ``uv``: first ``u`` in the cover,
    then ``u`` excluded (forcing all of ``N(u)``). Branches whose partial
    cover plus a matching lower bound on the uncovered part exceed ``k`` are
    cut. Once every edge is covered, the remaining free vertices are added in
    every combination that fits the budget.
    """
    if k < 0:
        return
    order = sorted(g.adj)

    def tick(n: int = 1) -> None:
        if counter is not None:
            counter.count += n

    def uncovered_edge(inc: set[int]):
        for u in order:
            if u in inc:
                continue
            nb = g.adj[u]
            tick(len(nb))
            for w in sorted(nb):
                if w > u and w not in inc:
                    return u, w
        return None

    def rec(inc: set[int], exc: set[int]) -> Iterator[frozenset]:
        if len(inc) > k:
            return
        e = uncovered_edge(inc)
        if e is None:
            free = [v for v in order if v not in inc and v not in exc]
            yield from _subsets_within(frozenset(inc), free, k - len(inc))
            return
        if len(inc) + _maximal_matching_size(g, inc) > k:
            return
        u, _ = e
        if u not in exc:
            inc.add(u)
            yield from rec(inc, exc)
            inc.discard(u)
        forced = [w for w in g.adj[u] if w not in inc]
        tick(len(g.adj[u]))
        if any(w in exc for w in forced) or len(inc) + len(forced) > k:
            return
        exc.add(u)
        inc.update(forced)
        yield from rec(inc, exc)
        inc.difference_update(forced)
        exc.discard(u)

    yield from rec(set(), set())


def _subsets_within(base: frozenset, free: list[int], budget: int) -> Iterator[frozenset]:
    """``base`` plus every subset of ``free`` with at most ``budget`` members (include-first branching)."""
    chosen: list[int] = []

    def rec(i: int) -> Iterator[frozenset]:
        if i == len(free):
            yield base | frozenset(chosen)
            return
        if len(chosen) < budget:
            chosen.append(free[i])
            yield from rec(i + 1)
            chosen.pop()
        yield from rec(i + 1)

    yield from rec(0)


def vc_enumerate(g: MultiGraph, k: int, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """Stream every vertex cover of ``g`` with at most ``k`` vertices exactly once."""
    kern = vc_compress(g, k, decide=False)
    if isinstance(kern, NoInstance):
        return
    yield from enumerate_kernel_stream(kern, counter)


def enumerate_kernel_stream(kern: VcKernel, counter: StepCounter | None = None) -> Iterator[frozenset]:
    for s in enumerate_kernel_vc(kern.graph, kern.k, counter):
        yield from vc_lift(kern.trace, s, counter)
