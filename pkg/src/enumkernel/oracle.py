"""Brute-force ground truth for both problems and solution-set comparison."""
from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Union

from .graph import MultiGraph, is_forest

VC_GUARD = 24
FVS_GUARD = 20
HALF_INTEGRAL_GUARD = 16
DEFAULT_CAP = 1 << 20

_MOD = 1 << 128


class GuardError(ValueError):
    pass


def solution_hash(s: Iterable[int]) -> int:
    data = ",".join(map(str, sorted(s))).encode()
    return int.from_bytes(hashlib.blake2b(data, digest_size=16).digest(), "big")


@dataclass
class SolutionSetReport:
    count: int
    solutions: list[tuple[int, ...]] | None = None
    digest: int = 0

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], cap: int = DEFAULT_CAP) -> "SolutionSetReport":
        """Build a report; the list is dropped once more than ``cap`` sets arrive."""
        sols: list[tuple[int, ...]] | None = []
        count = digest = 0
        for s in sets:
            t = tuple(sorted(s))
            count += 1
            digest = (digest + solution_hash(t)) % _MOD
            if sols is not None:
                sols.append(t)
                if len(sols) > cap:
                    sols = None
        if sols is not None:
            sols.sort(key=lambda t: (len(t), t))
        return cls(count, sols, digest)


def _check_simple(g: MultiGraph) -> None:
    if not g.is_simple():
        raise ValueError("vertex cover oracle expects a simple graph")


def is_vertex_cover(g: MultiGraph, s: Iterable[int]) -> bool:
    s = set(s)
    return all(u in s or v in s for u, v, _ in g.edges())


def iter_vc(g: MultiGraph, k: int):
    _check_simple(g)
    edges = [(u, v) for u, v, _ in g.edges()]
    verts = g.vertices
    for size in range(0, min(k, len(verts)) + 1):
        for combo in combinations(verts, size):
            s = set(combo)
            if all(u in s or v in s for u, v in edges):
                yield combo


def iter_fvs(g: MultiGraph, k: int):
    verts = g.vertices
    for size in range(0, min(k, len(verts)) + 1):
        for combo in combinations(verts, size):
            if is_forest(g, combo):
                yield combo


def brute_vc(g: MultiGraph, k: int, cap: int = DEFAULT_CAP) -> SolutionSetReport:
    if len(g) > VC_GUARD:
        raise GuardError(f"brute_vc is limited to {VC_GUARD} vertices")
    if k < 0:
        return SolutionSetReport.from_sets([])
    return SolutionSetReport.from_sets(iter_vc(g, k), cap)


def brute_fvs(g: MultiGraph, k: int, cap: int = DEFAULT_CAP) -> SolutionSetReport:
    if len(g) > FVS_GUARD:
        raise GuardError(f"brute_fvs is limited to {FVS_GUARD} vertices")
    if k < 0:
        return SolutionSetReport.from_sets([])
    return SolutionSetReport.from_sets(iter_fvs(g, k), cap)


def min_fvs_size(g: MultiGraph) -> int:
    for size in range(len(g) + 1):
        for combo in combinations(g.vertices, size):
            if is_forest(g, combo):
                return size
    raise AssertionError("unreachable: removing everything leaves a forest")


def min_vc_size(g: MultiGraph) -> int:
    return next(len(s) for s in iter_vc(g, len(g)))


def brute_half_integral_vc(g: MultiGraph) -> Fraction:
    """Minimum of sum(x) over x in {0, 1/2, 1}^V with x_u + x_v >= 1 on edges.

    Depth-first over the vertices in id order, values tried 0, 1/2, 1, with
    pruning against the best weight found so far. Weights are kept doubled.
    """
    _check_simple(g)
    if len(g) > HALF_INTEGRAL_GUARD:
        raise GuardError(f"brute_half_integral_vc is limited to {HALF_INTEGRAL_GUARD} vertices")
    verts = g.vertices
    earlier = {v: [w for w in g.adj[v] if w < v] for v in verts}
    best = 2 * len(verts)
    val: dict[int, int] = {}

    def rec(i: int, acc: int) -> None:
        nonlocal best
        if acc >= best:
            return
        if i == len(verts):
            best = acc
            return
        v = verts[i]
        need = max((2 - val[w] for w in earlier[v]), default=0)
        for x in (0, 1, 2):
            if x >= need:
                val[v] = x
                rec(i + 1, acc + x)
        del val[v]

    rec(0, 0)
    return Fraction(best, 2)


@dataclass
class Comparison:
    equal: bool
    only_left: list[tuple[int, ...]] = field(default_factory=list)
    only_right: list[tuple[int, ...]] = field(default_factory=list)
    duplicates: list[tuple[int, ...]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.equal

    @property
    def witness(self) -> tuple[int, ...] | None:
        for group in (self.duplicates, self.only_left, self.only_right):
            if group:
                return group[0]
        return None


Side = Union[SolutionSetReport, Iterable[Iterable[int]]]


def _materialize(side: Side) -> tuple[Counter | None, SolutionSetReport]:
    if isinstance(side, SolutionSetReport):
        if side.solutions is None:
            return None, side
        return Counter(side.solutions), side
    counts = Counter(tuple(sorted(s)) for s in side)
    return counts, SolutionSetReport.from_sets(counts.elements())


def compare(a: Side, b: Side) -> Comparison:
    """Equal iff both sides hold the same solution sets and neither repeats one."""
    ca, ra = _materialize(a)
    cb, rb = _materialize(b)
    if ca is None or cb is None:
        return Comparison(ra.count == rb.count and ra.digest == rb.digest)
    dups = sorted({s for c in (ca, cb) for s, n in c.items() if n > 1})
    only_a = sorted(set(ca) - set(cb), key=lambda t: (len(t), t))
    only_b = sorted(set(cb) - set(ca), key=lambda t: (len(t), t))
    return Comparison(not (dups or only_a or only_b), only_a, only_b, dups)
