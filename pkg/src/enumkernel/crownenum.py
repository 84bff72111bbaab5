"""Enumeration of fixed-size vertex covers of crowned graphs.

A crowned instance has a head ``H``, an independent crown ``C`` and a
matching saturating ``H`` into ``C``. The small case (``|H| = |C|``, slack 0)
is solved by a branching algorithm whose every branch is productive; the
general case reduces to it by guessing how the solution uses the crown.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .graph import MultiGraph
from .steps import StepCounter


@dataclass(frozen=True)
class CrownedInstance:
    graph: MultiGraph = field(hash=False)
    head: frozenset[int]
    crown: frozenset[int]
    matching: dict[int, int] = field(hash=False)  # head -> crown
    slack: int = 0

    def __post_init__(self):
        object.__setattr__(self, "head", frozenset(self.head))
        object.__setattr__(self, "crown", frozenset(self.crown))

    @property
    def is_small(self) -> bool:
        return len(self.head) == len(self.crown) and self.slack == 0

    def validate(self) -> None:
        g, H, C, M = self.graph, self.head, self.crown, self.matching
        if H & C or (H | C) != set(g.adj):
            raise ValueError("head and crown must partition the vertex set")
        if not g.is_simple():
            raise ValueError("crowned graphs are simple")
        if any(w in C for c in C for w in g.adj[c]):
            raise ValueError("crown is not independent")
        if set(M) != H or len(set(M.values())) != len(H):
            raise ValueError("matching must saturate the head with distinct crown vertices")
        if any(c not in C or not g.has_edge(h, c) for h, c in M.items()):
            raise ValueError("matching pair is not a head-crown edge")
        if not 0 <= self.slack <= len(C):
            raise ValueError("slack must lie in [0, |C|]")

    def target_size(self) -> int:
        return len(self.head) + self.slack


@dataclass(frozen=True)
class PropResult:
    forced: frozenset[int]
    forbidden: frozenset[int]
    failed: bool = False


class _Core:
    """Adjacency sets and the two-way mate map shared by all sub-instances."""

    __slots__ = ("adj", "mate", "head", "counter")

    def __init__(self, inst: CrownedInstance, counter: StepCounter | None):
        self.adj = {v: frozenset(nb) for v, nb in inst.graph.adj.items()}
        self.mate = {}
        for h, c in inst.matching.items():
            self.mate[h] = c
            self.mate[c] = h
        self.head = inst.head
        self.counter = counter

    def tick(self, n: int = 1) -> None:
        if self.counter is not None:
            self.counter.count += n

    def prop_x(self, active: frozenset, x0: Iterable[int]) -> tuple[frozenset, frozenset]:
        # M-edges point head -> crown, all other head-crown edges crown -> head
        mate, adj, head = self.mate, self.adj, self.head
        reached = set(x0)
        stack = list(reached)
        forced, forbidden = set(), set()
        while stack:
            u = stack.pop()
            if u in head:
                forced.add(u)
                c = mate[u]
                self.tick()
                if c in active and c not in reached:
                    reached.add(c)
                    stack.append(c)
            else:
                forbidden.add(u)
                own = mate.get(u)
                nb = adj[u]
                self.tick(len(nb))
                for w in nb:
                    if w != own and w in active and w not in reached:
                        reached.add(w)
                        stack.append(w)
        return frozenset(forced), frozenset(forbidden)

    def prop_avoid(self, active: frozenset, v: int) -> tuple[frozenset, frozenset] | None:
        """``None`` when no size-|H| cover of the active part avoids ``v``."""
        mate, adj = self.mate, self.adj
        forced: set[int] = set()
        forbidden = {v}
        while True:
            new_forced = set()
            for u in forbidden:
                nb = adj[u]
                self.tick(len(nb))
                for w in nb:
                    if w in active and w not in forbidden:
                        new_forced.add(w)
            self.tick(len(new_forced))
            if any(mate[u] in new_forced for u in new_forced):
                return None
            new_forbidden = {mate[u] for u in new_forced}
            for u in new_forbidden:
                nb = adj[u]
                self.tick(len(nb))
                if any(w in new_forbidden for w in nb):
                    return None
            if new_forced == forced and new_forbidden == forbidden:
                return frozenset(forced), frozenset(forbidden)
            forced, forbidden = new_forced, new_forbidden

    def small(self, active: frozenset, prefix: frozenset = frozenset()) -> Iterator[frozenset]:
        """All covers of ``G[active]`` of size ``|active ∩ H|``, each unioned with ``prefix``.

        ``active`` must induce a small crowned graph. Explicit stack instead of
        recursion; each frame is ``[active, prefix, stage, v]``.
        """
        head = self.head
        stack = [[active, prefix, 0, None]]
        while stack:
            frame = stack[-1]
            act, pre, stage, v = frame
            if stage == 0:
                heads = [h for h in act if h in head]
                self.tick(len(act))
                if not heads:
                    stack.pop()
                    yield pre
                    continue
                v = min(heads)
                frame[2], frame[3] = 1, v
                f, fb = self.prop_x(act, (v,))
                stack.append([act - f - fb, pre | f, 0, None])
            elif stage == 1:
                frame[2] = 2
                res = self.prop_avoid(act, v)
                if res is not None:
                    f, fb = res
                    stack.append([act - f - fb, pre | f, 0, None])
            else:
                stack.pop()


def _require_small(inst: CrownedInstance) -> None:
    if not inst.is_small:
        raise ValueError("instance is not small (need |H| = |C| and slack 0)")


def prop_x(inst: CrownedInstance, x0: Iterable[int], counter: StepCounter | None = None) -> PropResult:
    """Vertices forced into / out of every solution containing ``x0``."""
    _require_small(inst)
    x0 = set(x0)
    if not x0 <= inst.head:
        raise ValueError("x0 must be a subset of the head")
    core = _Core(inst, counter)
    f, fb = core.prop_x(frozenset(inst.graph.adj), x0)
    return PropResult(f, fb)


def prop_avoid(inst: CrownedInstance, v: int, counter: StepCounter | None = None) -> PropResult:
    _require_small(inst)
    if v not in inst.head:
        raise ValueError(f"{v} is not a head vertex")
    res = _Core(inst, counter).prop_avoid(frozenset(inst.graph.adj), v)
    if res is None:
        return PropResult(frozenset(), frozenset(), failed=True)
    return PropResult(*res)


def enum_small_crown(inst: CrownedInstance, counter: StepCounter | None = None) -> Iterator[frozenset]:
    _require_small(inst)
    yield from _Core(inst, counter).small(frozenset(inst.graph.adj))


def _check_signature(inst: CrownedInstance, c1: frozenset, c2: frozenset) -> None:
    matched = frozenset(inst.matching.values())
    unmatched = inst.crown - matched
    if not c1 <= matched or not c2 <= unmatched:
        raise ValueError("C1 must use matched crown vertices and C2 unmatched ones")
    if len(c1) + len(c2) != inst.slack:
        raise ValueError("|C1| + |C2| must equal the slack")


def prop_big(
    inst: CrownedInstance, c1: Iterable[int], c2: Iterable[int], counter: StepCounter | None = None
) -> tuple[frozenset, frozenset, frozenset]:
    """Return ``(F, Fbar, Xbar1)`` for the signature ``(c1, c2)``."""
    c1, c2 = frozenset(c1), frozenset(c2)
    _check_signature(inst, c1, c2)
    return _prop_big(_Core(inst, counter), inst, c1, c2)[:3]


def _prop_big(core: _Core, inst: CrownedInstance, c1: frozenset, c2: frozenset):
    mate = core.mate
    matched = frozenset(inst.matching.values())
    xbar1 = (inst.crown - matched) - c2
    h_tilde = inst.head - {mate[c] for c in c1}
    c_tilde = frozenset(mate[h] for h in h_tilde)
    x0 = set()
    for c in xbar1:
        nb = core.adj[c]
        core.tick(len(nb))
        x0.update(w for w in nb if w in h_tilde)
    active = h_tilde | c_tilde
    f, fb = core.prop_x(active, x0)
    return f, fb, xbar1, active - f - fb


def enum_crown(inst: CrownedInstance, counter: StepCounter | None = None) -> Iterator[frozenset]:
    """All vertex covers of size exactly ``|H| + slack``, each once.

    Signatures are visited by ``|C1|`` ascending, then ``C1`` and ``C2`` in
    lexicographic order of their sorted ids; every signature yields at least
    one cover.
    """
    x = inst.slack
    if not 0 <= x <= len(inst.crown):
        raise ValueError("slack must lie in [0, |C|]")
    core = _Core(inst, counter)
    matched = sorted(inst.matching.values())
    unmatched = sorted(inst.crown - set(matched))
    for d in range(max(0, x - len(unmatched)), min(x, len(matched)) + 1):
        for c1 in combinations(matched, d):
            c1 = frozenset(c1)
            pinned = c1 | {core.mate[c] for c in c1}
            for c2 in combinations(unmatched, x - d):
                c2 = frozenset(c2)
                f, _, _, rest = _prop_big(core, inst, c1, c2)
                yield from core.small(rest, pinned | c2 | f)
