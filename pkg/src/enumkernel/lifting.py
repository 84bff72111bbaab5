"""Depth-first composition of per-rule liftings."""
from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence, TypeVar

E = TypeVar("E")
_DONE = object()


def compose(
    trace: Sequence[E], s: frozenset, lift_one: Callable[[E, frozenset], Iterable[frozenset]]
) -> Iterator[frozenset]:
    """Lift ``s`` through ``trace`` from the last entry back to the first.

    Each partial lift is pushed down immediately, so the first full solution
    appears after one lifting step per entry. Uses an explicit stack, since
    traces can be longer than the recursion limit.
    """
    if not trace:
        yield s
        return
    stack = [(len(trace) - 1, iter(lift_one(trace[-1], s)))]
    while stack:
        j, it = stack[-1]
        t = next(it, _DONE)
        if t is _DONE:
            stack.pop()
        elif j == 0:
            yield t
        else:
            stack.append((j - 1, iter(lift_one(trace[j - 1], t))))
