"""Basic-step instrumentation for delay measurements.

One step is one adjacency probe or one set-membership test performed by an
enumerator. The counter is passed explicitly; ``None`` disables counting.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class StepCounter:
    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def tick(self, n: int = 1) -> None:
        self.count += n


@dataclass
class DelayStats:
    outputs: int = 0
    precalculation: int = 0
    postcalculation: int = 0
    gaps: list[int] = field(default_factory=list)

    @property
    def max_delay(self) -> int:
        return max(self.gaps, default=0)

    @property
    def mean_delay(self) -> float:
        return sum(self.gaps) / len(self.gaps) if self.gaps else 0.0

    @property
    def worst(self) -> int:
        """Largest of precalculation, any inter-output gap and postcalculation."""
        return max([self.precalculation, self.postcalculation, *self.gaps])


def measure(stream: Iterable, counter: StepCounter, stats: DelayStats) -> Iterator:
    """Pass ``stream`` through while recording step counts between outputs.

    ``counter`` must be the one the stream's producer ticks. ``stats`` is
    filled in as outputs are pulled; ``postcalculation`` is final once the
    stream is exhausted.
    """
    last = counter.count
    first = True
    for item in stream:
        now = counter.count
        if first:
            stats.precalculation = now - last
            first = False
        else:
            stats.gaps.append(now - last)
        stats.outputs += 1
        last = now
        yield item
    if first:
        stats.precalculation = counter.count - last
    else:
        stats.postcalculation = counter.count - last
