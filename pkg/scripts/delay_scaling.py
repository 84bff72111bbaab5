"""Worst step gap of the small-crown enumerator on disjoint matchings.

Prints m, the number of outputs, the worst gap (first output, between
outputs, or after the last) and the gap normalised by (n + edges)^3.
"""
from __future__ import annotations

import argparse

from enumkernel.crownenum import CrownedInstance, enum_small_crown
from enumkernel.graph import MultiGraph
from enumkernel.steps import DelayStats, StepCounter, measure


def matching_instance(m: int) -> CrownedInstance:
    g = MultiGraph(range(1, 2 * m + 1), [(i, m + i) for i in range(1, m + 1)])
    head = frozenset(range(1, m + 1))
    return CrownedInstance(g, head, frozenset(range(m + 1, 2 * m + 1)), {i: m + i for i in head}, 0)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-min", type=int, default=4)
    ap.add_argument("--m-max", type=int, default=14)
    a = ap.parse_args()
    print("m,outputs,worst_gap,worst_over_size_cubed")
    for m in range(a.m_min, a.m_max + 1):
        counter, stats = StepCounter(), DelayStats()
        for _ in measure(enum_small_crown(matching_instance(m), counter), counter, stats):
            pass
        print(f"{m},{stats.outputs},{stats.worst},{stats.worst / (3 * m) ** 3:.5f}")


if __name__ == "__main__":
    main()
