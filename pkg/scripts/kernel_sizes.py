"""Kernel sizes on seeded random instances, as a CSV on stdout.

    python3 scripts/kernel_sizes.py --problem fvs --seeds 200 --n 40
"""
from __future__ import annotations

import argparse
import csv
import random
import sys
from dataclasses import dataclass

from enumkernel import fvs, vc
from enumkernel.graph import RandomSpec, random_graph


@dataclass
class Config:
    problem: str = "vc"
    seeds: int = 100
    n: int = 40
    k_max: int = 8


def run(cfg: Config) -> None:
    w = csv.writer(sys.stdout)
    w.writerow(["seed", "n", "m", "k", "no_instance", "kernel_n", "k_prime", "bound", "trace_len"])
    for seed in range(cfg.seeds):
        r = random.Random(seed)
        if cfg.problem == "vc":
            g = random_graph(RandomSpec(r.randint(1, cfg.n), r.choice([0.05, 0.1, 0.3]), seed=seed))
        else:
            g = random_graph(RandomSpec(r.randint(1, cfg.n), r.choice([0.05, 0.1, 0.2]),
                                        multi_prob=0.1, loop_prob=0.02, seed=seed))
        k = r.randint(1, cfg.k_max)
        res = vc.vc_compress(g, k) if cfg.problem == "vc" else fvs.fvs_compress(g, k)
        if isinstance(res, vc.NoInstance):
            w.writerow([seed, len(g), g.num_edges(), k, 1, "", "", "", ""])
            continue
        bound = 2 * res.k if cfg.problem == "vc" else fvs.size_bound(res.k)
        w.writerow([seed, len(g), g.num_edges(), k, 0, len(res.graph), res.k, bound, len(res.trace)])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--problem", choices=["vc", "fvs"], default="vc")
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--k-max", type=int, default=8)
    a = ap.parse_args()
    run(Config(a.problem, a.seeds, a.n, a.k_max))
