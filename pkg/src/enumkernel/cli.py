"""Command-line front end.

Solutions go to stdout, one per line (sorted ids, space separated, the empty
set as an empty line). Reports go to stderr as ``key=value`` lines.

Exit statuses: 0 success / Equal, 2 NoInstance (no solution within budget),
3 Diff, 4 usage error.
"""
from __future__ import annotations

import argparse
import itertools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from . import fvs, oracle, vc
from .graph import MultiGraph, ParseError, RandomSpec, parse_graph, random_graph, serialize_graph
from .oracle import GuardError
from .steps import DelayStats, StepCounter, measure
from .trace_io import dump_trace

EXIT_OK, EXIT_NO, EXIT_DIFF, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default, which we reserve
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _report(fields: dict, out: TextIO) -> None:
    for key, val in fields.items():
        if isinstance(val, float):
            val = f"{val:.6f}"
        elif isinstance(val, bool):
            val = int(val)
        print(f"{key}={val}", file=out)
    out.flush()


def _fmt(s: Iterable[int]) -> str:
    return " ".join(map(str, sorted(s)))


def _load(path: str, problem: str | None = None) -> MultiGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        g = parse_graph(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if problem == "vc" and not g.is_simple():
        raise UsageError("vertex cover needs a simple graph (no loops or multi-edges)")
    return g


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _compress(problem: str, g: MultiGraph, k: int, decide: bool = True):
    return (vc.vc_compress if problem == "vc" else fvs.fvs_compress)(g, k, decide)


def _kernel_stream(problem: str, kern, counter: StepCounter | None = None) -> Iterator[frozenset]:
    if problem == "vc":
        return vc.enumerate_kernel_stream(kern, counter)
    return fvs.enumerate_fvs_kernel_stream(kern, counter)


def _kernel_solutions(problem: str, kern) -> Iterator[frozenset]:
    if problem == "vc":
        return vc.enumerate_kernel_vc(kern.graph, kern.k)
    return fvs.enumerate_kernel_fvs(kern.graph, kern.k)


def _oracle(problem: str, g: MultiGraph, k: int) -> Iterator[tuple[int, ...]]:
    if k < 0:
        return iter(())
    if problem == "vc":
        if len(g) > oracle.VC_GUARD:
            raise GuardError(f"oracle engine is limited to {oracle.VC_GUARD} vertices")
        return oracle.iter_vc(g, k)
    if len(g) > oracle.FVS_GUARD:
        raise GuardError(f"oracle engine is limited to {oracle.FVS_GUARD} vertices")
    return oracle.iter_fvs(g, k)


# subcommands


def cmd_gen(args) -> int:
    spec = RandomSpec(args.n, args.p, args.multi, args.loops, args.seed)
    _write(args.out, serialize_graph(random_graph(spec)) + "\n")
    return EXIT_OK


def cmd_kernelize(args) -> int:
    g = _load(args.input, args.problem)
    t0 = time.perf_counter()
    res = _compress(args.problem, g, args.k)
    wall = time.perf_counter() - t0
    rep = {"problem": args.problem, "n": len(g), "m": g.num_edges(), "k": args.k}
    if isinstance(res, vc.NoInstance):
        _report({**rep, "no_instance": True, "reason": res.reason.replace(" ", "_"), "wall": wall}, sys.stderr)
        return EXIT_NO
    _write(args.out, serialize_graph(res.graph) + "\n")
    if args.trace_out:
        _write(args.trace_out, dump_trace(args.problem, res.trace))
    _report({**rep, "no_instance": False, "kernel_n": len(res.graph), "kernel_m": res.graph.num_edges(),
             "k_prime": res.k, "trace_len": len(res.trace), "wall": wall}, sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    g = _load(args.input, args.problem)
    t0 = time.perf_counter()
    rep = {"problem": args.problem, "n": len(g), "m": g.num_edges(), "k": args.k, "engine": args.engine}
    if args.engine == "oracle":
        stream: Iterable = _oracle(args.problem, g, args.k)
    else:
        kern = _compress(args.problem, g, args.k, decide=False)
        if isinstance(kern, vc.NoInstance):
            stream = iter(())
            rep["no_instance"] = True
        else:
            stream = _kernel_stream(args.problem, kern)
            rep.update(kernel_n=len(kern.graph), k_prime=kern.k, trace_len=len(kern.trace))
    if args.max_solutions is not None:
        stream = itertools.islice(stream, args.max_solutions)
    count = 0
    out = sys.stdout
    for s in stream:
        count += 1
        if not args.count_only:
            out.write(_fmt(s) + "\n")
            if count == 1 or count % 4096 == 0:
                out.flush()
    if args.count_only:
        out.write(f"{count}\n")
    out.flush()
    rep.update(count=count, wall=time.perf_counter() - t0)
    _report(rep, sys.stderr)
    return EXIT_OK if count else EXIT_NO


@dataclass
class VerifyOutcome:
    equal: bool
    kernel_count: int
    oracle_count: int
    extension_only: bool
    fibers_partition: bool
    no_instance: bool
    witness: tuple[int, ...] | None = None


def verify_instance(problem: str, g: MultiGraph, k: int, inject_fault: bool = False) -> VerifyOutcome:
    """Run the kernel engine against the oracle on one instance.

    Besides set equality, checks the restriction map ``S -> S & V(kernel)``
    (every image a kernel solution, every kernel solution hit) and that the
    lifting fibers are pairwise disjoint.
    """
    truth = list(_oracle(problem, g, k))
    kern = _compress(problem, g, k)
    if isinstance(kern, vc.NoInstance):
        cmp = oracle.compare([], truth)
        return VerifyOutcome(cmp.equal, 0, len(truth), True, True, True, cmp.witness)
    kernel_sols = list(_kernel_solutions(problem, kern))
    lift = vc.vc_lift if problem == "vc" else fvs.fvs_lift
    produced: list[frozenset] = []
    seen: set[frozenset] = set()
    disjoint = True
    for j, s in enumerate(kernel_sols):
        fiber = list(lift(kern.trace, s))
        if inject_fault and j == 0 and fiber:
            fiber = fiber[1:]  # deliberately drop one lifted solution
        for t in fiber:
            if t in seen:
                disjoint = False
            seen.add(t)
        produced.extend(fiber)
    verts = set(kern.graph.adj)
    kset = set(kernel_sols)
    images = {t & verts for t in produced}
    ext = images <= kset and kset <= images
    cmp = oracle.compare(produced, truth)
    return VerifyOutcome(cmp.equal, len(produced), len(truth), ext, disjoint, False, cmp.witness)


def _verify_job(job) -> tuple:
    problem, spec, k, fault = job
    g = random_graph(spec)
    ks = range(0, len(g) + 1) if k is None else [k]
    return spec.seed, [(kk, verify_instance(problem, g, kk, fault)) for kk in ks]


def cmd_verify(args) -> int:
    if args.input is not None:
        g = _load(args.input, args.problem)
        o = verify_instance(args.problem, g, args.k, args.inject_fault)
        rep = {"problem": args.problem, "n": len(g), "k": args.k, "equal": o.equal,
               "kernel_count": o.kernel_count, "oracle_count": o.oracle_count,
               "no_instance": o.no_instance, "extension_only": o.extension_only,
               "fibers_disjoint": o.fibers_partition}
        if o.witness is not None:
            rep["witness"] = ",".join(map(str, o.witness)) or "empty"
        _report(rep, sys.stderr)
        return EXIT_OK if o.equal else EXIT_DIFF
    if args.seeds is None:
        raise UsageError("verify needs --in or --seeds")
    multi = args.multi if args.problem == "fvs" else 0.0
    loops = args.loops if args.problem == "fvs" else 0.0
    jobs = [(args.problem, RandomSpec(args.n, args.p, multi, loops, s), args.k, args.inject_fault)
            for s in range(args.seed, args.seed + args.seeds)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_job, jobs))
    else:
        results = [_verify_job(j) for j in jobs]
    diffs = ext_fail = checked = 0
    first = None
    for seed, outs in results:
        for kk, o in outs:
            checked += 1
            ext_fail += not o.extension_only
            if not o.equal:
                diffs += 1
                first = first or f"seed={seed},k={kk}"
    rep = {"problem": args.problem, "instances": checked, "diffs": diffs, "extension_only_failures": ext_fail}
    if first:
        rep["first_diff"] = first
    _report(rep, sys.stderr)
    return EXIT_OK if diffs == 0 else EXIT_DIFF


def cmd_bench_delay(args) -> int:
    g = _load(args.input, args.problem)
    counter = StepCounter()
    stats = DelayStats()
    t0 = time.perf_counter()

    def stream() -> Iterator[frozenset]:
        kern = _compress(args.problem, g, args.k, decide=False)
        counter.tick(len(g) + g.num_edges())
        if isinstance(kern, vc.NoInstance):
            return
        yield from _kernel_stream(args.problem, kern, counter)

    for _ in measure(stream(), counter, stats):
        pass
    _report({"problem": args.problem, "n": len(g), "m": g.num_edges(), "k": args.k,
             "outputs": stats.outputs, "precalculation": stats.precalculation,
             "max_delay": stats.max_delay, "mean_delay": stats.mean_delay,
             "postcalculation": stats.postcalculation, "total_steps": counter.count,
             "wall": time.perf_counter() - t0}, sys.stderr)
    return EXIT_OK if stats.outputs else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="enumkernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a seeded random (multi)graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--multi", type=float, default=0.0, help="probability an edge is doubled")
    g.add_argument("--loops", type=float, default=0.0, help="per-vertex loop probability")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    def common(sp, k_required=True):
        sp.add_argument("problem", choices=["vc", "fvs"])
        sp.add_argument("--in", dest="input", required=k_required)
        sp.add_argument("--k", type=int, required=k_required)

    kz = sub.add_parser("kernelize", help="compress an instance and write the kernel")
    common(kz)
    kz.add_argument("--out")
    kz.add_argument("--trace-out", "--traceOut", dest="trace_out")
    kz.set_defaults(func=cmd_kernelize)

    en = sub.add_parser("enumerate", help="stream all solutions of size at most k")
    common(en)
    en.add_argument("--engine", choices=["kernel", "oracle"], default="kernel")
    en.add_argument("--max-solutions", "--maxSolutions", dest="max_solutions", type=int)
    en.add_argument("--count-only", "--countOnly", dest="count_only", action="store_true")
    en.set_defaults(func=cmd_enumerate)

    ve = sub.add_parser("verify", help="compare the kernel engine with the oracle")
    common(ve, k_required=False)
    ve.add_argument("--seeds", type=int, help="batch mode: number of generated instances")
    ve.add_argument("--seed", type=int, default=0, help="first seed in batch mode")
    ve.add_argument("--n", type=int, default=8)
    ve.add_argument("--p", type=float, default=0.3)
    ve.add_argument("--multi", type=float, default=0.0)
    ve.add_argument("--loops", type=float, default=0.0)
    ve.add_argument("--jobs", type=int, default=1)
    ve.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    ve.set_defaults(func=cmd_verify)

    bd = sub.add_parser("bench-delay", help="instrumented enumeration with delay statistics")
    common(bd)
    bd.set_defaults(func=cmd_bench_delay)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and args.input is not None and args.k is None:
        print("enumkernel: error: verify --in needs --k", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GuardError, ValueError) as exc:
        print(f"enumkernel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
