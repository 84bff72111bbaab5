"""Text serialization of reduction traces.

One entry per line: a tag followed by ``key=value`` fields. Values are
integers, comma-separated integer lists (``-`` for empty), ``u:v``
pair lists, ``0``/``1`` booleans, or graphs written in the edge-list format
and base64-wrapped. The first line is ``trace <problem> <length>``::

    trace fvs 2
    short_path a=1 x=2 b=3 k=1 graph=cCA0IDQKZSAxIDIK...
    pending_doubles u=1 petals=3 k_before=1 graph=...
"""
from __future__ import annotations

import base64
import dataclasses
from typing import Callable

from . import fvs, vc
from .graph import MultiGraph, ParseError, parse_graph, serialize_graph


def _ints(xs) -> str:
    xs = sorted(xs) if isinstance(xs, (set, frozenset)) else list(xs)
    return ",".join(map(str, xs)) if xs else "-"


def _parse_ints(s: str) -> list[int]:
    return [] if s == "-" else [int(t) for t in s.split(",")]


def _pairs(ps) -> str:
    ps = sorted(ps.items()) if isinstance(ps, dict) else sorted(ps)
    return ",".join(f"{a}:{b}" for a, b in ps) if ps else "-"


def _parse_pairs(s: str) -> list[tuple[int, int]]:
    if s == "-":
        return []
    out = []
    for t in s.split(","):
        a, b = t.split(":")
        out.append((int(a), int(b)))
    return out


def _graph(g: MultiGraph) -> str:
    return base64.b64encode(serialize_graph(g).encode()).decode()


def _parse_graph(s: str) -> MultiGraph:
    return parse_graph(base64.b64decode(s.encode(), validate=True).decode())


# annotation string -> (encode, decode)
_CODECS: dict[str, tuple[Callable, Callable]] = {
    "int": (str, int),
    "str": (str, str),
    "bool": (lambda b: "1" if b else "0", lambda s: {"0": False, "1": True}[s]),
    "tuple[int, ...]": (_ints, lambda s: tuple(_parse_ints(s))),
    "frozenset[int]": (_ints, lambda s: frozenset(_parse_ints(s))),
    "MultiGraph": (_graph, _parse_graph),
    "dict[int, int]": (_pairs, lambda s: dict(_parse_pairs(s))),
    "frozenset[tuple[int, int]]": (_pairs, lambda s: frozenset(_parse_pairs(s))),
}

_TAGS: dict[str, type] = {
    "isolated": vc.IsolatedRemoved,
    "crown": vc.CrownApplied,
    "basic": fvs.Basic1,
    "short_path": fvs.ShortPath,
    "twin_triangle": fvs.TwinTriangle,
    "pending_doubles": fvs.PendingDoubles,
    "multiflag": fvs.MultiFlag,
    "flower": fvs.FlowerRemoved,
    "aux_double": fvs.AuxDouble,
    "edge_delete": fvs.EdgeDelete,
}
_TAG_OF = {cls: tag for tag, cls in _TAGS.items()}
_PROBLEM_TAGS = {
    "vc": {"isolated", "crown"},
    "fvs": set(_TAGS) - {"isolated", "crown"},
}


def format_entry(entry) -> str:
    tag = _TAG_OF[type(entry)]
    parts = [tag]
    for f in dataclasses.fields(entry):
        enc, _ = _CODECS[f.type]
        parts.append(f"{f.name}={enc(getattr(entry, f.name))}")
    return " ".join(parts)


def parse_entry(line: str, lineno: int = 0):
    tag, *fields = line.split()
    cls = _TAGS.get(tag)
    if cls is None:
        raise ParseError(lineno, f"unknown trace tag {tag!r}")
    values = {}
    for item in fields:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ParseError(lineno, f"malformed field {item!r}")
        values[key] = raw
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name not in values:
            raise ParseError(lineno, f"{tag}: missing field {f.name}")
        _, dec = _CODECS[f.type]
        try:
            kwargs[f.name] = dec(values.pop(f.name))
        except (ValueError, KeyError, ParseError) as exc:
            raise ParseError(lineno, f"{tag}: bad value for {f.name}: {exc}") from exc
    if values:
        raise ParseError(lineno, f"{tag}: unexpected fields {sorted(values)}")
    return cls(**kwargs)


def dump_trace(problem: str, trace: list) -> str:
    lines = [f"trace {problem} {len(trace)}"]
    for e in trace:
        if _TAG_OF[type(e)] not in _PROBLEM_TAGS[problem]:
            raise ValueError(f"{type(e).__name__} does not belong to a {problem} trace")
        lines.append(format_entry(e))
    return "\n".join(lines) + "\n"


def load_trace(text: str) -> tuple[str, list]:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError(0, "empty trace document")
    i, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "trace" or parts[1] not in _PROBLEM_TAGS:
        raise ParseError(i, f"bad trace header {header!r}")
    problem, n = parts[1], int(parts[2])
    entries = []
    for i, ln in lines[1:]:
        e = parse_entry(ln, i)
        if _TAG_OF[type(e)] not in _PROBLEM_TAGS[problem]:
            raise ParseError(i, f"{type(e).__name__} in a {problem} trace")
        entries.append(e)
    if len(entries) != n:
        raise ParseError(i, f"header announces {n} entries, found {len(entries)}")
    return problem, entries


def replay(g: MultiGraph, k: int, trace: list) -> tuple[MultiGraph, int]:
    """Re-apply a trace to its input instance and return the reduced instance."""
    g = g.copy()
    for e in trace:
        if isinstance(e, vc.IsolatedRemoved):
            g.remove_vertex(e.v)
        elif isinstance(e, vc.CrownApplied):
            g.remove_vertices(e.head | e.crown)
            k = e.k_after
        elif isinstance(e, fvs.Basic1):
            if e.case in ("i", "iii"):
                g.set_multiplicity(*e.vertices, 2)
            else:
                g.remove_vertex(e.vertices[0])
            k = e.k_after
        elif isinstance(e, fvs.ShortPath):
            g.contract(e.x, e.a)
        elif isinstance(e, fvs.TwinTriangle):
            g.remove_vertex(e.y)
            g.set_multiplicity(e.u, e.x, 2)
        elif isinstance(e, fvs.PendingDoubles):
            g.remove_vertices((e.u, *e.petals))
            k = e.k_before - 1
        elif isinstance(e, fvs.MultiFlag):
            g.remove_vertices((e.a, e.b, *e.flags))
            k = e.k_before - 1
        elif isinstance(e, fvs.FlowerRemoved):
            g.remove_vertex(e.v)
            k = e.k_before - 1
        elif isinstance(e, fvs.AuxDouble):
            g.set_multiplicity(e.u, e.v, 2)
        elif isinstance(e, fvs.EdgeDelete):
            g.remove_edge(e.v, e.w)
        else:
            raise TypeError(f"unknown trace entry {e!r}")
    return g, k
