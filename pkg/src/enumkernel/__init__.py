"""Enumeration kernels for vertex cover and feedback vertex set."""
from .graph import MultiGraph, parse_graph, serialize_graph
from .vc import NoInstance, VcKernel, vc_compress, vc_enumerate
from .fvs import FvsKernel, fvs_compress, fvs_enumerate

__all__ = [
    "MultiGraph", "parse_graph", "serialize_graph",
    "NoInstance", "VcKernel", "vc_compress", "vc_enumerate",
    "FvsKernel", "fvs_compress", "fvs_enumerate",
]
