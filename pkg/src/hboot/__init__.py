"""Bootstrap processes driven by cycle patterns."""

from hboot.graph import Graph, from_edges, graph6_decode, graph6_encode
from hboot.kernels import BACKEND
from hboot.numtheory import frobenius, predict_M, predict_r
from hboot.patterns import Cycle, CycleUnion, Generic, parse_rule
from hboot.process import ProcessTrace, run, tau

__all__ = [
    "BACKEND",
    "Cycle",
    "CycleUnion",
    "Generic",
    "Graph",
    "ProcessTrace",
    "from_edges",
    "frobenius",
    "graph6_decode",
    "graph6_encode",
    "parse_rule",
    "predict_M",
    "predict_r",
    "run",
    "tau",
]
__version__ = "0.1.0"
