"""Matching trees, Morse matchings and homotopy types of devoid complexes of graphs."""

from .descriptor import HomotopyDescriptor
from .devoid import DevoidSpec, devoid_complex, dominance_complex, independence_complex
from .graph import Multigraph, PatternGraph, complete, cycle, path, pattern, star
from .homology import BettiProfile, betti
from .morse import NodeState, assemble_matching, d_up, expand, interpret, run_tree, verify_acyclic, verify_matching
from .simplicial import SimplicialComplex, face, members
from .strategies import CycleLabeling, Greedy, LeafNeighbor, PathLabeling, Scripted, SimplicialVertex

__all__ = [
    "BettiProfile", "CycleLabeling", "DevoidSpec", "Greedy", "HomotopyDescriptor", "LeafNeighbor", "Multigraph",
    "NodeState", "PathLabeling", "PatternGraph", "Scripted", "SimplicialComplex", "SimplicialVertex",
    "assemble_matching", "betti", "complete", "cycle", "d_up", "devoid_complex", "dominance_complex", "expand", "face",
    "independence_complex", "interpret", "members", "path", "pattern", "run_tree", "star", "verify_acyclic", "verify_matching",
]
