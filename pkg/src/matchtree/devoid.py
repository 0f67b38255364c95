"""Complexes built from graphs: devoid, independence and dominance complexes."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import InvalidParameter, UnsupportedPattern
from .graph import Multigraph, PatternGraph, copy_vertex_sets, pattern
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class DevoidSpec:
    graph: Multigraph
    family: tuple[PatternGraph, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        fam = tuple(pattern(f) if isinstance(f, str) else f for f in self.family)
        object.__setattr__(self, "family", fam)
        for F in fam:
            if F.graph.n_edges == 0:
                raise UnsupportedPattern(f"pattern {F.name} has no edges")
            if F.has_isolated_vertex:
                raise UnsupportedPattern(
                    f"pattern {F.name} has an isolated vertex; copy vertex sets would not be minimal witnesses")


def devoid_complex(spec: DevoidSpec | Multigraph, family: Iterable[PatternGraph | str] | None = None
                   ) -> SimplicialComplex:
    """Faces are the vertex sets whose induced subgraph contains no pattern of the family.

    Accepts either a :class:`DevoidSpec` or a graph plus a family.
    """
    if isinstance(spec, Multigraph):
        spec = DevoidSpec(spec, tuple(family or ()))
    G = spec.graph
    if G.n > 64:
        raise InvalidParameter("devoid complexes are limited to 64 vertices")
    witnesses: set[int] = set()
    for F in spec.family:
        witnesses |= copy_vertex_sets(G, F)
    return SimplicialComplex(G.n, witnesses)


def independence_complex(G: Multigraph) -> SimplicialComplex:
    """Independent sets; an adjacent pair is a non-face whatever its multiplicity."""
    return SimplicialComplex(G.n, [(1 << u) | (1 << v) for u, v in G.edges])


def dominance_complex(G: Multigraph) -> SimplicialComplex:
    """Complements of dominating sets; the minimal non-faces are the minimal closed neighbourhoods."""
    return SimplicialComplex(G.n, [G.adjacency_mask(v) | (1 << v) for v in range(G.n)])


def is_double_complete_closed_neighborhood(G: Multigraph, u: int) -> bool:
    closed = G.closed_neighborhood(u)
    return all(G.multiplicity(a, b) >= 2 for i, a in enumerate(closed) for b in closed[i + 1:])


def parse_family(names: str | Sequence[str]) -> tuple[PatternGraph, ...]:
    """``"p3,c2"`` or ``["p3", "c2"]`` to patterns."""
    if isinstance(names, str):
        names = [x for x in names.split(",") if x.strip()]
    return tuple(pattern(x) for x in names)
