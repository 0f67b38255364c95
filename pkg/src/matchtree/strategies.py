"""Pivot strategies for matching trees.

A strategy sees a :class:`Context` for each node and returns ``(pivot, γ)``
(``γ`` None for the default split set) or None to abstain.  Strategies may
carry a per-node tag, handed down to children through ``child_tag``; the
cycle labeling uses it to track its splitting cascade.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import InvalidParameter
from .graph import Multigraph
from .morse import MATCHING, NodeState, open_obstructions
from .simplicial import Face, SimplicialComplex, face, members

Choice = tuple[int, Face | None]


@dataclass
class Context:
    C: SimplicialComplex
    node: NodeState
    tag: Any
    available: Face

    def open(self, p: int) -> list[Face]:
        return open_obstructions(self.C, self.node, p)[1]

    def is_available(self, v: int) -> bool:
        return 0 <= v < self.C.n and bool(self.available >> v & 1)


class Strategy:
    name = "strategy"

    def root_tag(self, C: SimplicialComplex) -> Any:
        return None

    def choose(self, ctx: Context) -> Choice | None:
        raise NotImplementedError

    def child_tag(self, tag: Any, kind: str, which: int, ctx: Context) -> Any:
        return tag


class Greedy(Strategy):
    """Smallest pivot giving a matching site; otherwise split at the smallest pivot."""

    name = "greedy"

    def choose(self, ctx: Context) -> Choice:
        vs = members(ctx.available)
        for p in vs:
            if len(ctx.open(p)) <= 1:
                return p, None
        return vs[0], None


class Scripted(Strategy):
    """Pivots (and split sets) listed per node; optionally a fallback pivot order.

    ``nodes`` maps ``(A, frozenset(B))`` to ``(pivot, γ or None)``.  Nodes not
    listed take the first available vertex of ``order``; with no order the
    strategy abstains there.
    """

    name = "scripted"

    def __init__(self, nodes: Mapping[tuple[Face, frozenset[Face]], Choice] | None = None,
                 order: Iterable[int] | None = None) -> None:
        self.nodes = dict(nodes or {})
        self.order = list(order) if order is not None else None

    def choose(self, ctx: Context) -> Choice | None:
        key = (ctx.node.A, frozenset(ctx.node.B))
        if key in self.nodes:
            return self.nodes[key]
        for v in self.order or ():
            if ctx.is_available(v):
                return v, None
        return None

    @classmethod
    def from_json(cls, doc: Mapping) -> Scripted:
        nodes = {}
        for entry in doc.get("nodes", ()):
            key = (face(entry["A"]), frozenset(face(b) for b in entry["B"]))
            gamma = entry.get("gamma")
            nodes[key] = (int(entry["pivot"]), None if gamma is None else face(gamma))
        return cls(nodes, doc.get("order"))

    @classmethod
    def load(cls, path: str | Path) -> Scripted:
        return cls.from_json(json.loads(Path(path).read_text()))


class PathLabeling(Strategy):
    """Block labeling along a path: always pivot at the smallest available vertex."""

    def __init__(self, k: int) -> None:
        if k < 2:
            raise InvalidParameter("path labeling needs k >= 2")
        self.k = k
        self.name = f"path:{k}"

    def choose(self, ctx: Context) -> Choice:
        return members(ctx.available)[0], None


class CycleLabeling(Strategy):
    """Pivot order for a cycle on ids ``0..n-1``: a splitting cascade, then walks.

    The root splits at pivot 0 on the run ``{1..k-1}``; each left child
    continues the cascade at the next vertex with the run shortened by one,
    up to pivot ``k-2``.  Every other branch walks around the cycle,
    pivoting at the first available vertex from a fixed start in a fixed
    direction.
    """

    def __init__(self, k: int) -> None:
        if k < 2:
            raise InvalidParameter("cycle labeling needs k >= 2")
        self.k = k
        self.name = f"cycle:{k}"

    def root_tag(self, C: SimplicialComplex) -> Any:
        return ("cascade", 0) if self.k >= 3 else ("walk", 0, 1)

    def choose(self, ctx: Context) -> Choice:
        tag, n = ctx.tag, ctx.C.n
        if tag[0] == "cascade":
            i = tag[1]
            if ctx.is_available(i):
                want = face(range(i + 1, self.k))
                return i, want if want in ctx.open(i) else None
            return members(ctx.available)[0], None
        _, start, step = tag
        for j in range(n):
            v = (start + step * j) % n
            if ctx.is_available(v):
                return v, None
        raise AssertionError("no available vertex at a non-leaf node")

    def child_tag(self, tag: Any, kind: str, which: int, ctx: Context) -> Any:
        if tag[0] != "cascade" or kind == MATCHING:
            return tag
        i, n = tag[1], ctx.C.n
        if which == 0:
            return ("cascade", i + 1) if i + 1 <= self.k - 2 else ("walk", self.k % n, 1)
        if i == 0:
            return ("walk", (self.k + 1) % n, 1)
        return ("walk", i - 1, -1)


def _induced_mask(G: Multigraph, avail: Face, v: int) -> Face:
    return G.adjacency_mask(v) & avail


class SimplicialVertex(Strategy):
    """Pivot at the smallest simplicial vertex of the graph induced on the available vertices."""

    name = "simplicial"

    def __init__(self, G: Multigraph) -> None:
        self.G = G

    def choose(self, ctx: Context) -> Choice:
        avail = ctx.available
        for v in members(avail):
            nb = _induced_mask(self.G, avail, v)
            if all(nb & ~(1 << w) & ~_induced_mask(self.G, avail, w) == 0 for w in members(nb)):
                return v, None
        return members(avail)[0], None


class LeafNeighbor(Strategy):
    """Forest pivots: a leaf hanging off a saddle vertex of the remaining forest.

    Works on the component of the smallest available vertex; a single edge
    pivots at its smaller end, an isolated vertex at itself.
    """

    name = "leaf"

    def __init__(self, G: Multigraph) -> None:
        self.G = G

    def choose(self, ctx: Context) -> Choice:
        avail = ctx.available
        adj = {v: _induced_mask(self.G, avail, v) for v in members(avail)}
        start = members(avail)[0]
        comp, frontier = 1 << start, [start]
        while frontier:
            v = frontier.pop()
            new = adj[v] & ~comp
            comp |= new
            frontier.extend(members(new))
        vs = members(comp)
        if len(vs) <= 2:
            return vs[0], None
        deg = {v: adj[v].bit_count() for v in vs}
        inner = [v for v in vs if deg[v] > 1]
        for x in inner:
            if sum(1 for w in members(adj[x]) if deg[w] > 1) <= 1:
                leaf = next(w for w in members(adj[x]) if deg[w] == 1)
                return leaf, None
        return vs[0], None


def parse_strategy(spec: str, G: Multigraph | None = None) -> Strategy:
    """``greedy``, ``scripted:<file>``, ``path:<k>``, ``cycle:<k>``, ``simplicial``, ``leaf``."""
    name, _, arg = spec.partition(":")
    if name == "greedy":
        return Greedy()
    if name == "scripted":
        if not arg:
            raise InvalidParameter("scripted strategy needs a file: scripted:<file>")
        s = Scripted.load(arg)
        s.name = spec
        return s
    if name in ("path", "cycle"):
        try:
            k = int(arg)
        except ValueError as exc:
            raise InvalidParameter(f"{name} strategy needs an integer: {name}:<k>") from exc
        return PathLabeling(k) if name == "path" else CycleLabeling(k)
    if name in ("simplicial", "leaf"):
        if G is None:
            raise InvalidParameter(f"strategy {name} needs the underlying graph")
        return SimplicialVertex(G) if name == "simplicial" else LeafNeighbor(G)
    raise InvalidParameter(f"unknown strategy {spec!r}")

