"""Multigraphs, the graph families used throughout, and exact graph invariants.

Vertices are dense integers ``0..n-1``.  An edge is an unordered pair with a
positive multiplicity; multiplicity 2 is how a 2-cycle (double edge) is
encoded.  Self-loops are not allowed.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidParameter, NotAForest, TooLarge, UnsupportedPattern

MAX_EXACT_VERTICES = 24
MAX_PATTERN_VERTICES = 8
MAX_PATTERN_COPIES = 10_000


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Multigraph:
    """Immutable undirected multigraph on vertices ``0..n-1``.

    ``labels`` carries the original vertex names when the graph was obtained
    by deleting vertices from a larger one; it defaults to ``0..n-1``.
    """

    __slots__ = ("n", "_edges", "_adj", "labels")

    def __init__(self, n: int, edges: Mapping[tuple[int, int], int] | Iterable = (),
                 labels: Iterable[int] | None = None) -> None:
        if n < 0:
            raise InvalidParameter(f"negative vertex count {n}")
        items = edges.items() if isinstance(edges, Mapping) else _edge_items(edges)
        table: dict[tuple[int, int], int] = {}
        for (u, v), m in items:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidParameter(f"self-loop at {u}")
            if m < 1:
                raise InvalidParameter(f"multiplicity {m} on ({u}, {v}) must be >= 1")
            key = _pair(u, v)
            table[key] = table.get(key, 0) + m
        self.n = n
        self._edges = dict(sorted(table.items()))
        adj = [0] * n
        for u, v in self._edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)
        self.labels = tuple(range(n)) if labels is None else tuple(labels)
        if len(self.labels) != n:
            raise InvalidParameter("labels must name every vertex")

    # -- basic queries -------------------------------------------------
    @property
    def edges(self) -> dict[tuple[int, int], int]:
        return dict(self._edges)

    def edge_list(self) -> list[tuple[int, int, int]]:
        return [(u, v, m) for (u, v), m in self._edges.items()]

    @property
    def n_edges(self) -> int:
        """Number of adjacent pairs (multiplicity ignored)."""
        return len(self._edges)

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._edges.get(_pair(u, v), 0)

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return _bits(self._adj[v])

    def closed_neighborhood(self, v: int) -> list[int]:
        return _bits(self._adj[v] | (1 << v))

    def degree(self, v: int) -> int:
        """Number of distinct neighbours of ``v``."""
        return self._adj[v].bit_count()

    def is_simple(self) -> bool:
        return all(m == 1 for m in self._edges.values())

    # -- derived graphs ------------------------------------------------
    def induced(self, keep: Iterable[int]) -> Multigraph:
        """Subgraph induced on ``keep``, relabelled densely; ``labels`` tracks origins."""
        kept = sorted(set(keep))
        index = {v: i for i, v in enumerate(kept)}
        edges = {(index[u], index[v]): m for (u, v), m in self._edges.items()
                 if u in index and v in index}
        return Multigraph(len(kept), edges, labels=[self.labels[v] for v in kept])

    def delete_vertices(self, removed: Iterable[int]) -> Multigraph:
        gone = set(removed)
        return self.induced(v for v in range(self.n) if v not in gone)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={self._edges})"


def _edge_items(edges: Iterable) -> Iterator[tuple[tuple[int, int], int]]:
    for e in edges:
        if len(e) == 2:
            yield (e[0], e[1]), 1
        else:
            yield (e[0], e[1]), e[2]


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# generators

def path(n: int) -> Multigraph:
    if n < 1:
        raise InvalidParameter("path needs n >= 1")
    return Multigraph(n, {(i, i + 1): 1 for i in range(n - 1)})


def cycle(n: int) -> Multigraph:
    """The n-cycle; ``cycle(2)`` is a single double edge."""
    if n < 2:
        raise InvalidParameter("cycle needs n >= 2")
    if n == 2:
        return Multigraph(2, {(0, 1): 2})
    return Multigraph(n, {_pair(i, (i + 1) % n): 1 for i in range(n)})


def complete(n: int) -> Multigraph:
    if n < 1:
        raise InvalidParameter("complete graph needs n >= 1")
    return Multigraph(n, {(i, j): 1 for i in range(n) for j in range(i + 1, n)})


def complete_bipartite(m: int, n: int) -> Multigraph:
    if m < 1 or n < 1:
        raise InvalidParameter("complete bipartite graph needs both parts nonempty")
    return Multigraph(m + n, {(i, m + j): 1 for i in range(m) for j in range(n)})


def star(n: int) -> Multigraph:
    """K_{1,n} with centre 0."""
    return complete_bipartite(1, n)


def random_tree(n: int, seed: int) -> Multigraph:
    """Uniform labelled tree from a random Prüfer sequence."""
    if n < 1:
        raise InvalidParameter("tree needs n >= 1")
    if n == 1:
        return Multigraph(1)
    if n == 2:
        return Multigraph(2, {(0, 1): 1})
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = {}
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges[_pair(leaf, v)] = 1
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges[_pair(u, w)] = 1
    return Multigraph(n, edges)


def random_forest(n: int, seed: int, drop: float = 0.25) -> Multigraph:
    """A random tree with each edge independently removed with probability ``drop``."""
    tree = random_tree(n, seed)
    rng = random.Random(seed * 7919 + 17)
    kept = {e: m for e, m in tree.edges.items() if rng.random() >= drop}
    return Multigraph(n, kept)


def random_chordal(n: int, density: float, seed: int) -> Multigraph:
    """Chordal graph grown by attaching each new vertex to a clique of the current graph.

    The clique is a random subset of a maximal clique through a random earlier
    vertex; ``density`` scales the subset size (1 gives the whole maximal clique,
    0 gives no edges).
    """
    if n < 1:
        raise InvalidParameter("chordal graph needs n >= 1")
    if not 0.0 <= density <= 1.0:
        raise InvalidParameter("density must lie in [0, 1]")
    rng = random.Random(seed)
    adj = [0] * n
    for v in range(1, n):
        w = rng.randrange(v)
        clique = [w]
        others = list(range(v))
        rng.shuffle(others)
        for u in others:
            if u != w and all(adj[u] >> c & 1 for c in clique):
                clique.append(u)
        size = 0 if density == 0 else max(1, math.ceil(density * len(clique)))
        for u in rng.sample(clique, size):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    edges = {(u, v): 1 for u in range(n) for v in _bits(adj[u]) if u < v}
    return Multigraph(n, edges)


# ---------------------------------------------------------------------------
# patterns and containment

@dataclass(frozen=True)
class PatternGraph:
    """A small multigraph used as a forbidden pattern."""

    name: str
    graph: Multigraph

    def __post_init__(self) -> None:
        if self.graph.n > MAX_PATTERN_VERTICES:
            raise UnsupportedPattern(
                f"pattern {self.name} has {self.graph.n} vertices (max {MAX_PATTERN_VERTICES})")

    @property
    def has_isolated_vertex(self) -> bool:
        return any(self.graph.degree(v) == 0 for v in range(self.graph.n))


def pattern(name: str) -> PatternGraph:
    """Parse ``k2``, ``c2``, ``pK``, ``cK`` or ``kK`` into a pattern."""
    key = name.strip().lower()
    try:
        if key == "k2":
            return PatternGraph("k2", complete(2))
        size = int(key[1:])
        kind = key[0]
    except (ValueError, IndexError):
        raise UnsupportedPattern(f"unknown pattern {name!r}") from None
    if kind == "p":
        return PatternGraph(key, path(size))
    if kind == "c":
        return PatternGraph(key, cycle(size))
    if kind == "k":
        return PatternGraph(key, complete(size))
    raise UnsupportedPattern(f"unknown pattern {name!r}")


def _as_pattern(F: PatternGraph | Multigraph) -> PatternGraph:
    return F if isinstance(F, PatternGraph) else PatternGraph("custom", F)


def _pattern_order(F: Multigraph) -> list[int]:
    """Pattern vertices ordered so each one (after the first of a component) touches an earlier one."""
    order: list[int] = []
    seen = 0
    for start in sorted(range(F.n), key=lambda v: -F.degree(v)):
        if seen >> start & 1:
            continue
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in F.neighbors(v):
                if not seen >> u & 1:
                    seen |= 1 << u
                    queue.append(u)
    return order


def embeddings(G: Multigraph, F: PatternGraph | Multigraph) -> Iterator[tuple[int, ...]]:
    """Injective maps V(F) -> V(G) respecting multiplicities (not necessarily induced).

    Yields tuples ``phi`` with ``phi[f]`` the image of pattern vertex ``f``.
    """
    F = _as_pattern(F).graph
    if F.n > G.n:
        return
    order = _pattern_order(F)
    position = {v: i for i, v in enumerate(order)}
    # for each pattern vertex, the earlier pattern vertices it must connect to
    back = [[(u, F.multiplicity(u, v)) for u in F.neighbors(v) if position[u] < position[v]]
            for v in order]
    phi = [-1] * F.n
    used = 0

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if i == len(order):
            yield tuple(phi)
            return
        f = order[i]
        constraints = back[i]
        if constraints:
            candidates = G.adjacency_mask(phi[constraints[0][0]]) & ~used
        else:
            candidates = ((1 << G.n) - 1) & ~used
        for g in _bits(candidates):
            if all(G.multiplicity(phi[u], g) >= m for u, m in constraints):
                phi[f] = g
                used |= 1 << g
                yield from extend(i + 1)
                used &= ~(1 << g)
                phi[f] = -1

    yield from extend(0)


def copy_vertex_sets(G: Multigraph, F: PatternGraph | Multigraph) -> set[int]:
    """Bitmasks of the vertex sets of all copies of ``F`` in ``G``."""
    return {_mask(phi) for phi in embeddings(G, F)}


def contains_pattern(G: Multigraph, F: PatternGraph | Multigraph) -> bool:
    for _ in embeddings(G, F):
        return True
    return False


def is_family_free(G: Multigraph, family: Iterable[PatternGraph | Multigraph]) -> bool:
    return not any(contains_pattern(G, F) for F in family)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# exact invariants

def _check_exact_size(G: Multigraph) -> None:
    if G.n > MAX_EXACT_VERTICES:
        raise TooLarge(f"exact search capped at {MAX_EXACT_VERTICES} vertices, got {G.n}")


def matching_number(G: Multigraph) -> int:
    """Maximum number of pairwise disjoint edges."""
    _check_exact_size(G)
    adj = [G.adjacency_mask(v) for v in range(G.n)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        # drop vertices with no partner left
        while mask:
            v = (mask & -mask).bit_length() - 1
            if adj[v] & mask:
                break
            mask &= ~(1 << v)
        if not mask:
            return 0
        rest = mask & ~(1 << v)
        result = best(rest)
        for u in _bits(adj[v] & rest):
            result = max(result, 1 + best(rest & ~(1 << u)))
        return result

    return best((1 << G.n) - 1)


def vertex_cover_number(G: Multigraph) -> int:
    """Minimum size of a vertex set touching every edge."""
    _check_exact_size(G)
    adj = [G.adjacency_mask(v) for v in range(G.n)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        pivot, pivot_deg = -1, 0
        for v in _bits(mask):
            d = (adj[v] & mask).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        if pivot_deg == 0:
            return 0
        if pivot_deg == 1:
            # a degree-1 vertex: taking its neighbour is always optimal
            leaf_nb = next(v for v in _bits(mask) if (adj[v] & mask).bit_count() >= 1)
            u = _bits(adj[leaf_nb] & mask)[0]
            return 1 + best(mask & ~(1 << u) & ~(1 << leaf_nb))
        take = 1 + best(mask & ~(1 << pivot))
        nbrs = adj[pivot] & mask
        skip = pivot_deg + best(mask & ~nbrs & ~(1 << pivot))
        return min(take, skip)

    return best((1 << G.n) - 1)


def induced_F_matching_number(G: Multigraph, F: PatternGraph | Multigraph) -> int:
    """Largest number of vertex-disjoint copies of ``F`` spanning no further edge of ``G``."""
    _check_exact_size(G)
    Fg = _as_pattern(F).graph
    copies: set[int] = set()
    for phi in embeddings(G, Fg):
        vmask = _mask(phi)
        if vmask in copies:
            continue
        # the copy must be induced: G[V(copy)] carries exactly the copy's edges
        image = {_pair(phi[a], phi[b]): m for (a, b), m in Fg.edges.items()}
        verts = _bits(vmask)
        induced_ok = all(G.multiplicity(a, b) == image.get((a, b), 0)
                         for i, a in enumerate(verts) for b in verts[i + 1:])
        if induced_ok:
            copies.add(vmask)
            if len(copies) > MAX_PATTERN_COPIES:
                raise TooLarge(f"more than {MAX_PATTERN_COPIES} copies of the pattern")
    by_vertex: dict[int, list[int]] = {}
    for c in copies:
        for v in _bits(c):
            by_vertex.setdefault(v, []).append(c)
    adj = [G.adjacency_mask(v) for v in range(G.n)]

    def closed(c: int) -> int:
        out = c
        for v in _bits(c):
            out |= adj[v]
        return out

    reach = {c: closed(c) for c in copies}

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        while avail:
            v = (avail & -avail).bit_length() - 1
            if any(c & avail == c for c in by_vertex.get(v, ())):
                break
            avail &= ~(1 << v)
        if not avail:
            return 0
        result = best(avail & ~(1 << v))
        for c in by_vertex[v]:
            if c & avail == c:
                result = max(result, 1 + best(avail & ~reach[c]))
        return result

    return best((1 << G.n) - 1)


def ind_k(G: Multigraph, k: int) -> int:
    return induced_F_matching_number(G, path(k))


# ---------------------------------------------------------------------------
# forests and chordality

def is_forest(G: Multigraph) -> bool:
    if not G.is_simple():
        return False
    parent = list(range(G.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in G.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def leaves(G: Multigraph) -> list[int]:
    return [v for v in range(G.n) if G.degree(v) == 1]


def saddle_vertices(F: Multigraph) -> list[int]:
    """Non-leaf vertices having at most one non-leaf neighbour.

    Equivalently the vertices of degree 0 or 1 in the forest obtained by
    stripping every leaf.
    """
    if not is_forest(F):
        raise NotAForest("saddle vertices are defined for forests only")
    leaf = {v for v in range(F.n) if F.degree(v) == 1}
    return [v for v in range(F.n)
            if v not in leaf and sum(1 for u in F.neighbors(v) if u not in leaf) <= 1]


def unique_nonleaf_neighbor(T: Multigraph, x: int) -> int | None:
    inner = [u for u in T.neighbors(x) if T.degree(u) > 1]
    return inner[0] if len(inner) == 1 else None


def simplicial_vertices(G: Multigraph) -> list[int]:
    out = []
    for v in range(G.n):
        nb = G.neighbors(v)
        if all(G.adjacency_mask(a) >> b & 1 for i, a in enumerate(nb) for b in nb[i + 1:]):
            out.append(v)
    return out


def is_chordal(G: Multigraph) -> bool:
    """Chordality by repeatedly removing a simplicial vertex."""
    alive = (1 << G.n) - 1
    adj = [G.adjacency_mask(v) for v in range(G.n)]
    while alive:
        for v in _bits(alive):
            nb = _bits(adj[v] & alive)
            if all(adj[a] >> b & 1 for i, a in enumerate(nb) for b in nb[i + 1:]):
                alive &= ~(1 << v)
                break
        else:
            return False
    return True


def build_Gx(T: Multigraph, x: int) -> Multigraph:
    """Collapse ``x`` out of a tree, turning every pair that forms a 3-path with ``x`` into a double edge.

    The result keeps the original vertex ids of ``T`` in ``labels``.
    """
    if not 0 <= x < T.n:
        raise InvalidParameter(f"vertex {x} out of range")
    edges = T.edges
    nx = T.neighbors(x)
    targets: set[tuple[int, int]] = set()
    # x in the middle: two neighbours of x that are not adjacent
    for i, a in enumerate(nx):
        for b in nx[i + 1:]:
            if not T.multiplicity(a, b):
                targets.add(_pair(a, b))
    # x at an end: x - a - b with b not adjacent to x
    for a in nx:
        for b in T.neighbors(a):
            if b != x and not T.multiplicity(x, b):
                targets.add(_pair(a, b))
    for e in targets:
        edges[e] = 2
    full = Multigraph(T.n, edges, labels=T.labels)
    return full.delete_vertices([x])


# ---------------------------------------------------------------------------
# text format: line ``n <count>`` then ``u v m`` per edge

def parse_graph(text: str) -> Multigraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n"):
        raise InvalidParameter("graph file must start with 'n <count>'")
    n = int(lines[0].split()[1])
    edges = []
    for ln in lines[1:]:
        parts = [int(p) for p in ln.split()]
        if len(parts) == 2:
            parts.append(1)
        if len(parts) != 3:
            raise InvalidParameter(f"bad edge line {ln!r}")
        edges.append(tuple(parts))
    return Multigraph(n, edges)


def format_graph(G: Multigraph) -> str:
    body = [f"n {G.n}"] + [f"{u} {v} {m}" for u, v, m in G.edge_list()]
    return "\n".join(body) + "\n"
