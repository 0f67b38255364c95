"""Shared brute-force oracles and hypothesis strategies."""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np
from hypothesis import strategies as st

from matchtree.graph import Multigraph
from matchtree.simplicial import SimplicialComplex, members


def all_subsets(n: int) -> range:
    return range(1 << n)


def brute_faces(C: SimplicialComplex) -> set[int]:
    """Faces by testing every subset against the minimal non-faces directly."""
    out = set()
    for s in all_subsets(C.n):
        if not any(m & s == m for m in C.min_nonfaces):
            out.add(s)
    return out


def closure(n: int, facets: list[int]) -> set[int]:
    return {s for s in all_subsets(n) if any(s & f == s for f in facets)}


def minimal(sets) -> set[int]:
    sets = set(sets)
    return {s for s in sets if not any(t != s and t & s == t for t in sets)}


def float_betti(C: SimplicialComplex) -> dict[int, int]:
    """Reduced Betti numbers from floating-point ranks of dense boundary matrices (small inputs only)."""
    faces = sorted(brute_faces(C), key=lambda s: (s.bit_count(), members(s)))
    by_dim: dict[int, list[int]] = {}
    for s in faces:
        by_dim.setdefault(s.bit_count() - 1, []).append(s)
    rank = {}
    for d, fs in by_dim.items():
        if d < 0:
            continue
        lower = {s: i for i, s in enumerate(by_dim[d - 1])}
        M = np.zeros((len(lower), len(fs)))
        for j, s in enumerate(fs):
            for pos, v in enumerate(members(s)):
                M[lower[s & ~(1 << v)], j] = (-1) ** pos
        rank[d] = int(np.linalg.matrix_rank(M)) if M.size else 0
    out = {}
    for d, fs in by_dim.items():
        b = len(fs) - rank.get(d, 0) - rank.get(d + 1, 0)
        if b:
            out[d] = b
    return out


def brute_contains(G: Multigraph, F: Multigraph) -> bool:
    """Try every injective vertex map."""
    fe = F.edges
    for image in permutations(range(G.n), F.n):
        if all(G.multiplicity(image[a], image[b]) >= m for (a, b), m in fe.items()):
            return True
    return False


@st.composite
def multigraphs(draw, max_n: int = 8, max_mult: int = 2, min_n: int = 1) -> Multigraph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    edges = {}
    for p in pairs:
        m = draw(st.integers(0, max_mult)) if draw(st.booleans()) else 0
        if m:
            edges[p] = m
    return Multigraph(n, edges)


@st.composite
def complexes(draw, max_n: int = 8, max_nonfaces: int = 8) -> SimplicialComplex:
    n = draw(st.integers(0, max_n))
    if n == 0:
        return SimplicialComplex(0)
    nf = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=max_nonfaces))
    return SimplicialComplex(n, nf)


@st.composite
def facet_complexes(draw, max_n: int = 7) -> tuple[int, list[int]]:
    n = draw(st.integers(1, max_n))
    facets = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6))
    return n, facets
