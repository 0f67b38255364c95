"""Simplicial complexes stored by their minimal non-faces.

A face is an ``int`` bitmask over vertex ids ``0..63``.  A complex on ``n``
vertices is the set of vertex subsets containing no minimal non-face.
Vertices that are not themselves faces ("ghosts") appear as singleton
minimal non-faces; deletion and link keep vertex ids stable by turning the
removed vertices into ghosts.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path

from .errors import InvalidFace, InvalidParameter, TooLarge

Face = int

MAX_VERTICES = 64
MAX_FACET_SCAN_VERTICES = 24
MAX_FACES = 1 << 22


def face(vertices: Iterable[int] = ()) -> Face:
    mask = 0
    for v in vertices:
        if not 0 <= v < MAX_VERTICES:
            raise InvalidParameter(f"vertex {v} outside 0..{MAX_VERTICES - 1}")
        mask |= 1 << v
    return mask


def members(mask: Face) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def card(mask: Face) -> int:
    return mask.bit_count()


def face_key(mask: Face) -> tuple[int, ...]:
    """Sort key giving lexicographic order on ascending vertex tuples."""
    return members(mask)


def minimalize(sets: Iterable[Face]) -> tuple[Face, ...]:
    """Inclusion-minimal members, deduplicated, in canonical order."""
    out: list[Face] = []
    for s in sorted(set(sets), key=lambda m: (m.bit_count(), face_key(m))):
        if not any(t & s == t for t in out):
            out.append(s)
    return tuple(sorted(out, key=face_key))


def contains_any(mask: Face, family: Iterable[Face]) -> bool:
    return any(b & mask == b for b in family)


class SimplicialComplex:
    """Immutable complex given by vertex count and minimal non-faces.

    Invariants: ``min_nonfaces`` is an antichain; the singletons in it are
    exactly the ghost vertices; ``void`` is set when the empty set itself is
    a non-face (the complex with no faces at all).
    """

    __slots__ = ("n", "min_nonfaces", "ghosts", "_by_vertex")

    def __init__(self, n: int, min_nonfaces: Iterable[Face] = ()) -> None:
        if not 0 <= n <= MAX_VERTICES:
            raise InvalidParameter(f"vertex count must lie in 0..{MAX_VERTICES}")
        full = (1 << n) - 1
        cands = list(min_nonfaces)
        for m in cands:
            if m & ~full:
                raise InvalidParameter(f"non-face {members(m)} uses a vertex outside 0..{n - 1}")
        self.n = n
        self.min_nonfaces = minimalize(cands)
        self.ghosts = face(v for m in self.min_nonfaces if m.bit_count() == 1 for v in members(m))
        by_vertex: list[list[Face]] = [[] for _ in range(n)]
        for m in self.min_nonfaces:
            for v in members(m):
                by_vertex[v].append(m)
        self._by_vertex = tuple(tuple(x) for x in by_vertex)

    # -- constructors --------------------------------------------------
    @classmethod
    def from_min_nonfaces(cls, n: int, candidates: Iterable[Iterable[int] | Face]) -> SimplicialComplex:
        return cls(n, (c if isinstance(c, int) else face(c) for c in candidates))

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int] | Face]) -> SimplicialComplex:
        """Complex generated by ``facets``; minimal non-faces found by a full subset scan."""
        if n > MAX_FACET_SCAN_VERTICES:
            raise TooLarge(f"facet scan capped at {MAX_FACET_SCAN_VERTICES} vertices")
        fs = minimal_superset_free([f if isinstance(f, int) else face(f) for f in facets])
        full = (1 << n) - 1
        for f in fs:
            if f & ~full:
                raise InvalidParameter("facet uses a vertex outside the vertex set")

        def in_complex(s: Face) -> bool:
            return any(s & f == s for f in fs)

        nonfaces = []
        for s in sorted(range(1 << n), key=int.bit_count):
            if in_complex(s):
                continue
            # minimal iff every maximal proper subset is a face
            if all(in_complex(s & ~(1 << v)) for v in members(s)):
                nonfaces.append(s)
        if not fs:
            nonfaces = [0]
        return cls(n, nonfaces)

    @classmethod
    def full_simplex(cls, n: int) -> SimplicialComplex:
        return cls(n, ())

    @classmethod
    def boundary_of_simplex(cls, n: int) -> SimplicialComplex:
        return cls(n, [(1 << n) - 1])

    # -- basic queries -------------------------------------------------
    @property
    def vertex_mask(self) -> Face:
        """Vertices that are faces (non-ghost)."""
        return ((1 << self.n) - 1) & ~self.ghosts

    @property
    def vertices(self) -> tuple[int, ...]:
        return members(self.vertex_mask)

    @property
    def is_void(self) -> bool:
        return bool(self.min_nonfaces) and self.min_nonfaces[0] == 0

    def is_face(self, sigma: Face | Iterable[int]) -> bool:
        s = sigma if isinstance(sigma, int) else face(sigma)
        if s >> self.n:
            return False
        return not any(m & s == m for m in self.min_nonfaces)

    def nonfaces_through(self, v: int) -> tuple[Face, ...]:
        return self._by_vertex[v]

    def enumerate_faces(self, max_card: int | None = None, limit: int = MAX_FACES) -> Iterator[Face]:
        """All faces, the empty face first, grouped by ascending cardinality."""
        if self.is_void:
            return
        top = self.n if max_card is None else max_card
        level = [0]
        count = 0
        size = 0
        while level:
            for s in level:
                count += 1
                if count > limit:
                    raise TooLarge(f"complex has more than {limit} faces")
                yield s
            if size >= top:
                return
            nxt = []
            for s in level:
                start = s.bit_length()
                for v in range(start, self.n):
                    if self.ghosts >> v & 1:
                        continue
                    t = s | (1 << v)
                    if not any(m & t == m for m in self._by_vertex[v]):
                        nxt.append(t)
            level = nxt
            size += 1

    def faces(self, limit: int = MAX_FACES) -> list[Face]:
        return list(self.enumerate_faces(limit=limit))

    def f_vector(self, limit: int = MAX_FACES) -> list[int]:
        """Face counts by cardinality, index 0 being the empty face."""
        counts: list[int] = []
        for s in self.enumerate_faces(limit=limit):
            c = s.bit_count()
            while len(counts) <= c:
                counts.append(0)
            counts[c] += 1
        return counts

    def euler_characteristic(self, reduced: bool = False) -> int:
        """Sum of (-1)^dim over faces; the reduced version counts the empty face as dimension -1."""
        fv = self.f_vector()
        chi = sum((-1) ** (c - 1) * f for c, f in enumerate(fv) if c >= 1)
        if reduced:
            chi -= fv[0] if fv else 0
        return chi

    def dimension(self) -> int:
        fv = self.f_vector()
        return len(fv) - 2

    def is_cone(self) -> int | None:
        """An apex vertex (lying in no minimal non-face), or None."""
        if self.is_void:
            return None
        for v in self.vertices:
            if not self._by_vertex[v]:
                return v
        return None

    # -- derived complexes ---------------------------------------------
    def link(self, sigma: Face | Iterable[int]) -> SimplicialComplex:
        s = sigma if isinstance(sigma, int) else face(sigma)
        if not self.is_face(s):
            raise InvalidFace(f"{members(s)} is not a face")
        return SimplicialComplex(self.n, [m & ~s for m in self.min_nonfaces] + _singletons(s))

    def deletion(self, sigma: Face | Iterable[int]) -> SimplicialComplex:
        s = sigma if isinstance(sigma, int) else face(sigma)
        return SimplicialComplex(self.n, [m for m in self.min_nonfaces if not m & s] + _singletons(s))

    def induced(self, keep: Face | Iterable[int]) -> SimplicialComplex:
        u = keep if isinstance(keep, int) else face(keep)
        outside = ((1 << self.n) - 1) & ~u
        return SimplicialComplex(self.n, [m for m in self.min_nonfaces if m & u == m] + _singletons(outside))

    def d_min(self, A: Face | Iterable[int]) -> tuple[Face, ...]:
        """Minimal faces H such that H together with A is not a face."""
        a = A if isinstance(A, int) else face(A)
        if self.is_void:
            return ()
        return minimalize(m & ~a for m in self.min_nonfaces if m & a)

    def d_subset(self, u: int, v: int) -> bool:
        """Whether every face blocked by ``u`` is also blocked by ``v``."""
        dv = self.d_min(1 << v)
        return all(contains_any(h, dv) for h in self.d_min(1 << u))

    def d_closed_subset(self, u: int, v: int) -> bool:
        """Whether D(u) together with {u} lies inside D(v) together with {v}."""
        if u == v:
            return True
        if self.is_face((1 << u) | (1 << v)) or not self.is_face(1 << u):
            return False
        dv = self.d_min(1 << v)
        vmask = 1 << v
        for h in self.d_min(1 << u):
            if contains_any(h, dv):
                continue
            # {v} itself may sit in D(u) only if no larger face contains v
            if h == vmask and not any(self.is_face(vmask | (1 << w)) for w in self.vertices if w != v):
                continue
            return False
        return True

    # -- comparison and serialisation ---------------------------------
    def same_faces(self, other: SimplicialComplex) -> bool:
        return self.min_nonfaces == other.min_nonfaces and self.n == other.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.same_faces(other)

    def __hash__(self) -> int:
        return hash((self.n, self.min_nonfaces))

    def __repr__(self) -> str:
        nf = [list(members(m)) for m in self.min_nonfaces]
        return f"SimplicialComplex(n={self.n}, min_nonfaces={nf})"

    def to_json(self) -> dict:
        return {"n": self.n, "min_nonfaces": [list(members(m)) for m in self.min_nonfaces]}


def _singletons(mask: Face) -> list[Face]:
    return [1 << v for v in members(mask)]


def minimal_superset_free(sets: Sequence[Face]) -> list[Face]:
    """Inclusion-maximal members (the facets of a generating list)."""
    out: list[Face] = []
    for s in sorted(set(sets), key=lambda m: -m.bit_count()):
        if not any(s & t == s for t in out):
            out.append(s)
    return out


def facets(C: SimplicialComplex) -> list[Face]:
    return sorted(minimal_superset_free(C.faces()), key=face_key)


def load_complex(source: str | Path | dict) -> tuple[SimplicialComplex, dict]:
    """Read the JSON complex format; returns the complex and the raw document.

    The document holds ``n`` and exactly one of ``min_nonfaces`` or ``facets``.
    An optional ``labels`` list names the vertices for display.
    """
    if isinstance(source, dict):
        doc = source
    else:
        doc = json.loads(Path(source).read_text())
    has_nf, has_f = "min_nonfaces" in doc, "facets" in doc
    if has_nf == has_f:
        raise InvalidParameter("complex file needs exactly one of 'min_nonfaces' or 'facets'")
    n = int(doc["n"])
    if has_nf:
        return SimplicialComplex.from_min_nonfaces(n, doc["min_nonfaces"]), doc
    return SimplicialComplex.from_facets(n, doc["facets"]), doc
