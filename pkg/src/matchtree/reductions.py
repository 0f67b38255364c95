"""Homotopy-preserving reductions: folds, vertex splits, complementation, non-face removal.

Each decomposing reduction returns a :class:`Decomposition`: a wedge of
parts, each part a complex suspended some number of times.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .descriptor import HomotopyDescriptor
from .errors import CertificateUnavailable, HypothesisNotMet, InvalidParameter
from .homology import BettiProfile, betti
from .simplicial import Face, SimplicialComplex, face, members


@dataclass
class Decomposition:
    """``C ≃ ∨ Σ^s(part)`` over ``parts = [(part, s), ...]``."""

    parts: list[tuple[SimplicialComplex, int]]
    note: str = ""

    def profile(self) -> BettiProfile:
        total = BettiProfile()
        for part, s in self.parts:
            total = total + betti(part).shifted(s)
        return total

    def descriptor(self, describe: Callable[[SimplicialComplex], HomotopyDescriptor]) -> HomotopyDescriptor:
        out = HomotopyDescriptor.contractible()
        for part, s in self.parts:
            out = out | describe(part).suspend(s)
        return out


@dataclass
class FoldTrace:
    steps: list[tuple[int, int]] = field(default_factory=list)

    @property
    def deleted(self) -> list[int]:
        return [v for _, v in self.steps]


def find_fold(C: SimplicialComplex) -> tuple[int, int] | None:
    """First ``(u, v)`` with ``u != v`` and ``D(u) ⊆ D(v)``: smallest ``v``, then smallest ``u``."""
    vs = C.vertices
    for v in vs:
        for u in vs:
            if u != v and C.d_subset(u, v):
                return u, v
    return None


def fold_reduce(C: SimplicialComplex) -> tuple[SimplicialComplex, FoldTrace]:
    """Delete folded vertices until no fold applies; the result is homotopy equivalent to ``C``."""
    trace = FoldTrace()
    while True:
        step = find_fold(C)
        if step is None:
            return C, trace
        trace.steps.append(step)
        C = C.deletion(1 << step[1])


def split_reduce(C: SimplicialComplex, u: int, v: int) -> Decomposition:
    """``C ≃ del(v) ∨ Σ link(v)`` when ``D[u] ⊆ D[v]``."""
    if u == v:
        raise HypothesisNotMet("split needs two distinct vertices")
    if not (C.is_face(1 << u) and C.is_face(1 << v)):
        raise HypothesisNotMet("split vertices must be vertices of the complex")
    if not C.d_closed_subset(u, v):
        raise HypothesisNotMet(f"D[{u}] is not contained in D[{v}]")
    return Decomposition([(C.deletion(1 << v), 0), (C.link(1 << v), 1)], f"split at {v} (witness {u})")


def find_split(C: SimplicialComplex) -> tuple[int, int] | None:
    vs = C.vertices
    for v in vs:
        for u in vs:
            if u != v and C.d_closed_subset(u, v):
                return u, v
    return None


def complementation(C: SimplicialComplex, A: Face | Iterable[int]) -> Decomposition:
    """``C ≃ ∨_{x ∈ A} Σ link(x)`` when ``C[A]`` is discrete and ``C[V∖A]`` is a cone."""
    a = A if isinstance(A, int) else face(A)
    xs = members(a)
    if not xs:
        raise HypothesisNotMet("complementation needs a nonempty vertex set")
    for x in xs:
        if not C.is_face(1 << x):
            raise HypothesisNotMet(f"{x} is not a vertex of the complex")
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            if C.is_face((1 << x) | (1 << y)):
                raise HypothesisNotMet(f"{{{x},{y}}} is a face, so the induced complex on A is not discrete")
    rest = C.induced(((1 << C.n) - 1) & ~a)
    if rest.is_cone() is None:
        raise CertificateUnavailable("complement of A is not certified contractible (no cone apex)")
    return Decomposition([(C.link(1 << x), 1) for x in xs], "complementation")


# ---------------------------------------------------------------------------
# removing a non-face

Collapse = tuple[Face, Face]


def _join_faces(C: SimplicialComplex, K: Face, link: SimplicialComplex) -> list[Face]:
    """Faces of ``C[K] * link``; the proper subsets of ``K`` times the link faces."""
    ks = members(K)
    subs = [0]
    for v in ks:
        subs += [s | (1 << v) for s in subs]
    subs = [s for s in subs if s != K]
    return [s | t for s in subs for t in link.enumerate_faces()]


def apex_certificate(C: SimplicialComplex, faces: Sequence[Face]) -> int | None:
    """A vertex ``w`` of ``C`` with ``σ ∪ {w}`` a face of ``C`` for every listed ``σ``."""
    for w in C.vertices:
        if all(C.is_face(s | (1 << w)) for s in faces):
            return w
    return None


def check_collapse(faces: Iterable[Face], steps: Sequence[Collapse]) -> bool:
    """Whether ``steps`` are elementary collapses taking the complex down to one vertex."""
    current = set(faces)
    for gamma, tau in steps:
        if gamma not in current or tau not in current:
            return False
        if gamma & ~tau or (tau & ~gamma).bit_count() != 1:
            return False
        # tau must be the unique maximal face above gamma
        if any(s != gamma and s & gamma == gamma and s != tau for s in current):
            return False
        current.discard(gamma)
        current.discard(tau)
    return len(current) == 2 and 0 in current


def complex_from_faces(n: int, faces: Iterable[Face]) -> SimplicialComplex:
    """The complex whose faces are exactly ``faces`` (checked to be downward closed)."""
    fs = set(faces)
    for s in fs:
        for v in members(s):
            if s & ~(1 << v) not in fs:
                raise InvalidParameter(f"face list is not closed under subsets: {members(s)}")
    nonfaces = []
    for s in fs:
        for v in range(n):
            t = s | (1 << v)
            if t not in fs and all(t & ~(1 << w) in fs for w in members(t)):
                nonfaces.append(t)
    if not fs:
        nonfaces = [0]
    return SimplicialComplex(n, nonfaces)


def nonface_split(C: SimplicialComplex, K: Face | Iterable[int], extra: Iterable[Face | Iterable[int]] = (),
                  apex: int | None = None, collapse: Sequence[Collapse] | None = None
                  ) -> tuple[SimplicialComplex, Decomposition]:
    """Add the minimal non-face ``K`` (and ``extra`` faces above it) to ``C``.

    Returns the enlarged complex ``C'`` with ``C' ≃ C ∨ Σ^{|K|} link_{C'}(K)``.
    The step needs ``C[K] * link_{C'}(K)`` to be contractible inside ``C``: a
    cone apex (given, or found by search) or an explicit collapse sequence of
    that join certifies it.  Without a certificate the split is refused.
    """
    k = K if isinstance(K, int) else face(K)
    if k not in C.min_nonfaces or not k:
        raise HypothesisNotMet(f"{members(k)} is not a minimal non-face")
    ext = [e if isinstance(e, int) else face(e) for e in extra]
    for e in ext:
        if e & k != k or e == k:
            raise HypothesisNotMet(f"extra face {members(e)} does not strictly contain K")
    faces = set(C.enumerate_faces()) | {k} | set(ext)
    bigger = complex_from_faces(C.n, faces)
    link = bigger.link(k)
    joined = _join_faces(C, k, link)
    if collapse is not None:
        if not check_collapse(joined, collapse):
            raise CertificateUnavailable("collapse sequence does not collapse the join to a point")
    else:
        if apex is None:
            apex = apex_certificate(C, joined)
        elif not all(C.is_face(s | (1 << apex)) for s in joined):
            raise CertificateUnavailable(f"vertex {apex} is not a cone apex for the join")
        if apex is None:
            raise CertificateUnavailable("no cone apex certifies that the join is contractible in the complex")
    return bigger, Decomposition([(C, 0), (link, k.bit_count())], f"non-face {list(members(k))} added")
