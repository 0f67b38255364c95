"""Exact reduced integral homology of simplicial complexes.

The boundary matrices are reduced by integer Smith normal form; a second,
independent route computes their ranks over the rationals by fraction-free
elimination.  Both are exact (Python integers throughout).
"""

from __future__ import annotations

import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import gcd

from .descriptor import CONTRACTIBLE, UNKNOWN, HomotopyDescriptor
from .simplicial import Face, SimplicialComplex, face_key, members

HOMOLOGY_MAX_FACES = 1 << 20

SparseColumn = dict[int, int]


class HomologyWarning(UserWarning):
    """A descriptor comparison was vacuous (unknown CW structure)."""


@dataclass
class ChainComplexData:
    """Faces per dimension and boundary maps ``d_i : C_i -> C_{i-1}`` as sparse columns.

    Dimension -1 holds the empty face, so the resulting homology is reduced.
    """

    faces: dict[int, list[Face]]
    boundary: dict[int, list[SparseColumn]]

    @property
    def dims(self) -> range:
        top = max(self.faces) if self.faces else -2
        return range(-1, top + 1)

    def size(self, d: int) -> int:
        return len(self.faces.get(d, ()))


def chain_complex(C: SimplicialComplex, limit: int = HOMOLOGY_MAX_FACES) -> ChainComplexData:
    faces: dict[int, list[Face]] = {}
    for s in C.enumerate_faces(limit=limit):
        faces.setdefault(s.bit_count() - 1, []).append(s)
    for d in faces:
        faces[d].sort(key=face_key)
    index = {d: {s: i for i, s in enumerate(fs)} for d, fs in faces.items()}
    boundary: dict[int, list[SparseColumn]] = {}
    for d, fs in faces.items():
        if d < 0:
            continue
        lower = index[d - 1]
        cols = []
        for s in fs:
            col = {}
            for j, v in enumerate(members(s)):
                col[lower[s & ~(1 << v)]] = -1 if j % 2 else 1
            cols.append(col)
        boundary[d] = cols
    return ChainComplexData(faces, boundary)


def boundary_squares_vanish(data: ChainComplexData) -> bool:
    for d, cols in data.boundary.items():
        below = data.boundary.get(d - 1)
        if below is None:
            continue
        for col in cols:
            acc: dict[int, int] = {}
            for r, a in col.items():
                for rr, b in below[r].items():
                    acc[rr] = acc.get(rr, 0) + a * b
            if any(acc.values()):
                return False
    return True


# ---------------------------------------------------------------------------
# Smith normal form

def _to_rows(M: Sequence[SparseColumn] | Sequence[Sequence[int]], sparse: bool) -> dict[int, dict[int, int]]:
    rows: dict[int, dict[int, int]] = {}
    if sparse:
        for j, col in enumerate(M):
            for i, a in col.items():
                if a:
                    rows.setdefault(i, {})[j] = a
    else:
        for i, row in enumerate(M):
            entries = {j: a for j, a in enumerate(row) if a}
            if entries:
                rows[i] = entries
    return rows


def _dense_snf(rows: list[list[int]]) -> list[int]:
    """Invariant factors of a small dense integer matrix."""
    A = [r[:] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # divisibility: the pivot must divide every remaining entry
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero of row/column t into the pivot position
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        factors.append(abs(A[t][t]))
        t += 1
    return factors


def smith_normal_form(M: Sequence[SparseColumn] | Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    ``M`` is either a dense list of rows or a list of sparse columns
    (``{row: value}`` dicts).  Unit pivots are eliminated sparsely first; the
    leftover block goes through a dense reduction.
    """
    sparse = bool(M) and isinstance(M[0], dict)
    rows = _to_rows(M, sparse)
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda j: len(cols[j])):
            if c not in cols:
                continue
            best_r = None
            for r in cols[c]:
                if abs(rows[r][c]) == 1 and (best_r is None or len(rows[r]) < len(rows[best_r])):
                    best_r = r
            if best_r is None:
                continue
            prow = rows.pop(best_r)
            sign = prow[c]
            for j in prow:
                cols[j].discard(best_r)
            for r in list(cols[c]):
                row = rows[r]
                f = row[c] * sign
                for j, a in prow.items():
                    v = row.get(j, 0) - f * a
                    if v:
                        if j not in row:
                            cols[j].add(r)
                        row[j] = v
                    elif j in row:
                        del row[j]
                        cols[j].discard(r)
                if not row:
                    del rows[r]
            for j in prow:
                if not cols[j]:
                    del cols[j]
            cols.pop(c, None)
            units += 1
            progress = True
    if not rows:
        return [1] * units
    rest_rows = sorted(rows)
    rest_cols = sorted(cols)
    cindex = {j: k for k, j in enumerate(rest_cols)}
    dense = [[0] * len(rest_cols) for _ in rest_rows]
    for k, i in enumerate(rest_rows):
        for j, a in rows[i].items():
            dense[k][cindex[j]] = a
    rest = sorted(_dense_snf(dense))
    return [1] * units + _normalize_divisibility(rest)


def _normalize_divisibility(factors: list[int]) -> list[int]:
    """Turn any diagonal into the divisibility chain with the same cokernel."""
    out = sorted(f for f in factors if f)
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                a, b = out[i], out[j]
                if b % a:
                    g = gcd(a, b)
                    out[i], out[j] = g, a * b // g
                    changed = True
        out.sort()
    return out


# ---------------------------------------------------------------------------
# independent rank over Q

def rational_rank(M: Sequence[SparseColumn] | Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free elimination with content removal.

    Any nonzero entry may serve as pivot (the shortest row wins), so this
    shares neither the pivot rule nor the arithmetic of the Smith route.
    """
    sparse = bool(M) and isinstance(M[0], dict)
    rows = _to_rows(M, sparse)
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    rank = 0
    for c in sorted(cols, key=lambda j: len(cols[j])):
        live = cols.get(c)
        if not live:
            continue
        pr = min(live, key=lambda r: (len(rows[r]), r))
        prow = rows.pop(pr)
        for j in prow:
            cols[j].discard(pr)
        p = prow[c]
        for r in list(live):
            row = rows[r]
            a = row[c]
            new = {}
            for j in row.keys() | prow.keys():
                v = p * row.get(j, 0) - a * prow.get(j, 0)
                if v:
                    new[j] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            for j in row.keys() - new.keys():
                cols[j].discard(r)
            for j in new.keys() - row.keys():
                cols[j].add(r)
            if new:
                rows[r] = new
            else:
                del rows[r]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Betti numbers

@dataclass(frozen=True)
class BettiProfile:
    """Reduced Betti numbers and torsion coefficients, keyed by dimension (nonzero entries only)."""

    betti: dict[int, int] = field(default_factory=dict)
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def b(self, d: int) -> int:
        return self.betti.get(d, 0)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    @property
    def is_trivial(self) -> bool:
        return not self.betti and not self.torsion

    @property
    def reduced_euler(self) -> int:
        return sum((-1) ** d * b for d, b in self.betti.items())

    def top_dimension(self) -> int | None:
        dims = [d for d, b in self.betti.items() if b] + list(self.torsion)
        return max(dims) if dims else None

    def shifted(self, k: int) -> BettiProfile:
        return BettiProfile({d + k: b for d, b in self.betti.items()},
                            {d + k: t for d, t in self.torsion.items()})

    def __add__(self, other: BettiProfile) -> BettiProfile:
        betti = dict(self.betti)
        for d, b in other.betti.items():
            betti[d] = betti.get(d, 0) + b
        torsion = dict(self.torsion)
        for d, t in other.torsion.items():
            torsion[d] = tuple(sorted(torsion.get(d, ()) + t))
        return BettiProfile(betti, torsion)

    def to_json(self) -> dict:
        return {"betti": {str(d): b for d, b in sorted(self.betti.items())},
                "torsion": {str(d): list(t) for d, t in sorted(self.torsion.items())}}


def _profile_from_ranks(data: ChainComplexData, ranks: dict[int, int],
                        torsion: dict[int, tuple[int, ...]]) -> BettiProfile:
    betti = {}
    for d in data.dims:
        b = data.size(d) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if b:
            betti[d] = b
    return BettiProfile(betti, {d: t for d, t in torsion.items() if t})


def betti(C: SimplicialComplex, limit: int = HOMOLOGY_MAX_FACES) -> BettiProfile:
    """Reduced integral homology via Smith normal form of every boundary map."""
    if C.is_void:
        return BettiProfile()
    data = chain_complex(C, limit)
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for d, cols in data.boundary.items():
        factors = smith_normal_form(cols)
        ranks[d] = len(factors)
        tors = tuple(f for f in factors if f > 1)
        if tors:
            torsion[d - 1] = tors
    return _profile_from_ranks(data, ranks, torsion)


def betti_rational(C: SimplicialComplex, limit: int = HOMOLOGY_MAX_FACES) -> BettiProfile:
    """Reduced Betti numbers over Q by the fraction-free route (no torsion information)."""
    if C.is_void:
        return BettiProfile()
    data = chain_complex(C, limit)
    ranks = {d: rational_rank(cols) for d, cols in data.boundary.items()}
    return _profile_from_ranks(data, ranks, {})


def descriptor_profile(d: HomotopyDescriptor) -> BettiProfile | None:
    """The homology a descriptor forces, or None for unknown descriptors."""
    if d.kind == UNKNOWN:
        return None
    if d.kind == CONTRACTIBLE:
        return BettiProfile()
    return BettiProfile(d.multiplicities(), {})


def matches_descriptor(profile: BettiProfile, d: HomotopyDescriptor) -> bool:
    """Whether ``profile`` is the homology of the described space.

    A necessary condition for the homotopy type, not a sufficient one.  For an
    unknown descriptor the check is vacuous: returns True and emits a
    :class:`HomologyWarning`.
    """
    expected = descriptor_profile(d)
    if expected is None:
        warnings.warn("descriptor is an unknown CW structure; homology check is vacuous",
                      HomologyWarning, stacklevel=2)
        return True
    return profile.torsion_free and profile.betti == expected.betti


def descriptor_from_profile(profile: BettiProfile) -> HomotopyDescriptor | None:
    """The wedge of spheres with this homology, or None when torsion is present."""
    if not profile.torsion_free:
        return None
    return HomotopyDescriptor.wedge(d for d, b in profile.betti.items() for _ in range(b))
