"""Matching trees: Morse matchings on arbitrary simplicial complexes.

A node ``Σ(A, B)`` stands for the faces ``I`` with ``A ⊆ I`` that contain no
member of ``B``.  Expanding a node at a pivot ``p`` either matches a whole
slice of it by adding/removing ``p`` (a matching site) or splits it in two
along an obstruction ``γ`` (a splitting site).  Leaves are empty nodes or
single unmatched faces; the unmatched faces are the critical cells of the
assembled acyclic matching.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from .descriptor import HomotopyDescriptor
from .errors import BudgetExceeded, InternalInvariantViolation, InvalidPivot, StrategyIncomplete, TooLarge
from .simplicial import Face, SimplicialComplex, contains_any, face_key, members, minimalize

DEFAULT_NODE_BUDGET = 10**6
DEFAULT_FACE_BUDGET = 1 << 20

MATCHING = "matching"
SPLITTING = "splitting"
UNMATCHED = "unmatched"
EMPTY = "empty"


@dataclass(frozen=True)
class NodeState:
    """Required face ``A`` and excluded family ``B`` (an antichain of nonempty sets disjoint from ``A``)."""

    A: Face
    B: tuple[Face, ...]

    @property
    def singles(self) -> Face:
        """``V(B*)``: vertices that appear as singleton members of ``B``."""
        mask = 0
        for b in self.B:
            if b & (b - 1) == 0:
                mask |= b
        return mask

    def available(self, n: int) -> Face:
        return ((1 << n) - 1) & ~(self.A | self.singles)

    def contains(self, C: SimplicialComplex, I: Face) -> bool:
        return I & self.A == self.A and not contains_any(I, self.B) and C.is_face(I)

    def describe(self) -> str:
        fam = ",".join("{" + ",".join(map(str, members(b))) + "}" for b in self.B)
        return "Σ({" + ",".join(map(str, members(self.A))) + "},{" + fam + "})"


def root_state(C: SimplicialComplex) -> NodeState:
    """The whole complex; ghost vertices enter ``B`` as singletons so no face can use them."""
    return NodeState(0, minimalize(1 << v for v in members(C.ghosts)))


def make_state(C: SimplicialComplex, A: Face, B: Iterable[Face]) -> NodeState | None:
    """Normalise ``(A, B)``; None when the node is empty (``A`` not a face, or some member of B inside A)."""
    if not C.is_face(A):
        return None
    reduced = []
    for b in B:
        r = b & ~A
        if not r:
            return None
        reduced.append(r)
    return NodeState(A, minimalize(reduced))


def well_formed(C: SimplicialComplex, node: NodeState) -> bool:
    """Every minimal obstruction of ``A`` contains a member of ``B`` and ``A`` avoids ``V(B*)``."""
    if node.A & node.singles:
        return False
    return all(contains_any(h, node.B) for h in C.d_min(node.A))


def d_up(C: SimplicialComplex, node: NodeState, X: Face) -> tuple[Face, ...]:
    """Minimal sets whose presence (next to ``A ∪ X``) forbids ``X`` inside the node.

    Obstructions of ``X`` are taken relative to the node: the part already
    forced by ``A`` is dropped, since every face of the node contains ``A``.
    """
    return minimalize([h & ~node.A for h in C.d_min(X)] + [b & ~X for b in node.B])


@dataclass(frozen=True)
class MatchingSite:
    pivot: int
    obstructions: tuple[Face, ...]
    gamma: Face | None
    child: NodeState | None


@dataclass(frozen=True)
class SplittingSite:
    pivot: int
    gamma: Face
    left: NodeState
    right: NodeState | None


SiteResult = MatchingSite | SplittingSite


def open_obstructions(C: SimplicialComplex, node: NodeState, p: int) -> tuple[tuple[Face, ...], list[Face]]:
    """``d_up(p)`` and its members that contain no member of ``B`` (the Γ of the expansion rule)."""
    up = d_up(C, node, 1 << p)
    return up, [g for g in up if not contains_any(g, node.B)]


def _check_pivot(C: SimplicialComplex, node: NodeState, p: int) -> None:
    if not 0 <= p < C.n or not node.available(C.n) >> p & 1:
        raise InvalidPivot(f"pivot {p} is not available at {node.describe()}")


def _child(C: SimplicialComplex, node: NodeState, gamma: Face) -> NodeState | None:
    state = make_state(C, node.A | gamma, node.B + d_up(C, node, gamma))
    if state is not None and not well_formed(C, state):
        raise InternalInvariantViolation(f"child {state.describe()} of {node.describe()} is not well formed")
    return state


def expand(C: SimplicialComplex, node: NodeState, p: int, gamma: Face | None = None) -> SiteResult:
    """Expand ``node`` at pivot ``p``; ``gamma`` picks the splitting set (default: lexicographically least)."""
    _check_pivot(C, node, p)
    up, open_ = open_obstructions(C, node, p)
    if len(open_) <= 1:
        g = open_[0] if open_ else None
        return MatchingSite(p, up, g, None if g is None else _child(C, node, g))
    if gamma is None:
        gamma = min(open_, key=face_key)
    elif gamma not in open_:
        raise InvalidPivot(f"{members(gamma)} is not an open obstruction of pivot {p}")
    left = NodeState(node.A, minimalize(node.B + (gamma,)))
    return SplittingSite(p, gamma, left, _child(C, node, gamma))


# ---------------------------------------------------------------------------
# tree construction

@dataclass
class TreeNode:
    state: NodeState | None
    parent: int | None
    kind: str = EMPTY
    pivot: int | None = None
    gamma: Face | None = None
    obstructions: tuple[Face, ...] = ()
    children: list[int] = field(default_factory=list)
    depth: int = 0


@dataclass
class MatchingTree:
    complex: SimplicialComplex
    nodes: list[TreeNode]

    def critical(self) -> list[Face]:
        return [nd.state.A for nd in self.nodes if nd.kind == UNMATCHED]

    def edges(self) -> list[tuple[int, int, str]]:
        """(parent, child, label): the pivot at matching sites, the split set at splitting sites."""
        out = []
        for i, nd in enumerate(self.nodes):
            for c in nd.children:
                if nd.kind == MATCHING:
                    out.append((i, c, str(nd.pivot)))
                else:
                    out.append((i, c, "{" + ",".join(map(str, members(nd.gamma))) + "}"))
        return out

    def render(self) -> str:
        lines = []

        def walk(i: int, indent: int) -> None:
            nd = self.nodes[i]
            label = nd.state.describe() if nd.state else "∅"
            if nd.kind == MATCHING:
                label += f"  match p={nd.pivot}"
            elif nd.kind == SPLITTING:
                label += f"  split p={nd.pivot} γ={set(members(nd.gamma))}"
            elif nd.kind == UNMATCHED:
                label += "  unmatched"
            lines.append("  " * indent + label)
            for c in nd.children:
                walk(c, indent + 1)

        walk(0, 0)
        return "\n".join(lines)


@dataclass
class MorseReport:
    critical: list[Face]
    counts: dict[int, int]
    matched_pairs: int | None
    tree_nodes: int
    strategy: str
    descriptor: HomotopyDescriptor

    def euler(self) -> int:
        """Alternating count of critical cells; equals the reduced Euler characteristic."""
        return sum((-1) ** d * c for d, c in self.counts.items())

    def to_json(self) -> dict[str, Any]:
        return {
            "critical": [list(members(s)) for s in self.critical],
            "c": {str(d): c for d, c in sorted(self.counts.items())},
            "descriptor": self.descriptor.to_json(),
            "matched_pairs": self.matched_pairs,
            "tree_nodes": self.tree_nodes,
            "strategy": self.strategy,
        }


def cell_counts(critical: Iterable[Face]) -> dict[int, int]:
    return dict(sorted(Counter(s.bit_count() - 1 for s in critical).items()))


def interpret(report: MorseReport | Iterable[Face]) -> HomotopyDescriptor:
    """Read a homotopy type off the critical cells.

    No critical cells: contractible.  Only the empty face: the empty complex
    (``S^-1``).  All cells in a single dimension ``d >= 0``: a wedge of that
    many ``d``-spheres.  Anything else stays an uninterpreted cell vector.
    """
    crit = report.critical if isinstance(report, MorseReport) else list(report)
    counts = cell_counts(crit)
    if not counts:
        return HomotopyDescriptor.contractible()
    if counts == {-1: 1}:
        return HomotopyDescriptor.sphere(-1)
    if len(counts) == 1 and -1 not in counts:
        (d, c), = counts.items()
        return HomotopyDescriptor.wedge([d] * c)
    return HomotopyDescriptor.unknown(counts)


def run_tree(C: SimplicialComplex, strategy: Any, budget_nodes: int = DEFAULT_NODE_BUDGET,
             budget_faces: int = DEFAULT_FACE_BUDGET) -> tuple[MatchingTree, MorseReport]:
    """Expand the full matching tree depth first, left child before right child."""
    from .strategies import Context

    root = root_state(C) if not C.is_void else None
    nodes = [TreeNode(root, None)]
    tags: list[Any] = [strategy.root_tag(C)]
    stack = [0]
    while stack:
        i = stack.pop()
        nd = nodes[i]
        st = nd.state
        if st is None:
            nd.kind = EMPTY
            continue
        avail = st.available(C.n)
        if not avail:
            nd.kind = UNMATCHED
            continue
        ctx = Context(C, st, tags[i], avail)
        choice = strategy.choose(ctx)
        if choice is None:
            raise StrategyIncomplete(f"strategy {strategy.name} abstained at {st.describe()}")
        p, gamma = choice
        site = expand(C, st, p, gamma)
        nd.pivot = p
        if isinstance(site, MatchingSite):
            nd.kind = MATCHING
            nd.obstructions = site.obstructions
            nd.gamma = site.gamma
            kids = [(site.child, strategy.child_tag(tags[i], MATCHING, 0, ctx))] if site.gamma is not None else []
        else:
            nd.kind = SPLITTING
            nd.gamma = site.gamma
            kids = [(site.left, strategy.child_tag(tags[i], SPLITTING, 0, ctx)),
                    (site.right, strategy.child_tag(tags[i], SPLITTING, 1, ctx))]
        for state, tag in kids:
            nodes.append(TreeNode(state, i, depth=nd.depth + 1))
            tags.append(tag)
            nd.children.append(len(nodes) - 1)
            if len(nodes) > budget_nodes:
                raise BudgetExceeded(f"matching tree exceeded {budget_nodes} nodes")
        stack.extend(reversed(nd.children))
    tree = MatchingTree(C, nodes)
    crit = tree.critical()
    try:
        total = sum(1 for _ in C.enumerate_faces(limit=budget_faces))
        matched = (total - len(crit)) // 2
    except TooLarge:
        matched = None
    report = MorseReport(crit, cell_counts(crit), matched, len(nodes), strategy.name, HomotopyDescriptor.contractible())
    report.descriptor = interpret(report)
    return tree, report


# ---------------------------------------------------------------------------
# the matching itself

Pair = tuple[Face, Face]


def locate(tree: MatchingTree, I: Face) -> tuple[int, Pair | None]:
    """Walk face ``I`` down the tree: the node that handles it and its matched pair (None if critical)."""
    i = 0
    while True:
        nd = tree.nodes[i]
        if nd.kind == MATCHING:
            if not contains_any(I, nd.obstructions):
                p = 1 << nd.pivot
                return i, (I & ~p, I | p)
            if not nd.children:
                raise InternalInvariantViolation(f"face {members(I)} fell out of a childless matching site")
            i = nd.children[0]
        elif nd.kind == SPLITTING:
            i = nd.children[1] if nd.gamma & I == nd.gamma else nd.children[0]
        elif nd.kind == UNMATCHED:
            if I != nd.state.A:
                raise InternalInvariantViolation(f"face {members(I)} reached leaf {nd.state.describe()}")
            return i, None
        else:
            raise InternalInvariantViolation(f"face {members(I)} reached an empty node")


def assemble_matching(tree: MatchingTree, budget_faces: int = DEFAULT_FACE_BUDGET) -> list[Pair]:
    """Union of the partial matchings of all matching sites, as ``(σ, σ ∪ {p})`` pairs."""
    pairs = []
    try:
        faces = tree.complex.faces(limit=budget_faces)
    except TooLarge as exc:
        raise BudgetExceeded(str(exc)) from exc
    for I in faces:
        _, pair = locate(tree, I)
        if pair is not None and pair[0] == I:
            pairs.append(pair)
    return pairs


def verify_matching(C: SimplicialComplex, M: Iterable[Pair]) -> bool:
    """Pairs are faces differing by exactly one vertex, and no face is used twice."""
    used: set[Face] = set()
    for low, high in M:
        diff = high & ~low
        if low & ~high or diff.bit_count() != 1:
            return False
        if not (C.is_face(low) and C.is_face(high)):
            return False
        if low in used or high in used:
            return False
        used.add(low)
        used.add(high)
    return True


def verify_acyclic(C: SimplicialComplex, M: Iterable[Pair], budget_faces: int = DEFAULT_FACE_BUDGET) -> bool:
    """Cycle check on the modified Hasse diagram (matched edges point up, the rest down)."""
    try:
        faces = C.faces(limit=budget_faces)
    except TooLarge as exc:
        raise BudgetExceeded(str(exc)) from exc
    up = {low: high for low, high in M}
    index = {s: k for k, s in enumerate(faces)}
    succ: list[list[int]] = [[] for _ in faces]
    indeg = [0] * len(faces)
    for k, s in enumerate(faces):
        for v in members(s):
            t = s & ~(1 << v)
            j = index[t]
            if up.get(t) == s:
                succ[j].append(k)
                indeg[k] += 1
            else:
                succ[k].append(j)
                indeg[j] += 1
    queue = deque(k for k in range(len(faces)) if indeg[k] == 0)
    seen = 0
    while queue:
        k = queue.popleft()
        seen += 1
        for j in succ[k]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    return seen == len(faces)


def critical_from_matching(C: SimplicialComplex, M: Iterable[Pair]) -> list[Face]:
    used = set()
    for low, high in M:
        used.add(low)
        used.add(high)
    return [s for s in C.enumerate_faces() if s not in used]
