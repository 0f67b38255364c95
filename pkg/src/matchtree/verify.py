"""Closed-form homotopy predictions and the verification suites that check them.

Each suite instance builds a complex, runs the matching tree with the pivot
order the formula is stated for, compares the interpreted critical cells
with the formula, and cross-checks both against integral homology.
"""

from __future__ import annotations

import random
import time
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any

from .descriptor import HomotopyDescriptor
from .devoid import devoid_complex, dominance_complex
from .errors import BudgetExceeded, InvalidParameter, NotAForest, TooLarge
from .graph import (Multigraph, cycle, ind_k, is_chordal, is_forest, matching_number, path, random_chordal,
                    random_forest, saddle_vertices, vertex_cover_number)
from .homology import BettiProfile, betti, matches_descriptor
from .morse import DEFAULT_FACE_BUDGET, DEFAULT_NODE_BUDGET, run_tree
from .reductions import fold_reduce
from .simplicial import SimplicialComplex
from .strategies import CycleLabeling, LeafNeighbor, PathLabeling, SimplicialVertex, Strategy
from .worked import replay_all

SUITES = ("paths", "cycles", "dom-chordal", "dom-forest", "forest-p3", "figures")


def predict_path(n: int, k: int) -> HomotopyDescriptor:
    """Homotopy type of the complex of vertex sets of ``P_n`` spanning no ``P_k``."""
    if not 2 <= k <= n:
        raise InvalidParameter("need n >= k >= 2")
    t, d = divmod(n, k + 1)
    if d == 0:
        return HomotopyDescriptor.sphere(t * k - t - 1)
    if d == k:
        return HomotopyDescriptor.sphere(t * k - t + k - 2)
    return HomotopyDescriptor.contractible()


def predict_cycle(n: int, k: int) -> HomotopyDescriptor:
    """Homotopy type of the complex of vertex sets of ``C_n`` spanning no ``P_k``."""
    if n < 3 or n < k or k < 2:
        raise InvalidParameter("need n >= 3, n >= k and k >= 2")
    t, d = divmod(n, k + 1)
    base = t * (k - 1)
    if d == 0:
        return HomotopyDescriptor.wedge([base - 1] * k)
    if d == 1:
        return HomotopyDescriptor.sphere(base - 1)
    if d < k:
        return HomotopyDescriptor.sphere(base + d - 2)
    return HomotopyDescriptor.sphere(base + k - 2)


def predict_dom_chordal(G: Multigraph) -> HomotopyDescriptor:
    if not is_chordal(G):
        raise InvalidParameter("graph is not chordal")
    return HomotopyDescriptor.sphere(vertex_cover_number(G) - 1)


def predict_dom_forest(F: Multigraph) -> HomotopyDescriptor:
    if not is_forest(F):
        raise NotAForest("graph is not a forest")
    return HomotopyDescriptor.sphere(matching_number(F) - 1)


@dataclass
class VerificationRecord:
    suite: str
    instance: str
    status: str
    predicted: HomotopyDescriptor | None = None
    computed: HomotopyDescriptor | None = None
    homology: BettiProfile | None = None
    details: dict[str, Any] = field(default_factory=dict)
    seconds: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timings: bool = False) -> dict[str, Any]:
        doc: dict[str, Any] = {"suite": self.suite, "instance": self.instance, "status": self.status,
                               "pass": self.passed}
        if self.predicted is not None:
            doc["predicted"] = self.predicted.to_json()
        if self.computed is not None:
            doc["computed"] = self.computed.to_json()
        if self.homology is not None:
            doc["homology"] = self.homology.to_json()
        if self.details:
            doc["details"] = self.details
        if timings and self.seconds is not None:
            doc["seconds"] = round(self.seconds, 4)
        return doc

    def row(self) -> list[str]:
        return [self.suite, self.instance, self.status,
                "" if self.predicted is None else str(self.predicted),
                "" if self.computed is None else str(self.computed)]


@dataclass
class Budgets:
    nodes: int = DEFAULT_NODE_BUDGET
    faces: int = DEFAULT_FACE_BUDGET


def check_instance(suite: str, instance: str, C: SimplicialComplex, strategy: Strategy,
                   predicted: HomotopyDescriptor, budgets: Budgets,
                   details: dict[str, Any] | None = None) -> VerificationRecord:
    """Tree descriptor equals the prediction, and homology agrees with it."""
    start = time.perf_counter()
    try:
        _, report = run_tree(C, strategy, budgets.nodes, budgets.faces)
        h = betti(C, limit=budgets.faces)
    except (BudgetExceeded, TooLarge) as exc:
        return VerificationRecord(suite, instance, "skip", predicted, details={"reason": str(exc)})
    ok = report.descriptor == predicted and matches_descriptor(h, predicted)
    info = {"critical_cells": {str(d): c for d, c in report.counts.items()}, "strategy": strategy.name}
    info.update(details or {})
    return VerificationRecord(suite, instance, "pass" if ok else "fail", predicted, report.descriptor, h,
                              info, time.perf_counter() - start)


def _instance_rng(seed: int, i: int) -> random.Random:
    return random.Random(seed * 1_000_003 + i)


def suite_paths(ks: tuple[int, ...] = (3, 4, 5), n_max: int = 16, budgets: Budgets = Budgets()
                ) -> Iterator[VerificationRecord]:
    for k in ks:
        for n in range(k, n_max + 1):
            C = devoid_complex(path(n), [f"p{k}"])
            yield check_instance("paths", f"n={n},k={k}", C, PathLabeling(k), predict_path(n, k), budgets)


def suite_cycles(ks: tuple[int, ...] = (3, 4), n_max: int = 14, budgets: Budgets = Budgets()
                 ) -> Iterator[VerificationRecord]:
    for k in ks:
        for n in range(max(3, k), n_max + 1):
            C = devoid_complex(cycle(n), [f"p{k}"])
            yield check_instance("cycles", f"n={n},k={k}", C, CycleLabeling(k), predict_cycle(n, k), budgets)


def suite_dom_chordal(count: int = 200, n_max: int = 12, seed: int = 0, budgets: Budgets = Budgets()
                      ) -> Iterator[VerificationRecord]:
    for i in range(count):
        rng = _instance_rng(seed, i)
        n, density, s = rng.randint(1, n_max), rng.random(), rng.randrange(1 << 30)
        G = random_chordal(n, density, s)
        v = vertex_cover_number(G)
        yield check_instance("dom-chordal", f"#{i}:n={n},seed={s}", dominance_complex(G), SimplicialVertex(G),
                             HomotopyDescriptor.sphere(v - 1), budgets,
                             {"edges": [[a, b] for a, b, _ in G.edge_list()], "vertex_cover": v})


def suite_dom_forest(count: int = 200, n_max: int = 14, seed: int = 0, budgets: Budgets = Budgets()
                     ) -> Iterator[VerificationRecord]:
    for i in range(count):
        rng = _instance_rng(seed, i)
        n, s = rng.randint(1, n_max), rng.randrange(1 << 30)
        F = random_forest(n, s)
        m = matching_number(F)
        yield check_instance("dom-forest", f"#{i}:n={n},seed={s}", dominance_complex(F), LeafNeighbor(F),
                             HomotopyDescriptor.sphere(m - 1), budgets,
                             {"edges": [[a, b] for a, b, _ in F.edge_list()], "matching": m})


def saddle_deletion_certificate(F: Multigraph, C: SimplicialComplex) -> dict[str, Any] | None:
    """How the deletion of a saddle vertex was seen to be contractible: by folds, else by homology.

    Isolated vertices count as saddles but lie outside the claim, which concerns trees on three or more vertices.
    """
    saddles = [x for x in saddle_vertices(F) if F.degree(x) > 0]
    if not saddles:
        return None
    x = saddles[0]
    deleted = C.deletion(1 << x)
    folded, _ = fold_reduce(deleted)
    if len(folded.vertices) == 1:
        how = "fold"
    elif betti(deleted).is_trivial:
        how = "homology"
    else:
        how = "none"
    return {"saddle": x, "certificate": how}


def suite_forest_p3(count: int = 100, n_max: int = 12, seed: int = 0, budgets: Budgets = Budgets()
                    ) -> Iterator[VerificationRecord]:
    """Homology of the P_3-free complex of a forest is free and stops below ``2·ind_3``."""
    for i in range(count):
        rng = _instance_rng(seed, i)
        n, s = rng.randint(1, n_max), rng.randrange(1 << 30)
        F = random_forest(n, s)
        start = time.perf_counter()
        C = devoid_complex(F, ["p3"])
        try:
            h = betti(C, limit=budgets.faces)
        except TooLarge as exc:
            yield VerificationRecord("forest-p3", f"#{i}", "skip", details={"reason": str(exc)})
            continue
        bound = 2 * ind_k(F, 3) - 1
        top = h.top_dimension()
        ok = h.torsion_free and (top is None or top <= bound)
        details: dict[str, Any] = {"edges": [[a, b] for a, b, _ in F.edge_list()], "dimension_bound": bound,
                                   "top_dimension": top}
        cert = saddle_deletion_certificate(F, C)
        if cert is not None:
            details["saddle_deletion"] = cert
        yield VerificationRecord("forest-p3", f"#{i}:n={n},seed={s}", "pass" if ok else "fail",
                                 homology=h, details=details, seconds=time.perf_counter() - start)


def suite_figures(budgets: Budgets = Budgets()) -> Iterator[VerificationRecord]:
    for r in replay_all():
        yield VerificationRecord("figures", r.name, "pass" if r.passed else "fail", details=r.details)


def verify_suite(name: str, **params: Any) -> list[VerificationRecord]:
    """Run one suite; instances over budget come back as ``skip`` records."""
    runners = {
        "paths": suite_paths, "cycles": suite_cycles, "dom-chordal": suite_dom_chordal,
        "dom-forest": suite_dom_forest, "forest-p3": suite_forest_p3, "figures": suite_figures,
    }
    if name not in runners:
        raise InvalidParameter(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return list(runners[name](**params))
