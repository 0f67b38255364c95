"""The shipped worked examples and their replays."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .homology import BettiProfile, betti
from .morse import assemble_matching, run_tree, verify_acyclic, verify_matching
from .reductions import fold_reduce, nonface_split
from .simplicial import Face, SimplicialComplex, face, load_complex, members
from .strategies import Scripted

FIXTURES = ("fig1_delta", "fig1_folded", "fig2_delta1", "fig2_delta2", "fig2_delta3", "fig3")


def fixture_doc(name: str) -> dict[str, Any]:
    text = resources.files("matchtree").joinpath("fixtures", f"{name}.json").read_text()
    return json.loads(text)


def load_fixture(name: str) -> SimplicialComplex:
    return load_complex(fixture_doc(name))[0]


def labelled(doc: dict[str, Any], s: Face) -> str:
    labels = doc.get("labels")
    vs = members(s)
    if labels is None:
        return "{" + ",".join(map(str, vs)) + "}"
    return "".join(labels[v] for v in vs) or "∅"


def fig3_script() -> Scripted:
    s = Scripted.from_json(fixture_doc("fig3_script"))
    s.name = "scripted:fig3"
    return s


@dataclass
class Replay:
    name: str
    passed: bool
    details: dict[str, Any]


def replay_fig1() -> Replay:
    C = load_fixture("fig1_delta")
    folded, trace = fold_reduce(C)
    first = trace.steps[0] if trace.steps else None
    once = C.deletion(1 << first[1]) if first else C
    ok = first == (0, 1) and once == load_fixture("fig1_folded")
    return Replay("fig1-fold", ok, {"first_fold": {"witness": first[0], "deleted": first[1]} if first else None,
                                    "all_folds": trace.steps, "folded_to": folded.to_json()})


def replay_fig2() -> Replay:
    d1, d2, d3 = (load_fixture(f"fig2_delta{i}") for i in (1, 2, 3))
    be, bce, de = face([1, 4]), face([1, 2, 4]), face([3, 4])
    big1, dec1 = nonface_split(d2, be, [bce])
    big2, dec2 = nonface_split(d3, de)
    # d1 ≃ d2 ∨ (contractible part), d2 ≃ d3 ∨ S^1
    p1, p2 = dec1.profile(), dec2.profile()
    ok = (big1 == d1 and big2 == d2 and p2 == BettiProfile({1: 2}) and p1 == betti(d1)
          and betti(d1) == BettiProfile({1: 2}))
    return Replay("fig2-nonface", ok, {"delta1_betti": betti(d1).to_json(), "delta2_parts": p2.to_json()})


def replay_fig3() -> Replay:
    C = load_fixture("fig3")
    doc = fixture_doc("fig3")
    tree, report = run_tree(C, fig3_script())
    M = assemble_matching(tree)
    crit = sorted(labelled(doc, s) for s in report.critical)
    pairs = sorted((labelled(doc, a), labelled(doc, b)) for a, b in M)
    expected_pairs = sorted([("∅", "2"), ("1", "12"), ("4", "24"), ("5", "25"), ("3", "13")])
    ok = (crit == ["23", "45"] and pairs == expected_pairs and verify_matching(C, M) and verify_acyclic(C, M)
          and str(report.descriptor) == "2S^1")
    return Replay("fig3-tree", ok, {"critical": crit, "matching": pairs, "descriptor": str(report.descriptor)})


def replay_all() -> list[Replay]:
    return [replay_fig1(), replay_fig2(), replay_fig3()]
