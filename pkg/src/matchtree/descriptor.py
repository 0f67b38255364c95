"""Homotopy descriptors: contractible, wedge of spheres, or an uninterpreted cell vector."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

CONTRACTIBLE = "contractible"
WEDGE = "wedge"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class HomotopyDescriptor:
    """``kind`` is one of contractible / wedge / unknown.

    A wedge carries the sorted sphere dimensions (a single sphere is a wedge
    of one); dimension -1 stands for the empty complex {∅}.  ``cells`` holds
    the critical-cell vector for unknown descriptors.
    """

    kind: str
    spheres: tuple[int, ...] = ()
    cells: tuple[tuple[int, int], ...] = field(default=(), compare=True)

    def __post_init__(self) -> None:
        if self.kind == WEDGE and not self.spheres:
            object.__setattr__(self, "kind", CONTRACTIBLE)
        object.__setattr__(self, "spheres", tuple(sorted(self.spheres)))

    @classmethod
    def contractible(cls) -> HomotopyDescriptor:
        return cls(CONTRACTIBLE)

    @classmethod
    def sphere(cls, d: int) -> HomotopyDescriptor:
        return cls(WEDGE, (d,))

    @classmethod
    def wedge(cls, dims: Iterable[int]) -> HomotopyDescriptor:
        return cls(WEDGE, tuple(dims))

    @classmethod
    def unknown(cls, cells: Mapping[int, int]) -> HomotopyDescriptor:
        return cls(UNKNOWN, (), tuple(sorted((d, c) for d, c in cells.items() if c)))

    @property
    def is_sphere(self) -> bool:
        return self.kind == WEDGE and len(self.spheres) == 1

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.spheres))

    def suspend(self, times: int = 1) -> HomotopyDescriptor:
        if self.kind == WEDGE:
            return HomotopyDescriptor.wedge(d + times for d in self.spheres)
        if self.kind == UNKNOWN:
            return HomotopyDescriptor.unknown({d + times: c for d, c in self.cells})
        return self

    def __or__(self, other: HomotopyDescriptor) -> HomotopyDescriptor:
        """Wedge sum."""
        if self.kind == CONTRACTIBLE:
            return other
        if other.kind == CONTRACTIBLE:
            return self
        if self.kind == WEDGE and other.kind == WEDGE and -1 not in self.spheres + other.spheres:
            return HomotopyDescriptor.wedge(self.spheres + other.spheres)
        cells = Counter(dict(self.cells)) + Counter(dict(other.cells))
        for d in self.spheres + other.spheres:
            cells[d] += 1
        return HomotopyDescriptor.unknown(cells)

    def __str__(self) -> str:
        if self.kind == CONTRACTIBLE:
            return "pt"
        if self.kind == UNKNOWN:
            return "CW(" + ", ".join(f"{c}x{d}" for d, c in self.cells) + ")"
        parts = [f"{c}S^{d}" if c > 1 else f"S^{d}" for d, c in sorted(self.multiplicities().items())]
        return " v ".join(parts)

    def to_json(self) -> dict:
        if self.kind == CONTRACTIBLE:
            return {"type": CONTRACTIBLE}
        if self.kind == WEDGE:
            return {"type": WEDGE, "spheres": list(self.spheres), "text": str(self)}
        return {"type": UNKNOWN, "cells": {str(d): c for d, c in self.cells}}

    @classmethod
    def from_json(cls, doc: Mapping) -> HomotopyDescriptor:
        kind = doc["type"]
        if kind == CONTRACTIBLE:
            return cls.contractible()
        if kind == WEDGE:
            return cls.wedge(doc["spheres"])
        return cls.unknown({int(d): c for d, c in doc["cells"].items()})
