"""The Sombor index family ``SO_a``.

``SO_a(G) = sum over edges uv of sqrt((d(u) - a)^2 + (d(v) - a)^2)``. Plain is
``a = 0``, reduced is ``a = 1``, average takes ``a`` as the average degree of
the graph being evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .chain import ChainGraph, EdgeTypeCensus

_KINDS = ("plain", "reduced", "average", "general")


@dataclass(frozen=True)
class SomborVariant:
    kind: str
    a: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown Sombor variant {self.kind!r}")
        if self.kind == "general":
            if self.a is None or not math.isfinite(self.a):
                raise ValueError("general variant needs a finite shift a")
        elif self.a is not None:
            raise ValueError(f"{self.kind} variant takes no explicit a")

    @classmethod
    def general(cls, a: float) -> SomborVariant:
        return cls("general", float(a))

    @classmethod
    def parse(cls, text: str) -> SomborVariant:
        """Parse ``plain``, ``reduced``, ``average`` or ``general:<a>``."""
        name, _, arg = text.strip().lower().partition(":")
        if name == "general":
            try:
                return cls.general(float(arg))
            except ValueError:
                raise ValueError(f"general variant needs a numeric shift, e.g. general:0.5 (got {text!r})") from None
        if arg:
            raise ValueError(f"variant {name!r} takes no argument")
        return cls(name)

    @property
    def depends_on_graph(self) -> bool:
        return self.kind == "average"

    def resolve(self, avg_degree: float | None = None) -> float:
        """The shift ``a`` used for evaluation."""
        if self.kind == "plain":
            return 0.0
        if self.kind == "reduced":
            return 1.0
        if self.kind == "general":
            return self.a
        if avg_degree is None:
            raise ValueError("average variant needs the graph's average degree")
        return float(avg_degree)

    def label(self) -> str:
        return f"general:{self.a!r}" if self.kind == "general" else self.kind


PLAIN = SomborVariant("plain")
REDUCED = SomborVariant("reduced")
AVERAGE = SomborVariant("average")


@dataclass(frozen=True)
class SomborValue:
    value: float
    variant: SomborVariant
    resolved_a: float


def edge_weight(du: float, dv: float, a: float) -> float:
    return math.hypot(du - a, dv - a)


def sombor_from_census(c: EdgeTypeCensus, a: float) -> float:
    return c.m22 * edge_weight(2, 2, a) + c.m23 * edge_weight(2, 3, a) + c.m33 * edge_weight(3, 3, a)


def average_degree(g: ChainGraph) -> float:
    if g.vertex_count == 0:
        raise ValueError("empty graph")
    return 2 * g.edge_count / g.vertex_count


def sombor_of_graph(g: ChainGraph, variant: SomborVariant = PLAIN) -> SomborValue:
    """Sum the edge weights of ``g`` directly from its degree sequence.

    The sum is exactly rounded (``math.fsum``), so graphs with the same
    multiset of edge weights evaluate to bit-identical values regardless of
    edge order.
    """
    if g.vertex_count == 0:
        raise ValueError("empty graph")
    a = variant.resolve(average_degree(g) if variant.depends_on_graph else None)
    deg = g.degrees.astype(np.float64)
    weights = np.hypot(deg[g.edges[:, 0]] - a, deg[g.edges[:, 1]] - a)
    return SomborValue(math.fsum(weights.tolist()), variant, a)
