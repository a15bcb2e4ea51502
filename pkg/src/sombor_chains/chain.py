"""Polygonal chain construction and edge-type reduction.

A chain ``PC_n`` is ``n`` copies of an ``l``-cycle joined in sequence by
single bridge edges. Polygon ``i`` (1-based) owns the contiguous vertex block
``[(i-1)*l, i*l)``; its local vertex 0 receives the bridge from polygon
``i-1``. The bridge leaving polygon ``i >= 2`` starts at local vertex ``t``,
where ``t`` is the attachment type drawn for polygon ``i+1``, i.e. the cyclic
distance from the incoming bridge vertex measured in ascending local index.
The first bridge leaves polygon 1 from its local vertex 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .sombor import PLAIN, SomborVariant

PROB_TOL = 1e-12


class SpecError(ValueError):
    """Raised when chain parameters or attachment sequences are invalid."""


def n_types(l: int) -> int:
    """Number of distinct attachment types for an ``l``-gon."""
    return l // 2


@dataclass(frozen=True)
class ChainSpec:
    l: int
    n: int
    probs: tuple[float, ...]
    variant: SomborVariant = PLAIN

    @property
    def k(self) -> int:
        return n_types(self.l)

    @property
    def p1(self) -> float:
        return self.probs[0]


def _check_int(name: str, value, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise SpecError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise SpecError(f"{name} must be >= {minimum}, got {value}")


def validate_spec(spec: ChainSpec, tol: float = PROB_TOL) -> ChainSpec:
    """Check a spec and return it with probabilities renormalized to sum 1.

    ``tol`` bounds how far the raw probability sum may stray from 1. The
    library default is 1e-12; the CLI loosens it for shell-typed decimals.
    """
    _check_int("l", spec.l, 3)
    _check_int("n", spec.n, 1)
    k = n_types(spec.l)
    probs = tuple(float(p) for p in spec.probs)
    if len(probs) != k:
        raise SpecError(f"expected k={k} attachment probabilities for l={spec.l}, got {len(probs)}")
    for i, p in enumerate(probs, start=1):
        if not math.isfinite(p) or p < 0:
            raise SpecError(f"p_{i} must be a finite nonnegative number, got {p}")
    total = math.fsum(probs)
    if abs(total - 1.0) > tol:
        raise SpecError(f"attachment probabilities sum to {total!r}, not 1 (tolerance {tol:g})")
    probs = tuple(p / total for p in probs)
    return ChainSpec(int(spec.l), int(spec.n), probs, spec.variant)


def check_sequence(l: int, n: int, seq: Sequence[int]) -> tuple[int, ...]:
    _check_int("l", l, 3)
    _check_int("n", n, 1)
    seq = tuple(int(t) for t in seq)
    want = max(n - 2, 0)
    if len(seq) != want:
        raise SpecError(f"attachment sequence for n={n} needs {want} entries, got {len(seq)}")
    k = n_types(l)
    for t in seq:
        if not 1 <= t <= k:
            raise SpecError(f"attachment type {t} outside 1..{k} for l={l}")
    return seq


@dataclass(frozen=True, eq=False)
class ChainGraph:
    """One realized chain: edge list plus per-vertex degree and polygon index.

    ``edges`` is an ``(m, 2)`` integer array; the first ``n*l`` rows are cycle
    edges (polygon by polygon), the last ``n-1`` rows are the bridges.
    """

    l: int
    n: int
    edges: np.ndarray
    degrees: np.ndarray
    polygon_of: np.ndarray
    out_offsets: tuple[int, ...] = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.n * self.l

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def bridge_vertices(self) -> tuple[tuple[int | None, int | None], ...]:
        """Per polygon, the (incoming, outgoing) bridge vertex or ``None``."""
        out = []
        for i in range(self.n):
            base = i * self.l
            incoming = base if i > 0 else None
            outgoing = base + self.out_offsets[i] if i < self.n - 1 else None
            out.append((incoming, outgoing))
        return tuple(out)

    def bridge_edges(self) -> np.ndarray:
        return self.edges[self.n * self.l:]


def build_chain_offsets(l: int, n: int, offsets: Sequence[int]) -> ChainGraph:
    """Build a chain from raw cyclic offsets in ``1..l-1`` (no mirror folding).

    ``offsets[j]`` places the bridge leaving polygon ``j+2`` at that many steps
    past its incoming vertex. Offsets ``d`` and ``l-d`` give mirror-image,
    isomorphic chains.
    """
    _check_int("l", l, 3)
    _check_int("n", n, 1)
    offsets = tuple(int(d) for d in offsets)
    if len(offsets) != max(n - 2, 0):
        raise SpecError(f"offset sequence for n={n} needs {max(n - 2, 0)} entries, got {len(offsets)}")
    if any(not 1 <= d < l for d in offsets):
        raise SpecError(f"offsets must lie in 1..{l - 1}")

    local = np.arange(l)
    bases = np.arange(n) * l
    cycle = np.empty((n * l, 2), dtype=np.int64)
    cycle[:, 0] = (bases[:, None] + local[None, :]).ravel()
    cycle[:, 1] = (bases[:, None] + (local[None, :] + 1) % l).ravel()

    # polygon 1 sends its bridge from local vertex 0, the last polygon sends none
    out_offsets = (0,) + offsets + ((0,) if n >= 2 else ())
    out_offsets = out_offsets[:n]
    if n >= 2:
        bridges = np.empty((n - 1, 2), dtype=np.int64)
        bridges[:, 0] = bases[:-1] + np.asarray(out_offsets[: n - 1], dtype=np.int64)
        bridges[:, 1] = bases[1:]
        edges = np.concatenate([cycle, bridges])
    else:
        edges = cycle

    degrees = np.bincount(edges.ravel(), minlength=n * l)
    polygon_of = np.repeat(np.arange(1, n + 1), l)
    for arr in (edges, degrees, polygon_of):
        arr.flags.writeable = False
    return ChainGraph(l, n, edges, degrees, polygon_of, out_offsets)


def build_chain(l: int, n: int, seq: Sequence[int]) -> ChainGraph:
    """Build ``PC_n`` from attachment types ``t_3..t_n`` (each in ``1..l//2``)."""
    seq = check_sequence(l, n, seq)
    return build_chain_offsets(l, n, seq)


@dataclass(frozen=True)
class CensusDelta:
    d22: int
    d23: int
    d33: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.d22, self.d23, self.d33)


@dataclass(frozen=True)
class EdgeTypeCensus:
    """Edge counts keyed by endpoint degrees {2,2}, {2,3}, {3,3}."""

    m22: int
    m23: int
    m33: int

    @property
    def total(self) -> int:
        return self.m22 + self.m23 + self.m33

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.m22, self.m23, self.m33)

    def __add__(self, delta: CensusDelta) -> EdgeTypeCensus:
        return EdgeTypeCensus(self.m22 + delta.d22, self.m23 + delta.d23, self.m33 + delta.d33)

    def __sub__(self, other: EdgeTypeCensus) -> CensusDelta:
        return CensusDelta(self.m22 - other.m22, self.m23 - other.m23, self.m33 - other.m33)


def degree_census(g: ChainGraph) -> EdgeTypeCensus:
    deg = g.degrees
    if deg.size == 0:
        raise SpecError("empty graph")
    if deg.min() < 2 or deg.max() > 3:
        raise SpecError("corrupted chain graph: vertex degree outside {2, 3}")
    pair_sum = deg[g.edges[:, 0]] + deg[g.edges[:, 1]]
    counts = np.bincount(pair_sum, minlength=7)
    return EdgeTypeCensus(int(counts[4]), int(counts[5]), int(counts[6]))


def census_closed_form(l: int, n: int, x1: int) -> EdgeTypeCensus:
    """Census of any chain with ``x1`` type-1 attachments, without building it."""
    if n == 1:
        return EdgeTypeCensus(l, 0, 0)
    m = n - 2
    return EdgeTypeCensus((2 * l - 4) + m * (l - 4) + x1, 4 + 4 * m - 2 * x1, 1 + m + x1)


def attachment_deltas(l: int) -> list[CensusDelta]:
    """Census change per appended polygon, one entry per attachment type."""
    base = degree_census(build_chain(l, 2, ()))
    return [degree_census(build_chain(l, 3, (t,))) - base for t in range(1, n_types(l) + 1)]
