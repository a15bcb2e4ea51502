"""Closed-form distribution and moments of ``SO_a`` on random chains.

Every realization of ``PC_n`` satisfies ``SO_a = A*x1 + B*(n-2) + C`` where
``x1`` counts type-1 attachments, ``A = A_1 - A_2``, ``B = A_2`` and
``C = SO_a(PC_2)``. Hence ``x1 ~ Binomial(n-2, p_1)`` carries all of the
randomness. The constants are measured on explicitly built graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable

import numpy as np
from scipy.stats import binom

from .chain import ChainSpec, SpecError, build_chain, n_types, validate_spec
from .sombor import PLAIN, SomborVariant, edge_weight, sombor_of_graph

CLOSED_FORM = "closed_form"
ENUMERATION = "enumeration"
SIMULATION = "simulation"

PMF_MAX_TRIALS = 10**6
# grouping resolution for equal index values reached along different paths
VALUE_KEY_RES = 1e-9


@dataclass(frozen=True)
class ChainTemplate:
    """A chain family with ``n`` left open."""

    l: int
    probs: tuple[float, ...] | None = None
    variant: SomborVariant = PLAIN
    name: str | None = None

    @property
    def k(self) -> int:
        return n_types(self.l)

    def at(self, n: int, probs: Iterable[float] | None = None, variant: SomborVariant | None = None) -> ChainSpec:
        probs = tuple(probs) if probs is not None else self.probs
        if probs is None:
            raise SpecError("attachment probabilities are required")
        return validate_spec(ChainSpec(self.l, n, probs, variant or self.variant))

    def with_(self, **changes) -> ChainTemplate:
        if "probs" in changes and changes["probs"] is not None:
            changes["probs"] = tuple(float(p) for p in changes["probs"])
        return replace(self, **changes)


FAMILIES = {
    "polyonino": 4,
    "pentachain": 5,
    "polyphenyl": 6,
    "cyclooctane": 8,
}


def family_preset(name: str) -> ChainTemplate:
    try:
        l = FAMILIES[name]
    except KeyError:
        raise SpecError(f"unknown chain family {name!r}; choose from {', '.join(FAMILIES)}") from None
    return ChainTemplate(l=l, name=name)


def resolve_a(variant: SomborVariant, l: int, n: int) -> float:
    """Shift ``a`` for ``variant`` on any chain of size ``(l, n)``.

    Vertex and edge counts do not depend on the attachment sequence, so the
    average degree ``2(nl+n-1)/(nl)`` is fixed by ``(l, n)``.
    """
    if variant.depends_on_graph:
        return 2 * (n * l + n - 1) / (n * l)
    return variant.resolve()


@dataclass(frozen=True)
class IncrementConstants:
    a_resolved: float
    increments: tuple[float, ...]
    A: float
    B: float
    C: float

    def value(self, x1: int, n: int) -> float:
        return self.A * x1 + self.B * (n - 2) + self.C

    def bn_basis(self) -> tuple[float, float, float]:
        """``(A, B, C')`` with ``SO_a = A*x1 + B*n + C'``."""
        return (self.A, self.B, self.C - 2 * self.B)


@lru_cache(maxsize=512)
def _increments_at(l: int, a: float) -> tuple[float, tuple[float, ...]]:
    fixed = SomborVariant.general(a)
    base = sombor_of_graph(build_chain(l, 2, ()), fixed).value
    incs = tuple(
        sombor_of_graph(build_chain(l, 3, (t,)), fixed).value - base for t in range(1, n_types(l) + 1)
    )
    return base, incs


def increment_constants(l: int, variant: SomborVariant = PLAIN, n_for_avg: int | None = None) -> IncrementConstants:
    """Per-attachment increments ``A_i`` and the affine constants ``(A, B, C)``.

    For the average variant ``n_for_avg`` pins the chain length whose average
    degree sets ``a``.
    """
    if l < 4:
        raise SpecError(f"increment constants need l >= 4 (two or more attachment types), got l={l}")
    if variant.depends_on_graph:
        if n_for_avg is None or n_for_avg < 1:
            raise SpecError("average variant needs the target chain length n_for_avg >= 1")
        a = resolve_a(variant, l, n_for_avg)
    else:
        a = variant.resolve()
    base, incs = _increments_at(l, a)
    return IncrementConstants(a, incs, incs[0] - incs[1], incs[1], base)


def _constants_for(spec: ChainSpec) -> IncrementConstants:
    return increment_constants(spec.l, spec.variant, spec.n)


def affine_form(spec: ChainSpec) -> tuple[float, float, float]:
    spec = validate_spec(spec)
    if spec.n < 2:
        raise SpecError("the affine form needs n >= 2")
    c = _constants_for(spec)
    return (c.A, c.B, c.C)


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    n: int
    variant: SomborVariant
    source: str


def closed_form_moments(spec: ChainSpec) -> MomentSummary:
    """Mean and variance from the affine form; ``n = 1`` is a single cycle."""
    spec = validate_spec(spec)
    if spec.n == 1:
        mean = spec.l * edge_weight(2, 2, resolve_a(spec.variant, spec.l, 1))
        var = 0.0
    else:
        c = _constants_for(spec)
        p1 = spec.p1
        mean = (p1 * c.A + c.B) * (spec.n - 2) + c.C
        var = c.A**2 * (spec.n - 2) * p1 * (1 - p1)
    return MomentSummary(mean, var, spec.n, spec.variant, CLOSED_FORM)


def expected_value(spec: ChainSpec) -> MomentSummary:
    return closed_form_moments(spec)


def variance(spec: ChainSpec) -> MomentSummary:
    # includes the (n-2) factor: one Bernoulli(p1) choice per attached polygon
    return closed_form_moments(spec)


@dataclass(frozen=True)
class AffineInN:
    """``E = M*n + N`` and ``Var = P*n + Q`` for fixed ``l``, ``p`` and ``a``."""

    M: float
    N: float
    P: float
    Q: float

    def mean(self, n: int) -> float:
        return self.M * n + self.N

    def variance(self, n: int) -> float:
        return self.P * n + self.Q


def moments_affine_in_n(template: ChainTemplate) -> AffineInN:
    if template.variant.depends_on_graph:
        raise SpecError(
            "the average variant's shift depends on n, so E and Var are not affine in n; "
            "call expected_value/variance per chain length instead"
        )
    spec = template.at(2)
    c = _constants_for(spec)
    p1 = spec.p1
    M = p1 * c.A + c.B
    P = c.A**2 * p1 * (1 - p1)
    return AffineInN(M, c.C - 2 * M, P, -2 * P)


@dataclass(frozen=True)
class Pmf:
    """Finite distribution as ``(value, probability)`` atoms sorted by value."""

    support: tuple[tuple[float, float], ...]

    @classmethod
    def from_atoms(cls, values: Iterable[float], probs: Iterable[float]) -> Pmf:
        return cls.from_groups(group_atoms(values, probs))

    @classmethod
    def from_groups(cls, groups: dict[int, list[float]]) -> Pmf:
        atoms = sorted((v, p) for v, p in groups.values() if p > 0)
        return cls(tuple(atoms))

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.support])

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for _, p in self.support])

    def total(self) -> float:
        return math.fsum(p for _, p in self.support)

    def mean(self) -> float:
        return math.fsum(v * p for v, p in self.support)

    def variance(self) -> float:
        mu = self.mean()
        return math.fsum(p * (v - mu) ** 2 for v, p in self.support)


def value_key(value: float) -> int:
    return round(value / VALUE_KEY_RES)


def group_atoms(values: Iterable[float], probs: Iterable[float], groups: dict | None = None) -> dict[int, list[float]]:
    """Merge atoms whose values agree to ``VALUE_KEY_RES``.

    Each group keeps its smallest exact value, so the outcome does not depend
    on the order atoms arrive in. Probabilities add in arrival order.
    """
    groups = {} if groups is None else groups
    for v, p in zip(values, probs):
        key = value_key(v)
        slot = groups.get(key)
        if slot is None:
            groups[key] = [v, p]
        else:
            slot[0] = min(slot[0], v)
            slot[1] += p
    return groups


def exact_pmf(spec: ChainSpec) -> Pmf:
    spec = validate_spec(spec)
    if spec.n < 2:
        raise SpecError("exact_pmf needs n >= 2")
    trials = spec.n - 2
    if trials > PMF_MAX_TRIALS:
        raise SpecError(f"n-2={trials} exceeds the exact pmf limit of {PMF_MAX_TRIALS}")
    c = _constants_for(spec)
    x = np.arange(trials + 1)
    probs = binom.pmf(x, trials, spec.p1) if trials else np.ones(1)
    values = [c.A * int(xi) + c.B * trials + c.C for xi in x]
    return Pmf.from_atoms(values, probs.tolist())
