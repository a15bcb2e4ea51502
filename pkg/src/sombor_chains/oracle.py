"""Brute-force ground truth and the audit of published formulas.

:func:`enumerate_exact` walks every attachment sequence of a chain, builds the
graph, evaluates the index edge by edge and weights it by the product of the
attachment probabilities. It deliberately does not use the ``x1`` reduction,
so it stays valid even if the increment collapse ever stopped holding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._parallel import chunk_ranges, ordered_map
from .chain import ChainSpec, SpecError, build_chain, validate_spec
from .moments import (
    ENUMERATION,
    ChainTemplate,
    MomentSummary,
    Pmf,
    closed_form_moments,
    group_atoms,
    increment_constants,
    resolve_a,
)
from .printed import REGISTRY, PrintedParams
from .sombor import AVERAGE, PLAIN, REDUCED, SomborVariant, sombor_of_graph

ENUMERATION_GUARD = 2 * 10**7
AUDIT_ENUMERATION_LIMIT = 10**5
CHUNK = 2048

MATCH_ABS = 1e-9
MATCH_REL = 1e-9

MATCH = "match"
MISMATCH = "mismatch"
IMPOSSIBLE = "impossible"


class GuardError(RuntimeError):
    """Raised when an exact computation would exceed its state-space bound."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound


def sequence_count(spec: ChainSpec) -> int:
    return spec.k ** max(spec.n - 2, 0)


def _decode(lo: int, hi: int, k: int, m: int) -> np.ndarray:
    """Sequences ``lo..hi-1`` in base-``k`` order, most significant first."""
    idx = np.arange(lo, hi, dtype=np.int64)
    powers = k ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % k + 1


def _evaluate(spec: ChainSpec, seq) -> float:
    return sombor_of_graph(build_chain(spec.l, spec.n, seq), spec.variant).value


def enumerate_exact(spec: ChainSpec, threads: int | None = None, guard: int = ENUMERATION_GUARD) -> tuple[MomentSummary, Pmf]:
    """Exact mean, variance and pmf by visiting every attachment sequence."""
    spec = validate_spec(spec)
    total = sequence_count(spec)
    if total > guard:
        raise GuardError(
            f"enumeration over {spec.k}^{spec.n - 2} = {total} sequences exceeds the guard of {guard}", guard
        )
    m = max(spec.n - 2, 0)
    probs = spec.probs

    # shift by a value that carries weight, so degenerate cases give exactly 0
    first = next(t for t, p in enumerate(probs, start=1) if p > 0)
    ref = _evaluate(spec, (first,) * m)

    def run(bounds):
        lo, hi = bounds
        w_sum = s1 = s2 = 0.0
        vals, ws = [], []
        for row in _decode(lo, hi, spec.k, m) if m else [()]:
            seq = tuple(int(t) for t in row)
            w = math.prod(probs[t - 1] for t in seq)
            if w == 0.0:
                continue
            v = _evaluate(spec, seq)
            d = v - ref
            w_sum += w
            s1 += w * d
            s2 += w * d * d
            vals.append(v)
            ws.append(w)
        return w_sum, s1, s2, vals, ws

    parts = ordered_map(run, chunk_ranges(total, CHUNK), threads)
    w_sum = s1 = s2 = 0.0
    groups: dict = {}
    for pw, p1, p2, vals, ws in parts:
        w_sum += pw
        s1 += p1
        s2 += p2
        group_atoms(vals, ws, groups)
    shift = s1 / w_sum
    mean = ref + shift
    var = max(s2 / w_sum - shift * shift, 0.0)
    return MomentSummary(mean, var, spec.n, spec.variant, ENUMERATION), Pmf.from_groups(groups)


@dataclass(frozen=True)
class DiscrepancyReport:
    formula_id: str
    anchor: str
    n: int
    p1: float
    variant: str
    a: float
    printed_value: float
    derived_value: float
    derived_source: str
    abs_diff: float
    rel_diff: float | None
    verdict: str


def verdict_for(printed: float, derived: float, quantity: str, abs_tol: float = MATCH_ABS, rel_tol: float = MATCH_REL) -> str:
    if not math.isfinite(printed):
        return IMPOSSIBLE
    diff = abs(printed - derived)
    if diff <= abs_tol or (derived != 0 and diff / abs(derived) <= rel_tol):
        return MATCH
    if quantity == "variance" and printed < 0:
        return IMPOSSIBLE
    return MISMATCH


_NAMED = {"plain": PLAIN, "reduced": REDUCED, "average": AVERAGE}


def audit(
    template: ChainTemplate,
    n_list: Iterable[int],
    threads: int | None = None,
    enumeration_limit: int = AUDIT_ENUMERATION_LIMIT,
) -> list[DiscrepancyReport]:
    """Compare every applicable published formula with derived values.

    Means and variances come from :func:`enumerate_exact` while the sequence
    count stays within ``enumeration_limit``, otherwise from the closed form
    (which the enumeration checks elsewhere). Formulas stated for a general
    shift ``a`` are evaluated at the template's variant.
    """
    if template.probs is None:
        raise SpecError("audit needs attachment probabilities")
    l = template.l
    formulas = [f for f in REGISTRY.values() if f.applies_to(l)]
    exact_cache: dict = {}

    def moments(spec: ChainSpec) -> tuple[MomentSummary, str]:
        key = (spec.n, spec.variant)
        if key not in exact_cache:
            if sequence_count(spec) <= enumeration_limit:
                exact_cache[key] = (enumerate_exact(spec, threads=threads)[0], "enumeration")
            else:
                exact_cache[key] = (closed_form_moments(spec), "closed_form")
        return exact_cache[key]

    reports = []
    for n in n_list:
        if n < 2:
            raise SpecError(f"audit needs n >= 2, got {n}")
        for f in formulas:
            variant: SomborVariant = template.variant if f.variant == "any" else _NAMED[f.variant]
            spec = template.at(n, variant=variant)
            a = resolve_a(variant, l, n)
            consts = increment_constants(l, variant, n)
            params = PrintedParams(
                k=spec.k, n=n, p1=spec.p1, a=a, probs=spec.probs, increments=consts.increments, so_pc2=consts.C
            )
            try:
                printed = float(f.fn(params))
            except (ValueError, ZeroDivisionError):
                printed = math.nan

            source = "graph_constants"
            if f.quantity in ("mean", "variance"):
                summary, source = moments(spec)
                derived = summary.mean if f.quantity == "mean" else summary.variance
            elif f.quantity == "so_pc2":
                derived = consts.C
            elif f.quantity == "inc1":
                derived = consts.increments[0]
            elif f.quantity == "inc2":
                derived = consts.increments[1]
            elif f.quantity == "affine_A":
                derived = consts.A
            elif f.quantity == "affine_B":
                derived = consts.B
            elif f.quantity == "affine_C_bn":
                derived = consts.bn_basis()[2]
            else:
                raise AssertionError(f"unhandled quantity {f.quantity}")

            diff = abs(printed - derived) if math.isfinite(printed) else math.inf
            rel = diff / abs(derived) if derived != 0 else None
            reports.append(
                DiscrepancyReport(
                    formula_id=f.id,
                    anchor=f.anchor,
                    n=n,
                    p1=spec.p1,
                    variant=variant.label(),
                    a=a,
                    printed_value=printed,
                    derived_value=derived,
                    derived_source=source,
                    abs_diff=diff,
                    rel_diff=rel,
                    verdict=verdict_for(printed, derived, f.quantity),
                )
            )
    return reports
