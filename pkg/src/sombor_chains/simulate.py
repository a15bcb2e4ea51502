"""Seeded Monte Carlo sampling of random chains and a normality check.

Randomness comes from numpy's Philox-4x64 counter generator. Sample ``i`` of
a run with seed ``s`` uses key ``s`` and a counter whose top word is ``i``, so
each sample owns a disjoint stream and results do not depend on how samples
are split across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from ._parallel import chunk_ranges, ordered_map
from .chain import ChainSpec, SpecError, build_chain, validate_spec
from .moments import closed_form_moments, increment_constants
from .printed import REGISTRY, PrintedParams
from .sombor import AVERAGE, PLAIN, REDUCED, sombor_of_graph

CHUNK = 256
SEED_MASK = (1 << 64) - 1


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index`` of a run seeded with ``seed``."""
    if not 0 <= seed <= SEED_MASK:
        raise SpecError(f"seed must fit in 64 unsigned bits, got {seed}")
    counter = np.array([0, 0, 0, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=seed, counter=counter))


def sample_sequence(spec: ChainSpec, rng: np.random.Generator) -> tuple[int, ...]:
    """Draw ``n-2`` i.i.d. attachment types with probabilities ``spec.probs``."""
    if spec.n < 2:
        raise SpecError("sampling needs n >= 2")
    cum = np.cumsum(spec.probs)
    cum[-1] = 1.0
    u = rng.random(spec.n - 2)
    return tuple(int(t) + 1 for t in np.searchsorted(cum, u, side="right"))


@dataclass(frozen=True)
class SampleStats:
    sample_count: int
    mean: float
    unbiased_variance: float
    std_error: float
    seed: int
    ks_statistic: float | None = None


def _chunk_stats(values: np.ndarray) -> tuple[int, float, float]:
    # offset by the first value so constant chunks keep their value exactly
    v0 = values[0]
    d = values - v0
    mean = v0 + d.mean()
    m2 = float(np.sum((values - mean) ** 2))
    return len(values), float(mean), m2


def _merge(a: tuple[int, float, float], b: tuple[int, float, float]) -> tuple[int, float, float]:
    na, ma, m2a = a
    nb, mb, m2b = b
    n = na + nb
    delta = mb - ma
    return n, ma + delta * nb / n, m2a + m2b + delta * delta * na * nb / n


def sample_values(spec: ChainSpec, samples: int, seed: int, threads: int | None = None) -> np.ndarray:
    """Index values of ``samples`` independently drawn chains, in sample order."""
    spec = validate_spec(spec)
    if spec.n < 2:
        raise SpecError("sampling needs n >= 2")

    def run(bounds):
        lo, hi = bounds
        out = np.empty(hi - lo)
        for j, i in enumerate(range(lo, hi)):
            seq = sample_sequence(spec, substream(seed, i))
            out[j] = sombor_of_graph(build_chain(spec.l, spec.n, seq), spec.variant).value
        return out

    return np.concatenate(ordered_map(run, chunk_ranges(samples, CHUNK), threads))


def monte_carlo(
    spec: ChainSpec,
    samples: int,
    seed: int = 0,
    threads: int | None = None,
    ks: bool = False,
) -> SampleStats:
    """Sample mean and unbiased variance over explicitly built chains.

    With ``ks=True`` the Kolmogorov-Smirnov distance to the closed-form normal
    approximation is attached (``None`` when that variance is zero).
    """
    if samples < 2:
        raise SpecError(f"monte carlo needs at least 2 samples, got {samples}")
    spec = validate_spec(spec)
    values = sample_values(spec, samples, seed, threads)
    acc = None
    for lo, hi in chunk_ranges(samples, CHUNK):
        part = _chunk_stats(values[lo:hi])
        acc = part if acc is None else _merge(acc, part)
    count, mean, m2 = acc
    var = m2 / (count - 1)
    ks_stat = None
    if ks:
        params = normal_params(spec)
        if params.sigma2 > 0:
            ks_stat = ks_normality(values, params)
    return SampleStats(count, mean, var, math.sqrt(var / count), seed, ks_stat)


@dataclass(frozen=True)
class NormalParams:
    mu: float
    sigma2: float


def normal_params(spec: ChainSpec) -> NormalParams:
    m = closed_form_moments(spec)
    return NormalParams(m.mean, m.variance)


def ks_normality(values, params: NormalParams) -> float:
    """One-sample KS distance ``sup |F_n(x) - Phi((x - mu) / sigma)|``."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    if x.size == 0:
        raise SpecError("KS statistic needs at least one value")
    if not params.sigma2 > 0:
        raise SpecError("KS against a normal with zero variance is undefined")
    m = x.size
    cdf = ndtr((x - params.mu) / math.sqrt(params.sigma2))
    i = np.arange(1, m + 1)
    d_plus = np.max(i / m - cdf)
    d_minus = np.max(cdf - (i - 1) / m)
    return float(max(d_plus, d_minus))


TABLE_ROWS = (("SO", PLAIN), ("SO_red", REDUCED), ("SO_avr", AVERAGE))


def normal_table(l: int, n: int, probs) -> list[dict]:
    """Normal parameters per index, derived next to the published values.

    One row per index (plain, reduced, average) for the chain ``(l, n, probs)``;
    published columns are ``None`` where no formula covers ``l``.
    """
    parity = "odd" if l % 2 else "even"
    rows = []
    for name, variant in TABLE_ROWS:
        spec = validate_spec(ChainSpec(l, n, tuple(probs), variant))
        derived = normal_params(spec)
        printed_mu = printed_s2 = None
        mu_id = f"Table1_{name}_{parity}_mu"
        s2_id = f"Table1_{name}_{parity}_sigma2"
        if REGISTRY[mu_id].applies_to(l):
            consts = increment_constants(l, variant, n)
            params = PrintedParams(k=spec.k, n=n, p1=spec.p1, a=consts.a_resolved, probs=spec.probs)
            printed_mu = REGISTRY[mu_id].fn(params)
            printed_s2 = REGISTRY[s2_id].fn(params)
        rows.append(
            {
                "index": name,
                "parity": parity,
                "l": l,
                "n": n,
                "p1": spec.p1,
                "mu": derived.mu,
                "sigma2": derived.sigma2,
                "printed_mu": printed_mu,
                "printed_sigma2": printed_s2,
            }
        )
    return rows
