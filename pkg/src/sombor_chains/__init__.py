"""Sombor indices of random polygonal chains: construction, closed forms, oracles."""

from .chain import (
    CensusDelta,
    ChainGraph,
    ChainSpec,
    EdgeTypeCensus,
    SpecError,
    attachment_deltas,
    build_chain,
    build_chain_offsets,
    census_closed_form,
    degree_census,
    validate_spec,
)
from .moments import (
    AffineInN,
    ChainTemplate,
    IncrementConstants,
    MomentSummary,
    Pmf,
    affine_form,
    exact_pmf,
    expected_value,
    family_preset,
    increment_constants,
    moments_affine_in_n,
    variance,
)
from .oracle import DiscrepancyReport, GuardError, audit, enumerate_exact
from .printed import PrintedParams, printed_formula
from .simulate import NormalParams, SampleStats, ks_normality, monte_carlo, normal_params, sample_sequence, substream
from .sombor import (
    AVERAGE,
    PLAIN,
    REDUCED,
    SomborValue,
    SomborVariant,
    average_degree,
    edge_weight,
    sombor_from_census,
    sombor_of_graph,
)

__version__ = "0.1.0"
