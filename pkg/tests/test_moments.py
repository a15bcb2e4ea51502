import math

import numpy as np
import pytest
from scipy.stats import binom

from helpers import all_sequences, avg_degree, brute_moments, naive_chain, naive_sombor
from sombor_chains import (
    AVERAGE,
    PLAIN,
    REDUCED,
    ChainSpec,
    ChainTemplate,
    SomborVariant,
    SpecError,
    affine_form,
    build_chain,
    exact_pmf,
    expected_value,
    family_preset,
    increment_constants,
    moments_affine_in_n,
    sombor_of_graph,
    variance,
)
from sombor_chains.moments import Pmf, resolve_a

R2, R5, R13, R26 = math.sqrt(2), math.sqrt(5), math.sqrt(13), math.sqrt(26)
A_PLAIN = 5 * R2 - 2 * R13
A_REDUCED = 3 * R2 - 2 * R5
THIRD = (1 / 3, 1 / 3, 1 / 3)


class TestIncrements:
    def test_pentagon_plain(self):
        c = increment_constants(5, PLAIN)
        assert c.increments[0] == pytest.approx(10 * R2 + 2 * R13, abs=1e-12)
        assert c.increments[1] == pytest.approx(5 * R2 + 4 * R13, abs=1e-12)

    def test_hexagon_A(self):
        assert increment_constants(6, PLAIN).A == pytest.approx(A_PLAIN, abs=1e-12)
        assert increment_constants(6, REDUCED).A == pytest.approx(A_REDUCED, abs=1e-12)

    def test_rejects_triangles(self):
        with pytest.raises(SpecError):
            increment_constants(3)

    def test_average_needs_n(self):
        with pytest.raises(SpecError):
            increment_constants(6, AVERAGE)
        c = increment_constants(6, AVERAGE, n_for_avg=2)
        assert c.a_resolved == pytest.approx(26 / 12)

    @pytest.mark.parametrize("l", range(4, 13))
    @pytest.mark.parametrize("variant", [PLAIN, REDUCED, SomborVariant.general(0.5), SomborVariant.general(2.5)])
    def test_collapse(self, l, variant):
        incs = increment_constants(l, variant).increments
        assert all(abs(x - incs[1]) <= 1e-12 for x in incs[1:])

    @pytest.mark.parametrize("variant", [PLAIN, REDUCED, SomborVariant.general(0.5), SomborVariant.general(-1.0)])
    def test_A_independent_of_l(self, variant):
        As = [increment_constants(l, variant).A for l in (4, 5, 6, 8, 10)]
        assert max(As) - min(As) <= 1e-12

    def test_A_vanishes_at_2_5(self):
        # |2-a| = |3-a| makes the two weighted paths equal
        assert abs(increment_constants(6, SomborVariant.general(2.5)).A) < 1e-12


class TestAffineForm:
    def test_hexagon_plain(self):
        A, B, C = affine_form(ChainSpec(6, 7, THIRD))
        assert A == pytest.approx(A_PLAIN, abs=1e-12)
        assert B == pytest.approx(7 * R2 + 4 * R13, abs=1e-12)
        assert C == pytest.approx(19 * R2 + 4 * R13, abs=1e-12)

    def test_square_values(self):
        A, B, C = affine_form(ChainSpec(4, 3, (0.5, 0.5)))
        # full edge sums on both three-square chains
        assert B + C == pytest.approx(naive_sombor(naive_chain(4, 3, [2]), 0), abs=1e-12)
        assert A + B + C == pytest.approx(naive_sombor(naive_chain(4, 3, [1]), 0), abs=1e-12)
        assert B + C == pytest.approx(48.643400, abs=1e-6)
        assert A + B + C == pytest.approx(48.503365, abs=1e-6)

    def test_needs_two_polygons(self):
        with pytest.raises(SpecError):
            affine_form(ChainSpec(6, 1, THIRD))

    @pytest.mark.parametrize("l", [4, 5, 6, 8])
    @pytest.mark.parametrize("variant", [PLAIN, REDUCED, AVERAGE, SomborVariant.general(0.5)])
    def test_identity_all_sequences(self, l, variant):
        for n in range(2, 7):
            c = increment_constants(l, variant, n)
            for seq in all_sequences(l // 2, n - 2):
                v = sombor_of_graph(build_chain(l, n, seq), variant).value
                assert v == pytest.approx(c.value(seq.count(1), n), abs=1e-10)


class TestMoments:
    def test_hexagon_uniform(self):
        spec = ChainSpec(6, 4, THIRD)
        mean, var, _ = brute_moments(6, 4, THIRD, lambda adj: 0.0)
        assert mean == pytest.approx(89.842306, abs=1e-6)
        assert expected_value(spec).mean == pytest.approx(mean, abs=1e-10)
        assert variance(spec).variance == pytest.approx((102 - 20 * R26) * 2 * (2 / 9), abs=1e-12)
        assert variance(spec).variance == pytest.approx(var, abs=1e-12)

    def test_two_pentagons(self):
        m = expected_value(ChainSpec(5, 2, (0.3, 0.7)))
        assert m.mean == pytest.approx(15 * R2 + 4 * R13, abs=1e-12)
        assert m.variance == 0
        assert m.source == "closed_form"

    def test_deterministic_chain(self):
        m = expected_value(ChainSpec(8, 3, (1, 0, 0, 0)))
        assert m.mean == pytest.approx(sombor_of_graph(build_chain(8, 3, [1])).value, abs=1e-12)
        assert m.variance == 0

    def test_single_polygon(self):
        assert expected_value(ChainSpec(7, 1, (0.2, 0.3, 0.5))).mean == pytest.approx(7 * 2 * R2)
        assert expected_value(ChainSpec(7, 1, (0.2, 0.3, 0.5), AVERAGE)).mean == 0

    def test_reduced_long_chain(self):
        spec = ChainSpec(6, 10, (0.5, 0.25, 0.25), REDUCED)
        assert variance(spec).variance == pytest.approx(A_REDUCED**2 * 8 * 0.25, abs=1e-12)
        _, var, _ = brute_moments(6, 10, spec.probs, lambda adj: 1.0)
        assert variance(spec).variance == pytest.approx(var, abs=1e-10)

    @pytest.mark.parametrize("p1", [0.0, 1.0])
    def test_degenerate_variance(self, p1):
        probs = (p1, 1 - p1, 0.0)
        assert variance(ChainSpec(6, 9, probs)).variance == 0

    def test_average_variant_per_n(self):
        for n in (3, 5):
            spec = ChainSpec(5, n, (0.4, 0.6), AVERAGE)
            mean, var, _ = brute_moments(5, n, spec.probs, avg_degree)
            assert expected_value(spec).mean == pytest.approx(mean, abs=1e-10)
            assert variance(spec).variance == pytest.approx(var, abs=1e-12)
            assert resolve_a(AVERAGE, 5, n) == pytest.approx(2 * (5 * n + n - 1) / (5 * n))


class TestAffineInN:
    def test_hexagon(self):
        aff = moments_affine_in_n(ChainTemplate(6, THIRD))
        assert aff.M == pytest.approx(24.275022, abs=1e-6)
        assert aff.N == pytest.approx(-7.257781, abs=1e-6)
        for n in (3, 4, 5):
            mean, var, _ = brute_moments(6, n, THIRD, lambda adj: 0.0)
            assert aff.mean(n) == pytest.approx(mean, abs=1e-9)
            assert aff.variance(n) == pytest.approx(var, abs=1e-12)

    def test_zero_p1(self):
        aff = moments_affine_in_n(ChainTemplate(8, (0, 0.5, 0.25, 0.25)))
        assert aff.P == 0 and aff.Q == 0

    def test_square_reduced(self):
        aff = moments_affine_in_n(ChainTemplate(4, (0.5, 0.5), REDUCED))
        assert aff.P == pytest.approx(A_REDUCED**2 / 4, abs=1e-12)
        assert aff.Q == -2 * aff.P
        _, var, _ = brute_moments(4, 4, (0.5, 0.5), lambda adj: 1.0)
        assert aff.variance(4) == pytest.approx(var, abs=1e-12)

    def test_average_rejected(self):
        with pytest.raises(SpecError, match="per chain length"):
            moments_affine_in_n(ChainTemplate(6, THIRD, AVERAGE))


class TestExactPmf:
    def test_three_squares(self):
        pmf = exact_pmf(ChainSpec(4, 3, (0.5, 0.5)))
        assert len(pmf.support) == 2
        (v0, q0), (v1, q1) = pmf.support
        assert v0 == pytest.approx(48.503365, abs=1e-6) and q0 == pytest.approx(0.5, abs=1e-15)
        assert v1 == pytest.approx(48.643400, abs=1e-6) and q1 == pytest.approx(0.5, abs=1e-15)

    def test_two_polygons_single_atom(self):
        pmf = exact_pmf(ChainSpec(6, 2, THIRD))
        assert pmf.support == ((pytest.approx(19 * R2 + 4 * R13, abs=1e-12), 1.0),)

    @pytest.mark.parametrize("x", [0.0, 0.3, 1.0])
    def test_no_type_one(self, x):
        pmf = exact_pmf(ChainSpec(6, 5, (0.0, x, 1 - x)))
        A, B, C = affine_form(ChainSpec(6, 5, THIRD))
        assert len(pmf.support) == 1
        assert pmf.support[0][0] == pytest.approx(3 * B + C, abs=1e-12)

    def test_aggregates_when_A_is_zero(self):
        pmf = exact_pmf(ChainSpec(6, 12, THIRD, SomborVariant.general(2.5)))
        assert len(pmf.support) == 1
        assert pmf.total() == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("l, n, probs", [(4, 7, (0.3, 0.7)), (5, 6, (0.9, 0.1)), (8, 8, (0.1, 0.2, 0.3, 0.4))])
    def test_moments_match_closed_form(self, l, n, probs):
        spec = ChainSpec(l, n, probs, REDUCED)
        pmf = exact_pmf(spec)
        m = expected_value(spec)
        assert pmf.total() == pytest.approx(1.0, abs=1e-12)
        assert pmf.mean() == pytest.approx(m.mean, abs=1e-10)
        assert pmf.variance() == pytest.approx(m.variance, abs=1e-12)

    def test_convolution_of_steps(self):
        # n-2 independent two-point steps mapped through the affine form
        spec = ChainSpec(6, 9, (0.35, 0.4, 0.25))
        A, B, C = affine_form(spec)
        dist = np.array([1.0])
        for _ in range(spec.n - 2):
            dist = np.convolve(dist, [1 - spec.p1, spec.p1])
        pmf = exact_pmf(spec)
        assert len(pmf.support) == len(dist)
        for x, (v, q) in enumerate(sorted(pmf.support, key=lambda t: t[0], reverse=A < 0)):
            assert v == pytest.approx(A * x + B * (spec.n - 2) + C, abs=1e-10)
            assert q == pytest.approx(dist[x], abs=1e-12)
            assert q == pytest.approx(binom.pmf(x, spec.n - 2, spec.p1), abs=1e-12)

    def test_rejects_huge(self):
        with pytest.raises(SpecError):
            exact_pmf(ChainSpec(6, 10**6 + 3, THIRD))

    def test_pmf_sorted(self):
        pmf = exact_pmf(ChainSpec(8, 10, (0.5, 0.2, 0.2, 0.1)))
        vals = [v for v, _ in pmf.support]
        assert vals == sorted(vals)

    def test_group_keeps_smallest(self):
        pmf = Pmf.from_atoms([1.0 + 1e-12, 1.0, 2.0], [0.25, 0.25, 0.5])
        assert pmf.support == ((1.0, 0.5), (2.0, 0.5))


class TestPresets:
    @pytest.mark.parametrize(
        "name, l, k", [("polyonino", 4, 2), ("pentachain", 5, 2), ("polyphenyl", 6, 3), ("cyclooctane", 8, 4)]
    )
    def test_sizes(self, name, l, k):
        t = family_preset(name)
        assert (t.l, t.k, t.name) == (l, k, name)

    def test_unknown(self):
        with pytest.raises(SpecError):
            family_preset("naphthalene")

    def test_template_at(self):
        spec = family_preset("polyphenyl").at(5, (0.2, 0.3, 0.5))
        assert (spec.l, spec.n, spec.k) == (6, 5, 3)
        with pytest.raises(SpecError):
            family_preset("polyphenyl").at(5)
