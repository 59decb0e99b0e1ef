"""Osculating tangents, skewness, covering, maximality, dual spread, reguli."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bwcayley import cayley
from bwcayley.bwspread import (
    Char3Unsupported,
    NotARegulus,
    PointOnGInf,
    SamePoint,
    betten_chart,
    betten_collineation,
    build_O,
    certify_covering,
    certify_dual_spread,
    certify_duality,
    certify_maximality,
    certify_partial_spread,
    certify_spread,
    covering_deficit,
    osculating_tangent,
    parameter_grid,
    regulus_minus,
    skew_criterion,
    transversal_map,
    uncovered_witness_rational,
    verify_regulus,
)
from bwcayley.field import PrimeField, Rationals, SpreadRegime, classify_field, cube_roots
from bwcayley.projspace import (
    enumerate_lines,
    enumerate_points,
    incidence,
    line_in_plane,
    lines_skew,
    point_in_plane,
)

QQ = Rationals()
F2, F3, F5, F7 = (PrimeField(p) for p in (2, 3, 5, 7))

small_fractions = st.fractions(min_value=-15, max_value=15, max_denominator=8)


class TestOsculatingTangent:
    def test_frozen_pluckers(self):
        assert osculating_tangent(0, 0, F5).line.plucker == (1, 0, 0, 0, 0, 0)
        assert osculating_tangent(1, 1, QQ).line.plucker == tuple(
            map(Fraction, (1, 3, 1, 2, 1, 1))
        )
        assert osculating_tangent(1, 1, F3).line.plucker == (1, 0, 1, 2, 1, 1)

    @pytest.mark.parametrize("F", [F2, F3, F5, F7])
    def test_multiplicity_three_exhaustive(self, F):
        for u1, u2 in parameter_grid(F):
            t = osculating_tangent(u1, u2, F)
            profile = cayley.intersect_line_surface(t.line, F)
            assert not profile.contained
            assert profile.points == ((cayley.surface_point(u1, u2, F), 3),)

    @given(small_fractions, small_fractions)
    @settings(max_examples=60)
    def test_multiplicity_three_rational(self, u1, u2):
        t = osculating_tangent(u1, u2, QQ)
        profile = cayley.intersect_line_surface(t.line, QQ)
        assert profile.points == ((cayley.surface_point(u1, u2, QQ), 3),)

    @pytest.mark.parametrize("F", [F2, F3, F5, F7])
    def test_skew_to_directrix(self, F):
        ginf = cayley.g_infinity(F)
        for u1, u2 in parameter_grid(F):
            assert lines_skew(osculating_tangent(u1, u2, F).line, ginf, F)

    @pytest.mark.parametrize("F,size", [(F2, 5), (F3, 10), (F5, 26)])
    def test_build_O_sizes(self, F, size):
        assert len(build_O(F)) == size


class TestSkewCriterion:
    def test_frozen_values(self):
        assert skew_criterion(0, 0, 1, 1, QQ) == 1  # 1 - 3 + 3
        assert skew_criterion(0, 0, 0, 5, QQ) == 25  # u1 = 0 branch: u2^2
        assert skew_criterion(0, 0, 1, 4, F7) == 0  # 16 - 12 + 3 = 7

    def test_same_point_rejected(self):
        with pytest.raises(SamePoint):
            skew_criterion(1, 2, 1, 2, QQ)

    def test_symmetric_verdict(self):
        for (v1, v2), (u1, u2) in combinations(parameter_grid(F7), 2):
            a = skew_criterion(v1, v2, u1, u2, F7) == 0
            b = skew_criterion(u1, u2, v1, v2, F7) == 0
            assert a == b

    @pytest.mark.parametrize("F", [F5, F7])
    def test_criterion_matches_determinant_exhaustive(self, F):
        for (v1, v2), (u1, u2) in combinations(parameter_grid(F), 2):
            criterion_zero = skew_criterion(v1, v2, u1, u2, F) == 0
            det_skew = lines_skew(
                osculating_tangent(v1, v2, F).line, osculating_tangent(u1, u2, F).line, F
            )
            assert criterion_zero == (not det_skew)


class TestPartialSpread:
    def test_gf5_passes(self):
        r = certify_partial_spread(F5)
        assert r.passed and r.counts["pairs_checked"] == 26 * 25 // 2

    def test_gf7_witness(self):
        r = certify_partial_spread(F7)
        assert not r.passed
        assert r.witness == ((0, 0), (1, 4))
        # witness replay
        assert skew_criterion(*r.witness[0], *r.witness[1], F7) == 0

    def test_char3_fails(self):
        r = certify_partial_spread(F3)
        assert not r.passed and r.witness is not None

    def test_rationals_pass(self):
        r = certify_partial_spread(QQ, seed=1)
        assert r.passed


class TestCovering:
    def test_gf5_exact_partition(self):
        r = certify_covering(F5)
        assert r.passed
        assert r.counts["points"] == 156
        assert r.counts["affine_with_1_tangents"] == 125

    def test_gf2_partition(self):
        r = certify_covering(F2)
        assert r.passed and r.counts["points"] == 15

    def test_gf3_witness(self):
        r = certify_covering(F3)
        assert not r.passed
        assert r.witness == (0, 1, 1, 0)
        # replay: no line of O passes through the witness
        assert not any(incidence(r.witness, l, F3) for l in build_O(F3))

    def test_gf7_split_multiplicities(self):
        r = certify_covering(F7)
        assert not r.passed
        assert r.counts["affine_with_0_tangents"] == 2 * 343 // 7 * 2
        assert r.counts["affine_with_3_tangents"] == 2 * 343 // 7
        assert r.counts["affine_with_1_tangents"] == 343 // 7

    @pytest.mark.parametrize("F", [F2, F5])
    def test_incidence_partition_brute_force(self, F):
        # independent oracle: count actual point-line incidences
        O = build_O(F)
        for x in enumerate_points(F):
            assert sum(1 for l in O if incidence(x, l, F)) == 1

    def test_rational_witness(self):
        assert uncovered_witness_rational(2) == (1, 0, 0, 2)

    def test_rational_small_points_covered(self):
        # (1,0,0,1) lies on a tangent since 1 has the rational cube root 1
        assert cube_roots(covering_deficit(0, 0, 1, QQ), QQ) == {Fraction(1)}
        # 3 is not a perfect cube, so (1,0,0,3) is uncovered
        assert cube_roots(covering_deficit(0, 0, 3, QQ), QQ) == set()


class TestMaximality:
    def test_gf5(self):
        r = certify_maximality(F5)
        assert r.passed and r.counts["omega_points"] == 31

    def test_gf2_point(self):
        # (0,1,1,1): 3 = 1 in GF(2), so u1 = 1, u2 = 1
        t = osculating_tangent(1, 1, F2)
        assert incidence((0, 1, 1, 1), t.line, F2)

    def test_rational_point(self):
        t = osculating_tangent(2, 7, QQ)
        assert incidence((0, 1, 6, 7), t.line, QQ)

    def test_char3_refused(self):
        with pytest.raises(Char3Unsupported):
            certify_maximality(F3)

    def test_rationals_pass(self):
        assert certify_maximality(QQ, seed=3).passed

    def test_brute_force_cross_check_gf5(self):
        O = build_O(F5)
        for x in enumerate_points(F5):
            if x[0] != 0:
                continue
            assert any(incidence(x, l, F5) for l in O)


class TestDualSpread:
    @pytest.mark.parametrize("F,planes", [(F2, 15), (F5, 156)])
    def test_exactly_one_line_per_plane(self, F, planes):
        r = certify_dual_spread(F)
        assert r.passed
        assert r.counts["planes_with_1_lines"] == planes

    def test_gf7_fails_with_witness(self):
        r = certify_dual_spread(F7)
        assert not r.passed
        assert r.witness is not None
        O = build_O(F7)
        count = sum(1 for l in O if line_in_plane(l, r.witness, F7))
        assert count != 1


class TestDuality:
    @pytest.mark.parametrize("F", [F2, F3, F5])
    def test_duality_fixes_O(self, F):
        assert certify_duality(F).passed

    def test_rationals(self):
        assert certify_duality(QQ, seed=5).passed


class TestGEquivariance:
    def test_translation_action_on_tangents_gf5(self):
        for a in range(5):
            for b in range(5):
                M = cayley.group_matrix(a, b, 1, F5)
                for u1, u2 in parameter_grid(F5):
                    v1, v2 = cayley.param_action(M, u1, u2, F5)
                    assert (v1, v2) == ((u1 + a) % 5, (u2 + 3 * a * u1 + b) % 5)
                    image = {
                        tuple(cayley.group_apply(M, x, F5))
                        for x in _line_points(osculating_tangent(u1, u2, F5).line, F5)
                    }
                    target = set(map(tuple, _line_points(osculating_tangent(v1, v2, F5).line, F5)))
                    assert image == target


def _line_points(l, F):
    return [x for x in enumerate_points(F) if incidence(x, l, F)]


class TestChartAndTransversal:
    def test_chart_origin(self):
        (t, s), e1, e2 = betten_chart(0, 0, QQ)
        assert (t, s) == (0, 0)
        assert e1 == (0, 0, 1, 0) and e2 == (0, 0, 0, 1)

    def test_chart_frozen(self):
        (t, s), e1, e2 = betten_chart(1, 3, QQ)
        assert (t, s) == (0, 1)
        assert e1 == (0, 1, -1, 0)  # x2 = 0*x0 + 1*x1
        assert e2 == (1, -3, 0, 3)  # x3 = -x0/3 + x1, cleared

    def test_chart_gf5(self):
        (t, s), _, _ = betten_chart(1, 0, F5)
        assert (t, s) == (4, 1)

    @given(small_fractions, small_fractions)
    @settings(max_examples=60)
    def test_chart_planes_cut_out_tangent_image(self, u1, u2):
        (t, s), e1, e2 = betten_chart(u1, u2, QQ)
        line = osculating_tangent(u1, u2, QQ).line
        for x in (line.p, line.q):
            ax = betten_collineation(x, QQ)
            assert point_in_plane(ax, e1, QQ) and point_in_plane(ax, e2, QQ)

    def test_chart_char3_refused(self):
        with pytest.raises(Char3Unsupported):
            betten_chart(0, 0, F3)

    def test_transversal_frozen(self):
        assert transversal_map((0, 1, 0, 0), QQ) == (1, 0, 0, 0)
        assert transversal_map((0, 1, 3, 1), QQ) == (1, 0, -2, -1)

    def test_transversal_injective_gf5(self):
        points = [x for x in enumerate_points(F5) if x[0] == 0 and x[1] != 0]
        assert len(points) == 25
        images = {transversal_map(x, F5) for x in points}
        assert len(images) == 25
        for y in images:
            assert y[1] == 0  # lands in V(X1)

    def test_transversal_point_really_on_the_tangent(self):
        x = (0, 1, 3, 1)  # u1 = 1, u2 = 1
        image = transversal_map(x, QQ)
        t = osculating_tangent(1, 1, QQ).line
        assert incidence(x, t, QQ) and incidence(image, t, QQ)

    def test_transversal_errors(self):
        with pytest.raises(PointOnGInf):
            transversal_map((0, 0, 1, 0), QQ)
        with pytest.raises(Char3Unsupported):
            transversal_map((0, 1, 0, 0), F3)


class TestReguli:
    def test_gf2_regulus(self):
        reg = regulus_minus(0, F2)
        assert len(reg) == 3
        ok, opposite = verify_regulus(reg, F2)
        assert ok
        assert cayley.generator(1, 0, F2) in opposite

    def test_gf5_all_parameters(self):
        all_lines = enumerate_lines(F5)
        O = set(build_O(F5))
        for s in range(5):
            reg = regulus_minus(s, F5)
            assert len(reg) == 6
            assert set(reg) <= O
            ok, opposite = verify_regulus(reg, F5, all_lines)
            assert ok and len(opposite) == 6
            assert cayley.generator(1, s, F5) in opposite

    def test_not_a_regulus_on_degenerate_input(self):
        with pytest.raises(NotARegulus):
            verify_regulus([cayley.g_infinity(F2)], F2)


class TestRegimeConsistency:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
    def test_joint_verdicts_match_regime(self, p):
        F = PrimeField(p)
        regime = classify_field(F)
        cert = certify_spread(F)
        assert cert.regime == regime
        is_partial = cert.partial_spread.passed
        covers = cert.covering.passed
        assert is_partial == (regime in (SpreadRegime.SPREAD_AND_COVERING, SpreadRegime.MAXIMAL_PARTIAL_NOT_COVERING))
        assert covers == (regime == SpreadRegime.SPREAD_AND_COVERING)
        if regime == SpreadRegime.CHAR3:
            assert cert.maximality.passed is None
        else:
            assert cert.maximality.passed
        assert cert.dual_spread.passed == is_partial
        assert cert.duality.passed

    def test_rationals(self):
        cert = certify_spread(QQ)
        assert cert.regime == SpreadRegime.MAXIMAL_PARTIAL_NOT_COVERING
        assert cert.partial_spread.passed
        assert not cert.covering.passed
        assert cert.covering.witness == (1, 0, 0, 2)
        assert cert.maximality.passed
        assert cert.dual_spread.passed is None

    def test_spread_partition_count_identity(self):
        for p in (2, 5, 11):
            q = p
            assert q**3 + q**2 + q + 1 == (q**2 + 1) * (q + 1)
