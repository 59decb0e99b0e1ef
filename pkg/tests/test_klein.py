"""Klein images, cone forms, subspaces, variety equality, characteristic 3."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bwcayley import cayley
from bwcayley.bwspread import build_O, osculating_tangent, parameter_grid
from bwcayley.field import PrimeField, Rationals
from bwcayley.klein import (
    ProjectionDegenerate,
    WrongCharacteristic,
    char3_congruence_check,
    generator_cubic,
    gram_apply,
    h1_form,
    h2_form,
    h3_form,
    in_B,
    in_C,
    in_D,
    in_kappa_O,
    k_form,
    kappa,
    kappa_osculating,
    on_variety,
    osculating_plane_pencil_check,
    pencil_LZomega,
    pencil_line,
    project_through_Cperp,
    twisted_cubic_basis,
    variety_qd_points,
    verify_variety_equality,
    w_infinity,
    w_vector,
)
from bwcayley.projspace import canonicalize, enumerate_lines, lines_skew

QQ = Rationals()
F2, F3, F5 = (PrimeField(p) for p in (2, 3, 5))

small_fractions = st.fractions(min_value=-12, max_value=12, max_denominator=9)


class TestKappa:
    def test_directrix(self):
        assert kappa(cayley.g_infinity(F5)) == (0, 0, 0, 0, 0, 1)

    def test_generator(self):
        assert kappa(cayley.generator(1, 1, QQ)) == tuple(map(Fraction, (0, 1, 1, 1, 1, 1)))

    def test_osculating(self):
        assert kappa(osculating_tangent(1, 1, QQ).line) == tuple(map(Fraction, (1, 3, 1, 2, 1, 1)))


class TestKappaOsculating:
    def test_origin(self):
        assert kappa_osculating(0, 0, QQ) == tuple(map(Fraction, (1, 0, 0, 0, 0, 0)))

    def test_frozen_rational(self):
        y = kappa_osculating(1, 0, QQ)
        assert y == tuple(map(Fraction, (1, 3, 0, 3, 1, 3)))
        assert on_variety(y, QQ)

    def test_frozen_char3(self):
        y = kappa_osculating(1, 1, F3)
        assert y == (1, 0, 1, 2, 1, 1)
        assert in_D(y, F3) and k_form(y, F3) == 0

    @pytest.mark.parametrize("F", [F2, F3, F5, PrimeField(7)])
    def test_matches_line_image_exhaustive(self, F):
        for u1, u2 in parameter_grid(F):
            assert kappa_osculating(u1, u2, F) == kappa(osculating_tangent(u1, u2, F).line)

    @given(small_fractions, small_fractions)
    @settings(max_examples=80)
    def test_matches_line_image_rational(self, u1, u2):
        assert kappa_osculating(u1, u2, QQ) == kappa(osculating_tangent(u1, u2, QQ).line)

    @pytest.mark.parametrize("F", [F2, F5, PrimeField(7)])
    def test_forms_vanish_exhaustive(self, F):
        for u1, u2 in parameter_grid(F):
            assert on_variety(kappa_osculating(u1, u2, F), F)

    def test_forms_vanish_random_rational(self):
        rng = random.Random(11)
        for _ in range(200):
            u1 = Fraction(rng.randint(-40, 40), rng.randint(1, 25))
            u2 = Fraction(rng.randint(-40, 40), rng.randint(1, 25))
            assert on_variety(kappa_osculating(u1, u2, QQ), QQ)


class TestTwistedCubic:
    def test_basis_points(self):
        assert generator_cubic(1, 0, QQ) == tuple(map(Fraction, (0, 1, 0, 0, 0, 0)))
        assert generator_cubic(0, 1, QQ) == tuple(map(Fraction, (0, 0, 0, 0, 0, 1)))
        assert generator_cubic(1, 1, QQ) == tuple(map(Fraction, (0, 1, 1, 1, 1, 1)))

    def test_basis_reconstruction(self):
        v0, v1, v2, v3 = twisted_cubic_basis(QQ)
        s0, s1 = Fraction(2), Fraction(3)
        combo = [
            s0**3 * a + s0**2 * s1 * b + s0 * s1**2 * c + s1**3 * d
            for a, b, c, d in zip(v0, v1, v2, v3)
        ]
        assert canonicalize(combo, QQ) == generator_cubic(s0, s1, QQ)

    def test_images_in_C_on_quadric(self):
        for s in range(5):
            y = generator_cubic(1, s, F5)
            assert in_C(y, F5) and k_form(y, F5) == 0
        y = generator_cubic(0, 1, F5)
        assert in_C(y, F5) and k_form(y, F5) == 0

    def test_cone_with_vertex_w_infinity(self):
        # joining any generator image with the vertex stays in C and on Q
        winf = w_infinity(F5)
        for s in list(range(5)):
            y = generator_cubic(1, s, F5)
            for lam in range(5):
                joined = tuple((yi + lam * wi) % 5 for yi, wi in zip(y, winf))
                assert in_C(joined, F5)
                assert k_form(joined, F5) == 0


class TestPolarLineOfC:
    def test_meets_quadric_only_at_vertex_odd_char(self):
        # points a*w + b*w_inf: the quadric value is -a^2
        for F in (F3, F5):
            w = w_vector(F)
            winf = w_infinity(F)
            for a in F.elements():
                for b in F.elements():
                    if a == 0 and b == 0:
                        continue
                    y = tuple(F.add(F.mul(a, x), F.mul(b, z)) for x, z in zip(w, winf))
                    on_q = k_form(y, F) == 0
                    assert on_q == (a == 0)

    def test_contained_in_C_exactly_in_char2(self):
        assert in_C(w_vector(F2), F2)
        assert not in_C(w_vector(F3), F3)
        assert not in_C(w_vector(F5), F5)
        assert in_C(w_infinity(F2), F2)


class TestPencil:
    def test_directrix_in_pencil(self):
        assert cayley.g_infinity(F3) in pencil_LZomega(F3)

    def test_gf3_count(self):
        assert len(pencil_LZomega(F3)) == 4

    def test_klein_image_of_axis_line(self):
        l = pencil_line(1, 0, F5)
        assert kappa(l) == (0, 0, 0, 0, 1, 0)

    def test_images_span_expected_line(self):
        for l in pencil_LZomega(F5):
            y = kappa(l)
            assert y[0] == 0 and y[1] == 0 and y[2] == 0 and y[3] == 0


class TestProjection:
    def test_u2_independence(self):
        assert project_through_Cperp(kappa_osculating(0, 5, QQ), QQ) == tuple(
            map(Fraction, (1, 0, 0, 0, 0, 0))
        )
        a = project_through_Cperp(kappa_osculating(1, 1, QQ), QQ)
        b = project_through_Cperp(kappa_osculating(1, 7, QQ), QQ)
        assert a == b == tuple(map(Fraction, (1, 3, 0, 3, 1, 0)))

    def test_lands_in_B(self):
        for u1 in range(5):
            for u2 in range(5):
                y = project_through_Cperp(kappa_osculating(u1, u2, F5), F5)
                assert in_B(y, F5)

    def test_degenerate_on_polar_line(self):
        with pytest.raises(ProjectionDegenerate):
            project_through_Cperp(w_infinity(QQ), QQ)
        with pytest.raises(ProjectionDegenerate):
            project_through_Cperp(w_vector(QQ), QQ)


class TestVarietyEquality:
    @pytest.mark.parametrize("p,expected", [(2, 7), (5, 31), (7, 57), (11, 133), (13, 183)])
    def test_equality_and_count(self, p, expected):
        r = verify_variety_equality(PrimeField(p))
        assert r.passed
        assert r.counts["zero_set_points"] == expected == p * p + p + 1

    def test_threads_give_same_answer(self):
        single = verify_variety_equality(F5, threads=1)
        multi = verify_variety_equality(F5, threads=4)
        assert single.passed and multi.passed
        assert single.counts == multi.counts

    def test_char3_rejected(self):
        with pytest.raises(WrongCharacteristic):
            verify_variety_equality(F3)

    def test_j_is_a_cone_with_vertex_polar_line(self):
        # adding any combination of w and w_inf to a variety point keeps
        # h1, h2, h3 zero (the quadric may move)
        rng = random.Random(5)
        w = w_vector(QQ)
        winf = w_infinity(QQ)
        for _ in range(50):
            u1 = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            u2 = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            y = kappa_osculating(u1, u2, QQ)
            a = Fraction(rng.randint(-9, 9))
            b = Fraction(rng.randint(-9, 9))
            moved = tuple(yi + a * wi + b * zi for yi, wi, zi in zip(y, w, winf))
            assert h1_form(moved, QQ) == 0
            assert h2_form(moved, QQ) == 0
            assert h3_form(moved, QQ) == 0


class TestMembership:
    def test_pencil_interior_point_not_a_tangent_image(self):
        assert not in_kappa_O((0, 0, 0, 0, 1, 0), QQ)

    def test_directrix_image_is(self):
        assert in_kappa_O(w_infinity(QQ), QQ)

    @given(small_fractions, small_fractions)
    @settings(max_examples=40)
    def test_tangent_images_are(self, u1, u2):
        assert in_kappa_O(kappa_osculating(u1, u2, QQ), QQ)


class TestChar3:
    def test_congruence(self):
        r = char3_congruence_check(F3)
        assert r.passed
        assert r.counts["congruence_lines"] == 13
        assert r.counts["tangents_plus_pencil"] == 13
        assert r.counts["cone_section_points"] == 13

    def test_kappa_of_nuclei_line_is_cone_vertex(self):
        assert kappa(cayley.nuclei_line(F3)) == (0, 0, 0, 0, 1, 0)
        vertex = (0, 0, 0, 0, 1, 0)
        assert in_D(vertex, F3) and k_form(vertex, F3) == 0

    def test_every_congruence_line_meets_nuclei_line(self):
        n = cayley.nuclei_line(F3)
        congruence = [l for l in enumerate_lines(F3) if in_D(l.plucker, F3)]
        assert len(congruence) == 13
        for l in congruence:
            assert not lines_skew(l, n, F3)

    def test_images_exhaust_cone_section(self):
        points = variety_qd_points(F3)
        images = {l.plucker for l in build_O(F3)} | {l.plucker for l in pencil_LZomega(F3)}
        assert points == images

    def test_osculating_plane_pencil(self):
        assert osculating_plane_pencil_check(F3).passed

    def test_axis_is_polar_of_D(self):
        # independent route: apply the Gram matrix to D's linear forms
        d_eq = [(0, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0)]
        polar = [gram_apply(row, F3) for row in d_eq]
        polar_canon = {canonicalize(v, F3) for v in polar}
        _, v1, v2, _ = twisted_cubic_basis(F3)
        assert polar_canon == {canonicalize(v1, F3), canonicalize(v2, F3)}

    def test_wrong_characteristic_rejected(self):
        with pytest.raises(WrongCharacteristic):
            char3_congruence_check(F5)
        with pytest.raises(WrongCharacteristic):
            osculating_plane_pencil_check(F5)
