"""Harder shapes than the acceptance grid: asymmetric normal ideals,
principal ideals in extra variables, rank-5 cones, cones with lineality,
and randomized normal ideals obtained as integral closures."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from reesmult.ideals import (
    integral_closure,
    is_normal,
    jumping_numbers,
    lct,
    minimalize,
    newton,
)
from reesmult.polyhedra import Cone, dual_cone
from reesmult.rees import (
    canonical_module,
    extended_rees_cone,
    multiplier_module_general,
    multiplier_module_principal,
    verify_theoremA,
    verify_theoremB_S,
    verify_theoremB_T,
)

from test_ideals import independent_jump_scan

# normal, with two slanted Newton facets (X+2Y >= 3 and X+Y >= 2)
ASYM = minimalize([(3, 0), (1, 1), (0, 2)])


class TestAsymmetricNormalIdeal:
    def test_cone_has_two_slanted_facets(self):
        assert extended_rees_cone(ASYM).cone.constraints == (
            ((0, 1, 0), 0), ((1, 0, 0), 0), ((1, 1, -2), 0), ((1, 2, -3), 0),
        )

    def test_decompositions(self):
        for lam in (0, Fraction(1, 2), Fraction(2, 3), Fraction(5, 4)):
            assert verify_theoremB_T(ASYM, lam, (-3, 5)).overall
            assert verify_theoremB_S(ASYM, lam, (0, 4)).overall
            assert verify_theoremA(ASYM, lam).overall

    def test_lct_and_jumps(self):
        assert lct(ASYM) == 1
        report = jumping_numbers(ASYM, 2)
        assert list(report.jumps) == independent_jump_scan(ASYM, 2, report.box)
        assert report.jumps == (
            Fraction(1), Fraction(4, 3), Fraction(3, 2), Fraction(5, 3), Fraction(2),
        )


class TestPrincipalIdeals:
    def test_x2y_in_two_vars(self):
        a = minimalize([(2, 1)])
        assert is_normal(a)
        assert verify_theoremB_T(a, Fraction(1, 2), (-2, 4)).overall
        assert verify_theoremB_S(a, Fraction(1, 2), (0, 3)).overall

    def test_variable_missing_from_ideal(self):
        a = minimalize([(1, 0, 0)])
        assert verify_theoremB_T(a, Fraction(2, 3), (-2, 4)).overall
        assert verify_theoremA(a, Fraction(2, 3)).overall

    def test_principal_cone_shape(self):
        # T-cone of (x^2 y) keeps both the coordinate and graded rows
        alg = extended_rees_cone(minimalize([(2, 1, 0)]))
        assert alg.cone.constraints == (
            ((0, 0, 1, 0), 0),
            ((0, 1, 0, -1), 0),
            ((0, 1, 0, 0), 0),
            ((1, 0, 0, -2), 0),
            ((1, 0, 0, 0), 0),
        )


class TestFourVariables:
    def test_maximal_ideal(self):
        m4 = minimalize(
            [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
        )
        assert verify_theoremB_T(m4, Fraction(1, 2), (-2, 3)).overall
        assert lct(m4) == 4

    def test_squared_maximal(self):
        gens = [
            tuple(sum(1 for x in combo if x == i) for i in range(4))
            for combo in itertools.combinations_with_replacement(range(4), 2)
        ]
        m42 = minimalize(gens)
        assert verify_theoremB_T(m42, Fraction(1, 2), (-2, 3)).overall
        assert verify_theoremB_S(m42, Fraction(1, 2), (0, 2)).overall


class TestLinealityPaths:
    def test_dual_of_halfplane(self):
        d = dual_cone(Cone(2, ((1, 0), (0, 1), (0, -1))))
        assert d.rays == ((1, 0),)
        assert [h.normal for h in d.facets] == [(0, -1), (0, 1), (1, 0)]

    def test_unit_ideal_graded_newton(self):
        # the extended cone of the unit ideal has a free t-coordinate;
        # t^-1 is a unit there, so its multiplier module is canonical
        unit = minimalize([(0, 0)])
        alg = extended_rees_cone(unit)
        u = alg.t_inverse()
        for lam in (0, Fraction(1, 2), 3):
            general = multiplier_module_general(alg, (u,), lam)
            principal = multiplier_module_principal(alg, u, lam)
            assert general.system == principal.system == canonical_module(alg).system


class TestModelIdealBridge:
    """Each local model is the extended Rees cone of a principal monomial
    ideal; the graded decomposition must verify on that ideal too."""

    def test_principal_ideals_of_models(self):
        cases = [
            ((1,), 1),       # xy = s
            ((3,), 1),       # xy = s^3
            ((2, 3), 2),     # xy = s1^2 s2^3
            ((1, 2), 3),     # xy = s1 s2^2 in three s-variables
        ]
        for exps, nvars in cases:
            gen = tuple(exps) + (0,) * (nvars - len(exps))
            a = minimalize([gen], nvars)
            for lam in (0, Fraction(1, 2), Fraction(5, 6), 1):
                assert verify_theoremB_T(a, lam, (-3, 4)).overall, (a, lam)


class TestRandomNormalClosures:
    def test_decompositions_hold(self):
        # integral closures of 2-variable monomial ideals are normal
        rng = random.Random(314159)
        checked = 0
        while checked < 10:
            raw = minimalize(
                [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(2, 4))]
            )
            a = integral_closure(raw)
            if a.is_unit:
                continue
            assert is_normal(a)
            checked += 1
            lam = Fraction(rng.randint(0, 9), rng.randint(1, 6))
            assert verify_theoremB_T(a, lam, (-3, 5)).overall, (a, lam)
            assert verify_theoremB_S(a, lam, (0, 4)).overall, (a, lam)
            assert verify_theoremA(a, lam).overall, (a, lam)

    def test_closure_facet_count_varies(self):
        # make sure the sweep above actually hits multi-facet shapes
        rng = random.Random(314159)
        slanted_counts = set()
        for _ in range(20):
            raw = minimalize(
                [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(rng.randint(2, 4))]
            )
            a = integral_closure(raw)
            if a.is_unit:
                continue
            slanted_counts.add(
                sum(1 for h in newton(a).facets if h.threshold > 0)
            )
        assert any(c >= 2 for c in slanted_counts)
