"""Point counts over extensions, Jacobian obstructions, base change,
primitivity, and twist detection."""

import random
from fractions import Fraction

import pytest

from abvarfq.config import UNDECIDED
from abvarfq.extensions import (abvar_count, are_twists, base_change,
                                curve_counts, is_primitive,
                                jacobian_obstructions, twist_candidates,
                                twist_classes)
from abvarfq.hondatate import is_valid
from abvarfq.labels import label_of, poly_of
from abvarfq.weil import WeilPoly, enumerate_weil

rng = random.Random(414213)


def test_abvar_count_is_pi_minus_one_norm():
    # #A(F_q) = P(1) exactly
    for P in enumerate_weil(2, 3):
        assert abvar_count(P, 1) == sum(P.coeffs)


def test_count_multiplicativity():
    """#(A1 x A2)(F_{q^r}) = #A1 * #A2: the product class has the product
    polynomial."""
    pool = list(enumerate_weil(1, 3)) + list(enumerate_weil(2, 3))
    for _ in range(20):
        P1, P2 = rng.choice(pool), rng.choice(pool)
        prod = [0] * (len(P1.coeffs) + len(P2.coeffs) - 1)
        for i, a in enumerate(P1.coeffs):
            for j, b in enumerate(P2.coeffs):
                prod[i + j] += a * b
        P12 = WeilPoly(P1.g + P2.g, 3, prod)
        for r in (1, 2, 3):
            assert abvar_count(P12, r) == abvar_count(P1, r) * abvar_count(P2, r)


def test_curve_counts_example_and_obstruction():
    P = poly_of("3.3.aj_bk_add")
    c = curve_counts(P)
    assert c[0] == -5
    obs = jacobian_obstructions(P)
    assert any(o.kind == "negative_count" and o.r == 1 for o in obs)


def test_no_obstruction_for_honest_curves():
    # 1.2.ab is the curve y^2 + xy = x^3 + 1 class (an elliptic curve exists)
    assert jacobian_obstructions(poly_of("1.2.ab")) == []
    # 2.2.a_ad has an obstruction (paper example)
    assert jacobian_obstructions(poly_of("2.2.a_ad"))


def test_monotonicity_holds_without_obstruction():
    sample = [P for P in enumerate_weil(2, 3) if is_valid(P)]
    rng.shuffle(sample)
    for P in sample[:25]:
        c = curve_counts(P, 12)
        if not jacobian_obstructions(P, 12):
            for n in range(1, 7):
                for m in range(2, 12 // n + 1):
                    assert c[m * n - 1] >= c[n - 1]


def test_base_change_composes():
    for P in list(enumerate_weil(2, 2))[::7]:
        for r in (2, 3):
            for s in (2, 3):
                assert base_change(base_change(P, r), s).coeffs == \
                    base_change(P, r * s).coeffs


def test_base_change_power_sums():
    # s_n of the base change by r equals s_{rn} of the original
    from abvarfq.extensions import frobenius_power_sums
    P = poly_of("3.2.ac_c_ad")
    B = base_change(P, 3)
    assert frobenius_power_sums(B, 4) == \
        [frobenius_power_sums(P, 12)[3 * n - 1] for n in range(1, 5)]


def test_primitivity():
    classes_f2 = list(enumerate_weil(1, 2))
    subfields = {1: classes_f2}
    prim_count = 0
    for P in enumerate_weil(1, 4):
        prim, models = is_primitive(P, subfields)
        if prim:
            prim_count += 1
        else:
            assert all(base_change(m, 2).coeffs == P.coeffs for m in models)
    assert 0 < prim_count < 9


def test_twists_paper_example():
    P = poly_of("3.8.ag_bk_aea")
    Q = poly_of("3.8.g_bk_ea")
    assert are_twists(P, Q) is True
    assert are_twists(P, P) is True
    assert twist_candidates(P, P) == 1


def test_twist_invariance_of_slopes():
    from abvarfq.newton import newton_polygon
    classes = [P for P in enumerate_weil(2, 3) if is_valid(P)]
    for orbit in twist_classes(classes):
        slopes = {tuple(sorted(newton_polygon(P).slopes)) for P in orbit}
        assert len(slopes) == 1


def test_twist_classes_partition():
    classes = [P for P in enumerate_weil(2, 2) if is_valid(P)]
    orbits = twist_classes(classes)
    flat = [P for orbit in orbits for P in orbit]
    assert sorted(P.coeffs for P in flat) == \
        sorted(P.coeffs for P in classes)
    # non-twists stay separated: ordinary vs supersingular never mix
    from abvarfq.newton import is_supersingular, newton_polygon
    for orbit in orbits:
        flags = {is_supersingular(newton_polygon(P)) for P in orbit}
        assert len(flags) == 1
