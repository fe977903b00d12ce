"""End-to-end acceptance: one test per shipped guarantee, so `pytest -v`
prints one pass/fail line for each.

Heavy extended runs (criterion 3) are skipped unless ABVARFQ_EXTENDED=1.
"""

import math
import multiprocessing
import os
import time

import pytest

from abvarfq.anglerank import angle_rank
from abvarfq.config import UNDECIDED
from abvarfq.extensions import are_twists, base_change, curve_counts, \
    jacobian_obstructions
from abvarfq.hondatate import decompose, endomorphism_degree, \
    is_geometrically_simple, is_simple, is_valid
from abvarfq.labels import decode_label, encode_label, label_of, poly_of
from abvarfq.newton import is_ordinary, is_supersingular, newton_polygon
from abvarfq.polarization import is_principally_polarizable
from abvarfq.stats import (density_moment, dipippo_howe_volume,
                           disc_identity_ok, extremes,
                           gaussian_moment_prediction, simple_extremes)
from abvarfq.weil import WeilPoly, enumerate_weil, enumerate_weil_b, \
    top_level_range, weil_from_b


def _census(g, q, jobs=None):
    """(total valid, ordinary valid) for dimension g over F_q, in parallel."""
    jobs = jobs or min(8, multiprocessing.cpu_count())
    lo, hi = top_level_range(g, q)
    if jobs <= 1:
        return _census_chunk((g, q, lo, hi))
    width = hi - lo + 1
    pieces = min(4 * jobs, width)
    bounds = [lo + (width * k) // pieces for k in range(pieces + 1)]
    tasks = [(g, q, bounds[k], bounds[k + 1] - 1) for k in range(pieces)]
    with multiprocessing.Pool(jobs) as pool:
        parts = pool.map(_census_chunk, tasks)
    return tuple(map(sum, zip(*parts)))


def _census_chunk(args):
    g, q, lo, hi = args
    total = ordinary = 0
    for b in enumerate_weil_b(g, q, b1_range=(lo, hi)):
        P = weil_from_b(g, q, b)
        if not is_valid(P):
            continue
        total += 1
        if is_ordinary(newton_polygon(P)):
            ordinary += 1
    return total, ordinary


def test_criterion_01_small_field_census():
    t0 = time.time()
    classes = [P for P in enumerate_weil(1, 2) if is_valid(P)]
    assert len(classes) == 5
    assert sum(is_ordinary(newton_polygon(P)) for P in classes) == 2
    assert sum(is_supersingular(newton_polygon(P)) for P in classes) == 3
    classes = [P for P in enumerate_weil(1, 4) if is_valid(P)]
    assert len(classes) == 9
    assert sum(is_ordinary(newton_polygon(P)) for P in classes) == 4
    assert sum(is_supersingular(newton_polygon(P)) for P in classes) == 5
    assert time.time() - t0 < 1.0


def test_criterion_02_large_census_g3_q25_and_g4_q5():
    assert _census(3, 25) == (332166, 284740)
    assert _census(4, 5) == (132839, 105600)


@pytest.mark.skipif(os.environ.get("ABVARFQ_EXTENDED") != "1",
                    reason="extended run; set ABVARFQ_EXTENDED=1")
def test_criterion_03_extended_census_g6_q2():
    assert _census(6, 2) == (164937, 74122)


def test_criterion_04_volume_predictions():
    assert round(dipippo_howe_volume(3, 25).value) == 355556
    assert round(dipippo_howe_volume(4, 5).value) == 130032
    assert round(dipippo_howe_volume(5, 3).value) == 256194
    assert round(dipippo_howe_volume(6, 2).value) == 144724


def test_criterion_05_label_roundtrips():
    for text in ["2.5.a_ab", "4.5.a_c_a_br", "4.2.ad_c_a_b", "3.2.ac_c_ad",
                 "3.8.ag_bk_aea", "3.3.aj_bk_add", "5.3.a_d_a_a_a",
                 "4.3.ab_c_ae_ac"]:
        g, q, a = decode_label(text)
        assert encode_label(g, q, a) == text
        assert label_of(poly_of(text)) == text


def test_criterion_06_extremes_g3_q3():
    t0 = time.time()
    classes = [P for P in enumerate_weil(3, 3) if is_valid(P)]
    mn, mins, mx, maxs, mirror = extremes(classes)
    assert mn == 1 and [label_of(P) for P in mins] == ["3.3.aj_bk_add"]
    assert mx == 343 and [label_of(P) for P in maxs] == ["3.3.j_bk_dd"]
    assert mirror  # P_max(T) = P_min(-T)
    assert are_twists(mins[0], maxs[0]) is True
    assert time.time() - t0 < 60


def test_criterion_07_negative_curve_count():
    P = poly_of("3.3.aj_bk_add")
    assert curve_counts(P)[0] == -5
    obs = jacobian_obstructions(P)
    assert any(o.kind == "negative_count" and o.r == 1 for o in obs)


def test_criterion_08_hypersymmetric_invariants():
    from fractions import Fraction
    from abvarfq.hondatate import endo_algebra
    P = poly_of("3.8.ag_bk_aea")
    fs = decompose(P)
    assert len(fs) == 1
    f = fs[0]
    assert f.h == (8, -2, 1) and f.e == 3 and f.center_disc == -28
    alg = endo_algebra(f.h, 8)
    assert sorted(pl.invariant for pl in alg.places) == \
        [Fraction(1, 3), Fraction(2, 3)]
    assert sorted(newton_polygon(P).slopes) == \
        [Fraction(1, 3)] * 3 + [Fraction(2, 3)] * 3


def test_criterion_09_polarization_verdicts():
    assert is_principally_polarizable(poly_of("2.5.ac_ab")).status == "no"
    assert is_principally_polarizable(poly_of("2.2.a_ad")).status == "yes"
    for q in (2, 3, 4, 5):
        for P in enumerate_weil(1, q):
            if is_valid(P):
                assert is_principally_polarizable(P).status == "yes"
    assert is_principally_polarizable(
        poly_of("4.5.ag_o_au_bj")).status == "unknown"


def test_criterion_10_angle_rank_sweep():
    t0 = time.time()
    ad = angle_rank(poly_of("4.3.ab_c_ae_ac"))
    assert ad.delta == 3 and ad.certified_stable

    for q in (2, 3, 4, 5):
        for g in (1, 2):
            for P in enumerate_weil(g, q):
                if is_valid(P) and is_supersingular(newton_polygon(P)):
                    assert angle_rank(P).delta == 0

    hits = misses = 0
    for q in (2, 3, 5):
        for P in enumerate_weil(2, q):
            if not (is_valid(P) and is_ordinary(newton_polygon(P))):
                continue
            if is_geometrically_simple(P) is not True:
                continue
            ad = angle_rank(P)
            if ad.delta == 2:
                hits += 1
            else:
                misses += 1
                # never wrong while claiming stability
                assert not ad.certified_stable, (P, ad)
    assert hits / (hits + misses) >= 0.95
    assert time.time() - t0 < 300


def test_criterion_11_moments():
    assert float(density_moment(3, 2)) == pytest.approx(1.7142, abs=1e-3)
    assert float(density_moment(3, 4)) == pytest.approx(8.6857, abs=1e-3)
    assert float(density_moment(3, 6)) == pytest.approx(71.7575, abs=1e-3)
    assert gaussian_moment_prediction(1.8461, 4) == \
        pytest.approx(10.2243, abs=1e-2)


def test_criterion_12_simple_extremes_g4_q3():
    classes = [P for P in enumerate_weil(4, 3) if is_valid(P)]
    mn, _, mx, _, _ = simple_extremes(classes)
    assert mn ** 0.25 == pytest.approx(1.495, abs=1e-3)
    assert mx ** 0.25 == pytest.approx(5.594, abs=1e-3)


def test_criterion_13_property_suites():
    # q = 1 oracle: every emitted polynomial is a product of cyclotomics
    from abvarfq.factor import cyclotomic_divisor_orders, factor_over_Z
    from abvarfq.factor import cyclotomic_polynomial
    for g in (1, 2, 3):
        for b in enumerate_weil_b(g, 1):
            P = weil_from_b(g, 1, b)
            for h, _ in factor_over_Z(P.coeffs):
                assert any(cyclotomic_polynomial(n) == list(h) or
                           tuple(cyclotomic_polynomial(n)) == tuple(h)
                           for n in cyclotomic_divisor_orders(h))

    # brute-force equivalence, discriminant identity, base-change agreement,
    # catenary, p-rank coverage, Madan-Pal, multiplicativity, and parallel
    # determinism run in their per-module suites; re-check the cheap cores
    got = {P.a_coeffs for P in enumerate_weil(1, 5)}
    want = {(a,) for a in range(-4, 5)
            if a * a <= 4 * 5}
    assert got == want

    for P in enumerate_weil(2, 9):
        assert disc_identity_ok(P)

    P = poly_of("2.3.ab_c")
    assert base_change(base_change(P, 2), 3).coeffs == base_change(P, 6).coeffs

    lo, hi = top_level_range(2, 5)
    mid = (lo + hi) // 2
    whole = list(enumerate_weil_b(2, 5))
    halves = list(enumerate_weil_b(2, 5, b1_range=(lo, mid))) + \
        list(enumerate_weil_b(2, 5, b1_range=(mid + 1, hi)))
    assert whole == halves


def test_criterion_14_endomorphism_degrees():
    assert endomorphism_degree(poly_of("1.2.a")) == 2
    assert endomorphism_degree(poly_of("1.2.ac")) == 4
    assert endomorphism_degree(poly_of("1.3.ad")) == 6
