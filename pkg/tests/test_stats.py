"""Volume predictions, density models, moments, discriminant identities,
extremes, fits, and coverage tables."""

import math
from fractions import Fraction

import pytest

from abvarfq.hondatate import is_valid
from abvarfq.labels import label_of
from abvarfq.stats import (DensityModel, VolumePrediction, density_moment,
                           dipippo_howe_volume, disc_histogram,
                           disc_identity_ok, empirical_error_distribution,
                           extremes, gaussian_moment_prediction, histogram,
                           loglog_fit, newton_stratum_ratio,
                           normalized_errors, normalized_rd, prank_coverage,
                           rank_prank_exclusions, simple_extremes)
from abvarfq.weil import enumerate_weil


# ---------------------------------------------------------------------------
# volumes
# ---------------------------------------------------------------------------

def test_volume_predictions():
    assert round(dipippo_howe_volume(3, 25).value) == 355556
    assert round(dipippo_howe_volume(4, 5).value) == 130032
    assert round(dipippo_howe_volume(5, 3).value) == 256194
    assert round(dipippo_howe_volume(6, 2).value) == 144724
    assert round(dipippo_howe_volume(1, 4).value) == 8


def test_volume_rational_part_exact():
    # g=2: (2^2/2!) (2/1)^2 (4/3)^1 = 32/3
    assert dipippo_howe_volume(2, 3).rational == Fraction(32, 3)
    # g=1: 2/1! * (2/1)^1 = 4
    assert dipippo_howe_volume(1, 9).rational == 4
    # ordinary multiplier phi(q)/q
    v = dipippo_howe_volume(1, 9)
    assert v.ordinary == pytest.approx(v.value * 2 / 3)


def test_volume_matches_actual_counts_small():
    # |actual/predicted - 1| < 0.12 at desk scale
    actual = sum(1 for P in enumerate_weil(3, 3) if is_valid(P))
    pred = dipippo_howe_volume(3, 3).value
    assert abs(actual / pred - 1) < 0.12


# ---------------------------------------------------------------------------
# density model
# ---------------------------------------------------------------------------

def test_densities_normalize_exactly():
    for g in (1, 2, 3, 4):
        assert DensityModel(g).moment(0) == 1


def test_density_even_and_supported():
    for g in (1, 2, 3, 4):
        m = DensityModel(g)
        for x in (0.3, 1.1, 2.7, 2 * g - 0.1):
            assert m.value(x) == pytest.approx(m.value(-x))
        assert m.value(2 * g + 0.5) == 0.0


def test_outer_piece_power():
    """On the outermost piece f_g is proportional to
    (2g - |x|)^((g-1)(g+2)/2)."""
    for g in (2, 3, 4):
        m = DensityModel(g)
        k = (g - 1) * (g + 2) // 2
        x1, x2 = 2 * g - 0.5, 2 * g - 0.25
        ratio = m.value(x1) / m.value(x2)
        assert ratio == pytest.approx((0.5 / 0.25) ** k, rel=1e-9)


def test_known_values():
    assert DensityModel(1).value(1.0) == 0.25
    assert DensityModel(2).value(0.0) == pytest.approx(3 / 8)
    assert density_moment(1, 2) == Fraction(4, 3)


def test_moment_goldens():
    assert float(density_moment(3, 2)) == pytest.approx(1.7142, abs=1e-3)
    assert float(density_moment(3, 4)) == pytest.approx(8.6857, abs=1e-3)
    assert float(density_moment(3, 6)) == pytest.approx(71.7575, abs=1e-3)
    assert float(density_moment(4, 2)) == pytest.approx(1.7777, abs=1e-3)
    assert density_moment(3, 3) == 0


def test_monte_carlo_moments_match_table():
    for g, want in [(5, 1.8181), (6, 1.8461)]:
        est, se = DensityModel(g, mc_samples=400_000).moment(2)
        assert abs(est - want) < max(3 * se, 1e-2), (g, est, se)


def test_monte_carlo_kde_normalizes():
    m = DensityModel(5, mc_samples=60_000)
    xs = [k * 0.25 - 10 for k in range(81)]
    integral = sum(m.value(x) for x in xs) * 0.25
    assert abs(integral - 1) < 0.05


def test_gaussian_moment_prediction():
    assert gaussian_moment_prediction(2, 4) == 12
    assert gaussian_moment_prediction(1.8461, 4) == pytest.approx(10.2243, abs=1e-2)
    assert gaussian_moment_prediction(1.8461, 6) == pytest.approx(94.375, abs=1e-1)


# ---------------------------------------------------------------------------
# empirical errors
# ---------------------------------------------------------------------------

def test_error_values_g1_q2():
    # P(1) = 3 + a1 for a1 in -2..2, so E = (1 + a1)/sqrt(2)
    E = sorted(normalized_errors(list(enumerate_weil(1, 2))))
    s = math.sqrt(2)
    want = sorted([(1 + a) / s for a in range(-2, 3)])
    assert E == pytest.approx(want)


def test_error_support_weil_bound():
    # |P(1) - q^g| <= (1 + sqrt q)^{2g} - q^g exactly (all roots on |T|=sqrt q)
    q, g = 3, 2
    bound = ((1 + math.sqrt(q)) ** (2 * g) - q ** g) / q ** (g - 0.5)
    for P in enumerate_weil(g, q):
        (e,) = normalized_errors([P])
        assert abs(e) <= bound + 1e-9


def test_ks_distance_reported():
    classes = [P for P in enumerate_weil(3, 3) if is_valid(P)]
    hist, ks = empirical_error_distribution(classes, bins=20)
    assert sum(c for _, _, c in hist) == len(classes)
    assert 0 <= ks <= 1


# ---------------------------------------------------------------------------
# extremes / fits / coverage
# ---------------------------------------------------------------------------

def test_extremes_g3_q2():
    classes = [P for P in enumerate_weil(3, 2) if is_valid(P)]
    mn, mins, mx, maxs, _ = extremes(classes)
    assert len(mins) == 7 and len(maxs) == 1


def test_simple_extremes_g3_q5():
    classes = [P for P in enumerate_weil(3, 5) if is_valid(P)]
    mn, mins, mx, maxs, _ = simple_extremes(classes)
    assert mn == 25 and mx == 631


def test_loglog_fit_g1():
    pts = []
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27):
        pts.append((q, sum(1 for P in enumerate_weil(1, q) if is_valid(P))))
    fit = loglog_fit(pts)
    assert abs(fit.a - 0.4971) < 0.05
    assert abs(fit.b - 1.3717) < 0.05


def test_newton_stratum_ratio_bounds():
    from abvarfq.newton import supersingular_polygon
    classes = [P for P in enumerate_weil(2, 3) if is_valid(P)]
    r = newton_stratum_ratio(classes, supersingular_polygon(2))
    assert r < 0  # a proper stratum is a vanishing fraction


def test_prank_coverage_and_exclusions():
    classes = [P for P in enumerate_weil(2, 3) if is_valid(P)]
    cov = prank_coverage(classes)
    assert cov == {0: True, 1: True, 2: True}
    table = rank_prank_exclusions([(2, 0), (2, 1), (2, 2), (1, 2)], 2)
    assert table == {1: [0, 1], 2: []}


# ---------------------------------------------------------------------------
# discriminants
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("g,q", [(1, 2), (1, 9), (2, 4), (2, 5),
                                 (2, 9), (3, 2), (3, 7), (3, 9)])
def test_discriminant_identity(g, q):
    for P in enumerate_weil(g, q):
        assert disc_identity_ok(P)


def test_normalized_rd_bounded():
    classes = [P for P in enumerate_weil(2, 3) if is_valid(P)]
    for P in classes:
        assert 0 <= normalized_rd(P) <= 1 + 1e-12
    hist = disc_histogram(classes, bins=10)
    assert sum(c for _, _, c in hist) == len(classes)


def test_histogram_edges():
    # half-open bins [lo, hi) with the top edge folded into the last bin
    h = histogram([0.0, 0.5, 1.0], 2, 0.0, 1.0)
    assert [c for _, _, c in h] == [1, 2]
