"""Numerical angle rank: goldens, supersingular degeneracy, and the
stability certificate's honesty."""

from fractions import Fraction

import pytest

from abvarfq.anglerank import angle_rank, integer_relations, lll_reduce
from abvarfq.config import UNDECIDED
from abvarfq.hondatate import is_valid
from abvarfq.labels import poly_of
from abvarfq.newton import is_supersingular, newton_polygon
from abvarfq.weil import enumerate_weil


def test_paper_golden():
    ad = angle_rank(poly_of("4.3.ab_c_ae_ac"))
    assert ad.delta == 3 and ad.certified_stable


def test_supersingular_rank_zero():
    for q in (2, 3, 4, 5):
        for g in (1, 2):
            for P in enumerate_weil(g, q):
                if is_valid(P) and is_supersingular(newton_polygon(P)):
                    ad = angle_rank(P)
                    assert ad.delta == 0, (P, ad)


def test_elliptic_ordinary_rank_one():
    for P in enumerate_weil(1, 5):
        if not is_supersingular(newton_polygon(P)):
            assert angle_rank(P).delta == 1


def test_lll_finds_short_vector():
    # lattice with an obvious short vector (1, -1, 0)
    basis = [[101, 100, 0], [100, 101, 0], [0, 0, 7]]
    red = lll_reduce(basis)
    norms = sorted(sum(x * x for x in v) for v in red)
    assert norms[0] <= 7 * 7


def test_relations_detect_rational_angles():
    import mpmath
    with mpmath.workdps(80):
        # t = 1/3 and t = 1/6: two independent relations among (t1, t2, 1)
        vals = [mpmath.mpf(1) / 3, mpmath.mpf(1) / 6]
        rels = integer_relations(vals, 60)
        assert len(rels) == 2
        for c in rels:
            assert abs(c[0] * Fraction(1, 3) + c[1] * Fraction(1, 6) + c[2]) == 0


def test_repeated_roots_handled():
    # (T + 2)^2 over F_4: a double real root must not break convergence
    from abvarfq.weil import WeilPoly
    P = WeilPoly.from_a(1, 4, [4])
    ad = angle_rank(P)
    assert ad.delta == 0 and ad.certified_stable
