"""Principal polarizability: the decision cascade's verdicts and rules."""

import pytest

from abvarfq.hondatate import is_valid
from abvarfq.labels import poly_of
from abvarfq.polarization import (NO, UNKNOWN, YES, PPVerdict,
                                  is_principally_polarizable)
from abvarfq.weil import enumerate_weil


def test_paper_verdicts():
    assert is_principally_polarizable(poly_of("2.5.ac_ab")).status == NO
    assert is_principally_polarizable(poly_of("2.2.a_ad")).status == YES
    assert is_principally_polarizable(poly_of("4.5.ag_o_au_bj")).status == UNKNOWN


def test_all_g1_yes():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for P in enumerate_weil(1, q):
            if is_valid(P):
                v = is_principally_polarizable(P)
                assert v.status == YES and v.rule == "g1"


def test_g2_always_definitive():
    for q in (2, 3, 5):
        for P in enumerate_weil(2, q):
            if is_valid(P):
                assert is_principally_polarizable(P).status in (YES, NO)


def test_simple_odd_g_yes():
    from abvarfq.hondatate import is_simple
    for P in enumerate_weil(3, 2):
        if is_simple(P):
            assert is_principally_polarizable(P).status == YES


def test_verdict_consistency():
    assert PPVerdict(UNKNOWN, "none").status == UNKNOWN
    with pytest.raises(AssertionError):
        PPVerdict(YES, "none")


def test_invalid_class_rejected():
    from abvarfq.hondatate import decompose, INVALID
    bad = [P for P in enumerate_weil(2, 4) if decompose(P) is INVALID]
    assert bad
    with pytest.raises(ValueError):
        is_principally_polarizable(bad[0])
