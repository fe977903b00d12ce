"""Label codec: base-26 encoding, round trips, and malformed-input errors."""

import random

import pytest

from abvarfq.labels import (LabelError, decode_int, decode_label, encode_int,
                            encode_label, label_of, poly_of)
from abvarfq.weil import WeilPoly

PAPER_LABELS = [
    "2.5.a_ab", "4.5.a_c_a_br", "4.2.ad_c_a_b", "3.2.ac_c_ad",
    "3.8.ag_bk_aea", "3.3.aj_bk_add", "5.3.a_d_a_a_a", "4.3.ab_c_ae_ac",
]


def test_paper_label_roundtrips():
    for text in PAPER_LABELS:
        g, q, a = decode_label(text)
        assert encode_label(g, q, a) == text
        P = poly_of(text)
        assert label_of(P) == text


def test_documented_encodings():
    assert encode_label(2, 5, [0, -1]) == "2.5.a_ab"
    assert encode_label(4, 5, [0, 2, 0, 43]) == "4.5.a_c_a_br"
    assert decode_label("4.2.ad_c_a_b") == (4, 2, [-3, 2, 0, 1])
    assert decode_label("3.3.aj_bk_add") == (3, 3, [-9, 36, -81])


def test_int_roundtrip_random():
    rng = random.Random(1729)
    for _ in range(10_000):
        n = rng.randint(-(26 ** 4), 26 ** 4)
        assert decode_int(encode_int(n)) == n


def test_zero_and_small():
    assert encode_int(0) == "a"
    assert encode_int(-1) == "ab"
    assert encode_int(43) == "br"
    assert encode_int(-83) == "adf"


def test_malformed_labels_report_position():
    for bad in ["", "3.3", "x.3.a", "3.6.a_a_a", "3.3.a_a", "3.3.a_a_a_a",
                "2.3.aa_b", "2.3.A_b", "2.3._b", "1.3.a!"]:
        with pytest.raises((LabelError, ValueError)) as exc:
            decode_label(bad)
        if isinstance(exc.value, LabelError):
            assert 0 <= exc.value.pos <= len(bad)


def test_leading_zero_digit_rejected():
    with pytest.raises(LabelError):
        decode_int("aab")   # negative with leading zero in magnitude


def test_label_of_matches_from_a():
    P = WeilPoly.from_a(2, 3, [-2, 5])
    assert poly_of(label_of(P)).coeffs == P.coeffs
