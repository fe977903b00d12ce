"""Isogeny classes of abelian varieties over finite fields: enumeration and invariants."""

from .weil import WeilPoly, enumerate_weil, is_weil_polynomial
from .newton import newton_polygon, p_rank
from .hondatate import decompose, is_simple, is_valid
from .labels import decode_label, encode_label, label_of, poly_of
from .extensions import abvar_count, base_change, curve_counts
from .polarization import is_principally_polarizable
from .anglerank import angle_rank
from .records import IsogenyClassRecord, build_record, enumerate_records

__version__ = "0.1.0"

__all__ = [
    "WeilPoly", "enumerate_weil", "is_weil_polynomial",
    "newton_polygon", "p_rank",
    "decompose", "is_simple", "is_valid",
    "decode_label", "encode_label", "label_of", "poly_of",
    "abvar_count", "base_change", "curve_counts",
    "is_principally_polarizable", "angle_rank",
    "IsogenyClassRecord", "build_record", "enumerate_records",
    "__version__",
]
