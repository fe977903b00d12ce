"""Persistent isogeny-class records and the enumeration driver.

One record per class, JSONL persistence (one JSON object per line, UTF-8,
sorted keys), a schema-version field, and strict rejection of unknown fields
on read.  Values the pipeline cannot decide are the literal string
"undecided", never null.  The driver partitions the enumeration on the top
coefficient so parallel runs merge back into canonical lexicographic order
byte-for-byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .anglerank import angle_rank
from .config import UNDECIDED
from .extensions import (abvar_count, curve_counts, default_horizon,
                         is_primitive, jacobian_obstructions)
from .hondatate import (INVALID, decompose, endo_algebra, endomorphism_degree,
                        is_geometrically_simple)
from .labels import label_of
from .newton import (elevation, is_almost_ordinary, is_ordinary,
                     is_supersingular, newton_polygon, p_rank)
from .polarization import is_principally_polarizable
from .stats import normalized_rd
from .weil import (WeilPoly, enumerate_weil_b, is_weil_polynomial,
                   prime_power, top_level_range, weil_from_b)

SCHEMA_VERSION = 1

# every admissible JSON key with a short type tag (mirrored by schema.json
# at the repository root)
FIELD_TYPES = {
    "schema": "int",
    "label": "str",
    "g": "int",
    "q": "int",
    "p": "int",
    "coeffs": "list[int]",          # a_0 .. a_{2g}, constant term first
    "slopes": "list[fraction]",
    "p_rank": "int",
    "ordinary": "bool",
    "almost_ordinary": "bool",
    "supersingular": "bool",
    "newton_elevation": "int",
    "simple": "bool",
    "geometrically_simple": "bool|undecided",
    "factors": "list[object]",
    "abvar_counts": "list[int]",
    "curve_counts": "list[int]",
    "jacobian_obstruction": "list[object]",
    "pp_status": "str",
    "pp_rule": "str",
    "angle_rank": "int|undecided",
    "angle_rank_numerical": "bool",
    "angle_rank_stable": "bool",
    "primitive": "bool|undecided",
    "primitive_models": "list[str]",
    "twist_class": "str|undecided",
    "endomorphism_degree": "int|undecided",
    "normalized_poly_rd": "float",
}


@dataclass
class IsogenyClassRecord:
    label: str
    g: int
    q: int
    p: int
    coeffs: list
    slopes: list
    p_rank: int
    ordinary: bool
    almost_ordinary: bool
    supersingular: bool
    newton_elevation: int
    simple: bool
    geometrically_simple: object
    factors: list
    abvar_counts: list
    curve_counts: list
    jacobian_obstruction: list
    pp_status: str
    pp_rule: str
    angle_rank: object
    angle_rank_numerical: bool
    angle_rank_stable: bool
    primitive: object = UNDECIDED
    primitive_models: list = field(default_factory=list)
    twist_class: object = UNDECIDED
    endomorphism_degree: object = UNDECIDED
    normalized_poly_rd: float = 0.0

    def to_json(self) -> str:
        d = asdict(self)
        d["schema"] = SCHEMA_VERSION
        return json.dumps(d, sort_keys=True, separators=(",", ":"),
                          ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "IsogenyClassRecord":
        d = json.loads(line)
        unknown = set(d) - set(FIELD_TYPES)
        if unknown:
            raise ValueError(f"unknown record fields: {sorted(unknown)}")
        if d.pop("schema", None) != SCHEMA_VERSION:
            raise ValueError("unsupported schema version")
        missing = set(FIELD_TYPES) - {"schema"} - set(d)
        if missing:
            raise ValueError(f"missing record fields: {sorted(missing)}")
        rec = cls(**d)
        rec.validate()
        return rec

    def validate(self):
        """Re-derive the symmetric coefficient half and the label."""
        P = self.poly()
        if list(P.coeffs) != list(self.coeffs):
            raise ValueError("coefficients violate the functional equation")
        if label_of(P) != self.label:
            raise ValueError("label does not match coefficients")

    def poly(self) -> WeilPoly:
        return WeilPoly.from_a(self.g, self.q, self.coeffs[2 * self.g - 1:
                                                           self.g - 1:-1])


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def build_record(P: WeilPoly,
                 subfields: Optional[dict] = None,
                 horizon: Optional[int] = None,
                 with_angle_rank: bool = True) -> IsogenyClassRecord:
    """Compute every invariant for a valid class.  Raises ValueError when P
    is a Weil polynomial that is not a characteristic polynomial, so callers
    can skip it with a logged reason."""
    factors = decompose(P)
    if factors is INVALID:
        raise ValueError(f"{label_of(P)}: Weil but not characteristic "
                         "(Honda-Tate exponent does not divide multiplicity)")
    R = horizon or default_horizon(P.g)
    N = newton_polygon(P)
    simple = len(factors) == 1 and factors[0].n == 1
    pp = is_principally_polarizable(P, factors)

    fdata = []
    for f in factors:
        alg = endo_algebra(f.h, P.q)
        fdata.append({
            "h": list(f.h),
            "e": f.e,
            "n": f.n,
            "dim": f.dim,
            "brauer_invariants": [_frac_str(pl.invariant)
                                  for pl in alg.places],
            "center_disc": f.center_disc,
        })

    obstructions = [{
        "kind": o.kind, "r": o.r, "m": o.m,
        "footnote_form_violated": o.footnote_form_violated,
    } for o in jacobian_obstructions(P, R)]

    if with_angle_rank:
        ad = angle_rank(P)
        rank, stable = ad.delta, ad.certified_stable
    else:
        rank, stable = UNDECIDED, False

    if subfields is not None:
        primitive, models = is_primitive(P, subfields)
        primitive_models = [label_of(m) for m in models]
    elif P.a == 1:
        primitive, primitive_models = True, []   # no proper subfield exists
    else:
        primitive, primitive_models = UNDECIDED, []

    return IsogenyClassRecord(
        label=label_of(P),
        g=P.g, q=P.q, p=P.p,
        coeffs=list(P.coeffs),
        slopes=[_frac_str(s) for s in N.slopes],
        p_rank=p_rank(N),
        ordinary=is_ordinary(N),
        almost_ordinary=is_almost_ordinary(N),
        supersingular=is_supersingular(N),
        newton_elevation=elevation(N),
        simple=simple,
        geometrically_simple=is_geometrically_simple(P),
        factors=fdata,
        abvar_counts=[abvar_count(P, r) for r in range(1, R + 1)],
        curve_counts=curve_counts(P, R),
        jacobian_obstruction=obstructions,
        pp_status=pp.status,
        pp_rule=pp.rule,
        angle_rank=rank,
        angle_rank_numerical=True,
        angle_rank_stable=stable,
        primitive=primitive,
        primitive_models=primitive_models,
        endomorphism_degree=endomorphism_degree(P),
        normalized_poly_rd=normalized_rd(P),
    )


# ---------------------------------------------------------------------------
# enumeration driver
# ---------------------------------------------------------------------------

def _chunk_lines(args) -> list[str]:
    g, q, lo, hi, simple_only, ordinary_only, with_ar = args
    from .hondatate import is_simple
    from .newton import is_ordinary as ordin, newton_polygon as npoly
    lines = []
    for b in enumerate_weil_b(g, q, b1_range=(lo, hi)):
        P = weil_from_b(g, q, b)
        assert is_weil_polynomial(g, q, P.coeffs)
        if ordinary_only and not ordin(npoly(P)):
            continue
        try:
            rec = build_record(P, with_angle_rank=with_ar)
        except ValueError:
            continue
        if simple_only and not rec.simple:
            continue
        lines.append(rec.to_json())
    return lines


def enumerate_records(g: int, q: int, jobs: int = 1,
                      simple_only: bool = False, ordinary_only: bool = False,
                      with_angle_rank: bool = True) -> Iterator[str]:
    """JSONL lines for every valid class, canonical lexicographic order.

    Parallel runs split the top-coefficient range; chunks come back in order
    so the byte stream is identical for any job count.
    """
    prime_power(q)
    lo, hi = top_level_range(g, q)
    if jobs <= 1:
        yield from _chunk_lines((g, q, lo, hi, simple_only, ordinary_only,
                                 with_angle_rank))
        return
    width = hi - lo + 1
    pieces = min(jobs * 4, width)
    bounds = [lo + (width * k) // pieces for k in range(pieces + 1)]
    tasks = [(g, q, bounds[k], bounds[k + 1] - 1, simple_only, ordinary_only,
              with_angle_rank) for k in range(pieces)]
    import multiprocessing
    with multiprocessing.Pool(jobs) as pool:
        for chunk in pool.imap(_chunk_lines, tasks):
            yield from chunk


def write_jsonl(path: str, lines) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")
            n += 1
    return n


def read_jsonl(path: str) -> list[IsogenyClassRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(IsogenyClassRecord.from_json(line))
    return out


def assign_twist_classes(records: Sequence[IsogenyClassRecord]):
    """Fill twist_class in place: the id is the label of the lexicographically
    least member of each twist orbit."""
    from .extensions import twist_classes
    polys = [r.poly() for r in records]
    by_coeffs = {p.coeffs: r for p, r in zip(polys, records)}
    for orbit in twist_classes(polys):
        rep = min(label_of(p) for p in orbit)
        for p in orbit:
            by_coeffs[p.coeffs].twist_class = rep
    return records
